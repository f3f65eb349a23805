#include <random>

#include "doctest.h"
#include "quatsys/quatalg.hpp"

using namespace quatsys;

namespace {

long legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    long r = 1, base = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// Closed-form Hilbert symbol (a, b)_p over Q_p, independent of the search.
int hilbert_symbol(long a, long b, long p) {
    int alpha = 0, beta = 0;
    while (a % p == 0) { a /= p; ++alpha; }
    while (b % p == 0) { b /= p; ++beta; }
    if (p != 2) {
        int s = ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
        if (beta % 2) s *= legendre(a, p);
        if (alpha % 2) s *= legendre(b, p);
        return s;
    }
    auto eps = [](long u) { return static_cast<int>((((u - 1) / 2) % 2 + 2) % 2); };
    auto omega = [](long u) { return static_cast<int>((((u * u - 1) / 8) % 2 + 2) % 2); };
    const int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return e % 2 ? -1 : 1;
}

QuatElement random_quat(const QuaternionAlgebra& D, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> coef(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    const NumberField& K = D.field();
    std::array<FieldElement, 4> c{K.zero(), K.zero(), K.zero(), K.zero()};
    for (auto& x : c) {
        RatVector v;
        for (std::size_t k = 0; k < K.degree(); ++k) {
            Rational r(coef(rng), den(rng));
            r.canonicalize();
            v.push_back(r);
        }
        x = K.element(v);
    }
    return QuatElement(D, c);
}

}  // namespace

TEST_CASE("defining relations") {
    const auto D = QuaternionAlgebra::hurwitz();
    CHECK(D.i() * D.j() == D.ij());
    CHECK(D.j() * D.i() == -D.ij());
    CHECK(D.i() * D.i() == D.scalar(D.a()));
    CHECK(D.j() * D.j() == D.scalar(D.b()));
    CHECK(D.j() * D.ij() == -(D.b() * D.i()));
    CHECK(D.ij() * D.j() == D.b() * D.i());
}

TEST_CASE("j' has trace 1 and norm -1 - 3 eta") {
    const auto D = QuaternionAlgebra::hurwitz();
    const NumberField& K = D.field();
    const FieldElement eta = K.generator();
    const FieldElement tau = K.one() + eta + eta * eta;
    const QuatElement jp = Rational(1, 2) * (D.one() + eta * D.i() + tau * D.j());
    CHECK(jp.reduced_trace() == K.one());
    CHECK(jp.reduced_norm() == K.from_integer(-1) - Rational(3) * eta);
    CHECK(jp * jp == jp + D.scalar(K.one() + Rational(3) * eta));
}

TEST_CASE("real places") {
    const auto D = QuaternionAlgebra::hurwitz();
    CHECK(D.real_place_status(0) == PlaceStatus::split);
    CHECK(D.real_place_status(1) == PlaceStatus::ramified);
    CHECK(D.real_place_status(2) == PlaceStatus::ramified);
    const NumberField Q = NumberField::rationals();
    const QuaternionAlgebra D23(Q.from_integer(2), Q.from_integer(3));
    CHECK(D23.real_place_status(0) == PlaceStatus::split);
    const QuaternionAlgebra H(Q.from_integer(-1), Q.from_integer(-1));
    CHECK(H.real_place_status(0) == PlaceStatus::ramified);
}

TEST_CASE("finite places of (2,3) over Q") {
    const NumberField Q = NumberField::rationals();
    const QuaternionAlgebra D(Q.from_integer(2), Q.from_integer(3));
    for (std::int64_t p : {2, 3}) {
        CHECK(D.finite_prime_status(factor_rational_prime(Q, p)[0]).status == PlaceStatus::ramified);
    }
    for (std::int64_t p : {5, 7, 11, 13}) {
        CHECK(D.finite_prime_status(factor_rational_prime(Q, p)[0]).status == PlaceStatus::split);
    }
    const auto rep = D.ramification(50);
    REQUIRE(rep.ramified_finite.size() == 2);
    CHECK(rep.ramified_finite[0].p == 2);
    CHECK(rep.ramified_finite[1].p == 3);
    CHECK(rep.ramified_real.empty());
    CHECK(rep.parity_consistent);
}

TEST_CASE("property: local status agrees with the Hilbert symbol over Q") {
    const NumberField Q = NumberField::rationals();
    const long values[] = {-15, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 12, 18, 20};
    for (long a : values) {
        for (long b : values) {
            const QuaternionAlgebra D(Q.from_integer(a), Q.from_integer(b));
            for (std::int64_t p : {2, 3, 5, 7}) {
                const auto st = D.finite_prime_status(factor_rational_prime(Q, p)[0]);
                REQUIRE(st.status != PlaceStatus::undecided);
                const int expected = hilbert_symbol(a, b, p);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(p);
                CHECK((st.status == PlaceStatus::split) == (expected == 1));
                if (st.witness) CHECK(D.hensel_certificate(factor_rational_prime(Q, p)[0], *st.witness).has_value());
            }
        }
    }
}

TEST_CASE("Hurwitz algebra is unramified at finite places") {
    const auto D = QuaternionAlgebra::hurwitz();
    const NumberField& K = D.field();
    const FieldElement eta = K.generator();
    const PrimeIdeal two = factor_rational_prime(K, 2)[0];
    CHECK(D.finite_prime_status(two).status == PlaceStatus::split);
    const PrimeIdeal seven = factor_rational_prime(K, 7)[0];
    CHECK(D.finite_prime_status(seven).status == PlaceStatus::split);

    // 1 - eta (1 + 3 eta + eta^2)^2 - eta * eta^2 vanishes mod 8.
    const std::array<IntVector, 4> w{K.one().integer_coeffs(), (K.one() + Rational(3) * eta + eta * eta).integer_coeffs(),
                                      eta.integer_coeffs(), K.zero().integer_coeffs()};
    const auto lvl = D.hensel_certificate(two, w);
    REQUIRE(lvl.has_value());
    CHECK(*lvl == 3);

    const auto rep = D.ramification(50);
    CHECK(rep.ramified_finite.empty());
    CHECK(rep.undecided_finite.empty());
    CHECK(rep.ramified_real == std::vector<std::size_t>{1, 2});
    CHECK(rep.parity_consistent);
}

TEST_CASE("property: quaternion identities") {
    const auto D = QuaternionAlgebra::hurwitz();
    std::mt19937_64 rng(7);
    for (int it = 0; it < 1000; ++it) {
        const QuatElement x = random_quat(D, rng);
        CHECK(x * x - x.reduced_trace() * x + D.scalar(x.reduced_norm()) == D.zero());
        if (it % 5 == 0) {
            const QuatElement y = random_quat(D, rng);
            CHECK((x * y).reduced_norm() == x.reduced_norm() * y.reduced_norm());
            CHECK((x * y).conj() == y.conj() * x.conj());
            CHECK((x + x.conj()).is_central());
            CHECK(x * x.conj() == D.scalar(x.reduced_norm()));
        }
    }
}
