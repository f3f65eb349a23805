#include <cmath>
#include <random>

#include "doctest.h"
#include "quatsys/errors.hpp"
#include "quatsys/numfield.hpp"

using namespace quatsys;

namespace {

FieldElement random_element(const NumberField& K, std::mt19937_64& rng, long span, bool integral = true) {
    std::uniform_int_distribution<long> coef(-span, span);
    std::uniform_int_distribution<long> den(1, 5);
    RatVector c;
    for (std::size_t k = 0; k < K.degree(); ++k) {
        c.push_back(integral ? Rational(coef(rng)) : Rational(coef(rng), den(rng)));
    }
    for (auto& v : c) v.canonicalize();
    return K.element(c);
}

// Independent oracle: brute-force roots of a polynomial mod p.
std::vector<long> roots_mod(const IntPoly& f, long p) {
    std::vector<long> r;
    for (long x = 0; x < p; ++x) {
        Integer acc = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
        if (acc == 0) r.push_back(x);
    }
    return r;
}

}  // namespace

TEST_CASE("heptagonal field basics") {
    const NumberField K = NumberField::heptagonal();
    CHECK(K.degree() == 3);
    CHECK(K.discriminant() == 49);
    const FieldElement eta = K.generator();
    CHECK((K.from_integer(2) - eta).norm() == 7);
    CHECK(K.one().norm() == 1);
    const FieldElement unit = eta * (eta - 1) * (eta + 2);
    CHECK(unit == K.one());
    CHECK(unit.norm() == 1);
}

TEST_CASE("embeddings match 2cos(2 pi k / 7)") {
    const NumberField K = NumberField::heptagonal();
    const double pi = std::acos(-1.0);
    const double expected[3] = {2 * std::cos(2 * pi / 7), 2 * std::cos(4 * pi / 7), 2 * std::cos(6 * pi / 7)};
    for (std::size_t place = 0; place < 3; ++place) {
        const RationalInterval r = K.embed(K.generator(), place, 80);
        CHECK(r.width() <= Rational(1, 1) / Rational(Integer(1) << 80));
        CHECK(r.lo.get_d() <= expected[place] + 1e-15);
        CHECK(r.hi.get_d() >= expected[place] - 1e-15);
        CHECK(K.embed(K.one(), place, 10).lo == 1);
        CHECK(K.embed(K.one(), place, 10).hi == 1);
    }
    CHECK(K.generator().sign_at(0) == 1);
    CHECK(K.generator().sign_at(1) == -1);
    CHECK(K.generator().sign_at(2) == -1);
    CHECK_THROWS_AS(K.embed(K.one(), 3, 10), InputError);
    CHECK_THROWS_AS(K.embed(K.one(), 0, 0), InputError);
}

TEST_CASE("field construction rejects bad polynomials") {
    CHECK_THROWS_AS(NumberField(IntPoly{1, 0, 1}), InputError);         // t^2 + 1, not totally real
    CHECK_THROWS_AS(NumberField(IntPoly{-1, 0, 1}), InputError);        // (t-1)(t+1)
    CHECK_THROWS_AS(NumberField(IntPoly{-8, 0, 1}), InputError);        // Z[sqrt 8] non-maximal at 2
    CHECK_THROWS_AS(NumberField(IntPoly{-5, 0, 2}), InputError);        // not monic
}

TEST_CASE("ideal arithmetic examples") {
    const NumberField K = NumberField::heptagonal();
    const Ideal two = Ideal::principal(K.from_integer(2));
    CHECK(two.norm() == 8);
    const auto fac2 = factor_rational_prime(K, 2);
    REQUIRE(fac2.size() == 1);
    CHECK(fac2[0].residue_degree == 3);
    CHECK(fac2[0].ideal == two);

    const FractionalIdeal inv = two.inverse();
    CHECK(inv.denominator() == 2);
    CHECK(inv.numerator() == Ideal::unit(K));
    CHECK((two + two) * two.intersect(two) == two * two);

    const auto fac13 = factor_rational_prime(K, 13);
    CHECK(fac13.size() == 3);
    CHECK(roots_mod(K.minimal_polynomial(), 13) == std::vector<long>{7, 8, 10});
    for (const auto& pr : fac13) CHECK(pr.ideal.norm() == 13);
    CHECK(fac13[0].ideal != fac13[1].ideal);
    CHECK(fac13[1].ideal != fac13[2].ideal);

    const Ideal p7 = Ideal::principal(K.from_integer(2) - K.generator());
    CHECK(p7.pow(3) == Ideal::principal(K.from_integer(7)));
    const auto fac7 = factor_rational_prime(K, 7);
    REQUIRE(fac7.size() == 1);
    CHECK(fac7[0].ramification == 3);
    CHECK(fac7[0].ideal == p7);
}

TEST_CASE("norm of rational integers") {
    const NumberField K = NumberField::heptagonal();
    for (long m = 1; m <= 20; ++m) {
        CHECK(Ideal::principal(K.from_integer(m)).norm() == ipow(Integer(m), 3));
    }
}

TEST_CASE("property: element norm and trace") {
    const NumberField K = NumberField::heptagonal();
    std::mt19937_64 rng(1);
    for (int it = 0; it < 200; ++it) {
        const FieldElement x = random_element(K, rng, 9, false);
        const FieldElement y = random_element(K, rng, 9, false);
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK((x + y).trace() == x.trace() + y.trace());
        if (!x.is_zero()) CHECK(x * x.inverse() == K.one());
        // Product of embedding enclosures contains the norm.
        Rational lo = 1, hi = 1;
        for (std::size_t place = 0; place < 3; ++place) {
            const RationalInterval r = K.embed(x, place, 100);
            const Rational c[4] = {lo * r.lo, lo * r.hi, hi * r.lo, hi * r.hi};
            lo = std::min({c[0], c[1], c[2], c[3]});
            hi = std::max({c[0], c[1], c[2], c[3]});
        }
        CHECK(lo <= x.norm());
        CHECK(x.norm() <= hi);
    }
}

TEST_CASE("property: Dedekind identities for ideals") {
    const NumberField K = NumberField::heptagonal();
    std::mt19937_64 rng(2);
    for (int it = 0; it < 60; ++it) {
        std::vector<FieldElement> g1, g2;
        for (int k = 0; k < 2; ++k) {
            FieldElement a = random_element(K, rng, 6);
            FieldElement b = random_element(K, rng, 6);
            if (a.is_zero()) a = K.one();
            if (b.is_zero()) b = K.from_integer(3);
            g1.push_back(a);
            g2.push_back(b);
        }
        const Ideal I = Ideal::from_generators(K, g1);
        const Ideal J = Ideal::from_generators(K, g2);
        CHECK((I + J) * I.intersect(J) == I * J);
        CHECK((I * J).norm() == I.norm() * J.norm());
        const FractionalIdeal inv = I.inverse();
        CHECK(inv * I == FractionalIdeal(Ideal::unit(K), 1));
        CHECK(inv.norm() * Rational(I.norm()) == 1);
        for (const auto& f : factor_ideal(I)) CHECK(f.prime.ideal.divides(I));
    }
}

TEST_CASE("property: prime factorizations recombine") {
    const NumberField K = NumberField::heptagonal();
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 29, 41, 43, 97}) {
        const auto fac = factor_rational_prime(K, p);
        Ideal prod = Ideal::unit(K);
        unsigned ef = 0;
        for (const auto& pr : fac) {
            CHECK(pr.ideal.contains(K.from_integer(p)));
            prod = prod * pr.ideal.pow(pr.ramification);
            ef += pr.ramification * pr.residue_degree;
        }
        CHECK(ef == 3);
        CHECK(prod == Ideal::principal(K.from_integer(p)));
    }
}

TEST_CASE("generators of principal ideals") {
    const NumberField K = NumberField::heptagonal();
    for (const auto& pr : primes_up_to_norm(K, 100)) {
        const auto g = pr.ideal.find_generator();
        REQUIRE(g.has_value());
        CHECK(Ideal::principal(*g) == pr.ideal);
    }
}

TEST_CASE("rational field") {
    const NumberField Q = NumberField::rationals();
    CHECK(Q.degree() == 1);
    CHECK(Q.from_integer(5).norm() == 5);
    CHECK(factor_rational_prime(Q, 5).size() == 1);
    CHECK(Ideal::principal(Q.from_integer(12)).inverse().denominator() == 12);
}
