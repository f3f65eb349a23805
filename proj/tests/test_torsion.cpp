#include <cmath>
#include <set>

#include "doctest.h"
#include "quatsys/errors.hpp"
#include "quatsys/torsion.hpp"

using namespace quatsys;

namespace {

// n such that 2cos(2 pi / n) equals sigma_0(a + b eta + c eta^2) for small
// integers a, b, c, found by direct numerical search.
std::set<unsigned> orders_by_search() {
    const double eta = 2 * std::cos(2 * M_PI / 7);
    std::set<unsigned> out;
    for (unsigned n = 1; n <= 100; ++n) {
        const double target = 2 * std::cos(2 * M_PI / n);
        for (int a = -6; a <= 6; ++a) {
            for (int b = -6; b <= 6; ++b) {
                for (int c = -6; c <= 6; ++c) {
                    if (std::fabs(a + b * eta + c * eta * eta - target) < 1e-9) out.insert(n);
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("candidate root-of-unity orders") {
    const NumberField Q = NumberField::rationals();
    CHECK(candidate_orders(Q) == std::vector<unsigned>{1, 2, 3, 4, 6});

    const NumberField K = NumberField::heptagonal();
    const auto orders = candidate_orders(K);
    CHECK(std::set<unsigned>(orders.begin(), orders.end()) == orders_by_search());
    CHECK(std::find(orders.begin(), orders.end(), 7) != orders.end());
    CHECK(std::find(orders.begin(), orders.end(), 14) != orders.end());
    CHECK(std::find(orders.begin(), orders.end(), 9) == orders.end());
    CHECK(roots_in_field(K, {1, -3, 0, 1}).empty());  // t^3 - 3t + 1

    // The three conjugates 2cos(2 pi k / 7) all lie in K.
    const auto sevenths = roots_in_field(K, trace_polynomial(7));
    CHECK(sevenths.size() == 3);
    const FieldElement eta = K.generator();
    CHECK(std::find(sevenths.begin(), sevenths.end(), eta) != sevenths.end());
    CHECK(std::find(sevenths.begin(), sevenths.end(), eta * eta - K.from_integer(2)) != sevenths.end());
}

TEST_CASE("unit identity behind the short-circuit") {
    const NumberField K = NumberField::heptagonal();
    const FieldElement eta = K.generator();
    CHECK(eta * (eta - K.one()) * (eta + K.from_integer(2)) == K.one());
    CHECK((eta + K.from_integer(2)).norm() == 1);
}

TEST_CASE("Hurwitz congruence subgroups are torsion-free") {
    const OrderLattice Q = OrderLattice::hurwitz();
    const NumberField K = Q.field();
    const auto primes = primes_up_to_norm(K, 100);
    REQUIRE(primes.size() >= 8);
    for (const auto& P : primes) {
        const TorsionCertificate c = certify_torsion_free(Q, P.ideal);
        CHECK_MESSAGE(c.torsion_free, P.ideal.to_string());
        CHECK(c.principal);
        for (const auto& ob : c.obstructions) {
            if (ob.n == 14) CHECK_FALSE(ob.ideal.has_value());
        }
    }
    const PrimeIdeal P7 = factor_rational_prime(K, 7).at(0);
    const TorsionCertificate c7 = certify_torsion_free(Q, P7.ideal);
    bool saw_seven = false;
    for (const auto& ob : c7.obstructions) {
        if (ob.n == 7) {
            REQUIRE(ob.ideal.has_value());
            CHECK(*ob.ideal == P7.ideal);
            CHECK(ob.norm == 7);
            saw_seven = true;
        }
    }
    CHECK(saw_seven);
    CHECK_FALSE(c7.minus_one_in_gamma);
    CHECK(certify_torsion_free(Q, factor_rational_prime(K, 2).at(0).ideal).minus_one_in_gamma);
    CHECK(certify_torsion_free(Q, P7.ideal * P7.ideal).torsion_free);
    CHECK_THROWS_AS(certify_torsion_free(Q, Ideal::unit(K)), InputError);
}

TEST_CASE("an ideal that cannot be certified") {
    // In Q(sqrt 3), <3> = <sqrt 3>^2, so a cube root of unity is not excluded
    // at I = <sqrt 3>.
    const NumberField K({-3, 0, 1}, "Q(sqrt3)");
    const QuaternionAlgebra D(K.from_integer(-1), K.from_integer(-1));
    const OrderLattice O = OrderLattice::standard(D);
    const Ideal I = Ideal::principal(K.generator());
    const TorsionCertificate c = certify_torsion_free(O, I);
    CHECK_FALSE(c.torsion_free);
    CHECK(c.named_candidate.find("n = 3") != std::string::npos);
    CHECK(certify_torsion_free(O, Ideal::principal(K.from_integer(5))).torsion_free);
}
