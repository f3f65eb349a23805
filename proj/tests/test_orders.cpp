#include <random>

#include "doctest.h"
#include "quatsys/errors.hpp"
#include "quatsys/orders.hpp"

using namespace quatsys;

namespace {

struct Hurwitz {
    QuaternionAlgebra D = QuaternionAlgebra::hurwitz();
    NumberField K = D.field();
    FieldElement eta = K.generator();
    FieldElement tau = K.one() + eta + eta * eta;
    QuatElement jp = Rational(1, 2) * (D.one() + eta * D.i() + tau * D.j());
    OrderLattice O = OrderLattice::standard(D);
    OrderLattice Q = OrderLattice::hurwitz(D);
};

}  // namespace

TEST_CASE("Hurwitz order structure") {
    Hurwitz h;
    CHECK(h.Q.kappa() == 2);
    CHECK(h.O.kappa() == 1);
    CHECK(h.jp * h.jp == h.jp + h.D.scalar(h.K.one() + Rational(3) * h.eta));
    CHECK(h.Q.contains(h.jp));
    CHECK_FALSE(h.O.contains(h.jp));
    CHECK(h.jp.reduced_trace() == h.K.one());
    CHECK(h.Q.index_of(h.O) == 64);
    CHECK(involution_stable(h.Q));
    CHECK(involution_stable(h.O));
    // Q_Hur is maximal: its discriminant is disc(K)^4 with no finite ramification.
    CHECK(h.Q.maximal_discriminant() == ipow(Integer(49), 4));
    CHECK(h.Q.is_maximal());
    CHECK_FALSE(h.O.is_maximal());
    CHECK(h.O.nonmaximal_rational_primes() == std::vector<std::int64_t>{2});
}

TEST_CASE("standard order membership") {
    Hurwitz h;
    CHECK(h.O.contains(h.D.i() * h.D.j()));
    CHECK(h.O.is_norm_one(h.D.one()));
    CHECK(h.O.contains(h.D.i()));
    CHECK(h.D.i().reduced_norm() == -h.eta);
    CHECK_FALSE(h.O.is_norm_one(h.D.i()));
}

TEST_CASE("orders reject bad input") {
    Hurwitz h;
    IntMatrix half(12, IntVector(12, 0));
    for (std::size_t k = 0; k < 12; ++k) half[k][k] = 1;
    half[0][3] = 1;  // 1 + theta^0 of x1 over kappa = 2: (1 + i)/2
    CHECK_THROWS_AS(OrderLattice::from_hnf(h.D, 2, half), InvariantViolation);
    const NumberField Q = NumberField::rationals();
    const QuaternionAlgebra D(Q.from_integer(2), Q.from_integer(3));
    CHECK_THROWS(OrderLattice::generated_by(D, {Rational(1, 3) * D.i()}));
}

TEST_CASE("congruence lattices and Gamma(I)") {
    Hurwitz h;
    const Ideal p7 = Ideal::principal(h.K.from_integer(2) - h.eta);
    const Ideal two = Ideal::principal(h.K.from_integer(2));
    const CongruenceLattice IQ7(h.Q, p7);
    const CongruenceLattice IQ2(h.Q, two);
    CHECK(IQ7.index() == ipow(Integer(7), 4));
    CHECK(IQ2.index() == ipow(Integer(8), 4));
    CHECK(IQ7.certify_two_sided());
    CHECK(IQ2.certify_two_sided());
    CHECK(in_gamma_I(IQ7, h.D.one()));
    CHECK(in_gamma_I(IQ2, h.D.one()));
    CHECK_FALSE(in_gamma_I(IQ7, -h.D.one()));
    CHECK(in_gamma_I(IQ2, -h.D.one()));
    // -2 is not in <2 - eta> Q_Hur.
    CHECK_FALSE(IQ7.contains(h.D.scalar(h.K.from_integer(-2))));

    const QuatElement z = (h.K.from_integer(2) - h.eta) * h.jp;
    CHECK(IQ7.contains(z));
    CHECK(p7.contains(z.reduced_trace()));
    CHECK((p7 * p7).contains(z.reduced_norm()));
    CHECK(z.reduced_norm() == (h.K.from_integer(2) - h.eta).pow(2) * (h.K.from_integer(-1) - Rational(3) * h.eta));

    // (<2> + 2<2>)^-1 <2>^2 = <2>
    const FractionalIdeal w = y0_ideal(h.Q, two);
    CHECK(w == FractionalIdeal(two, 1));
}

TEST_CASE("property: trace in I and norm in I^2 on random elements of IQ") {
    Hurwitz h;
    std::mt19937_64 rng(11);
    for (std::int64_t p : {2, 7, 13}) {
        for (const auto& pr : factor_rational_prime(h.K, p)) {
            const CongruenceLattice IQ(h.Q, pr.ideal);
            const auto rep = verify_trace_norm(IQ, 300, rng);
            CHECK(rep.samples == 300);
            CHECK(rep.failures == 0);
        }
    }
}
