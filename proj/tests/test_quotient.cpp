#include <random>

#include "doctest.h"
#include "quatsys/errors.hpp"
#include "quatsys/quotient.hpp"

using namespace quatsys;

namespace {

struct Setup {
    QuaternionAlgebra D = QuaternionAlgebra::hurwitz();
    NumberField K = D.field();
    FieldElement eta = K.generator();
    OrderLattice Q = OrderLattice::hurwitz(D);
    OrderLattice O = OrderLattice::standard(D);
    PrimeIdeal P7 = factor_rational_prime(K, 7).at(0);
    PrimeIdeal P2 = factor_rational_prime(K, 2).at(0);
    std::vector<PrimeIdeal> P13 = factor_rational_prime(K, 13);
};

// Norm-one count of a finite ring by the definition alone: residues x with
// x x^* = 1, no formulas involved.
std::uint64_t norm_one_by_definition(const FiniteQuotRing& R) {
    std::uint64_t n = 0;
    for (std::uint64_t k = 0; k < R.cardinality(); ++k) {
        const auto x = R.element(k);
        if (R.mul(x, R.conj(x)) == R.one()) ++n;
    }
    return n;
}

// Squares in (Z/n)^x by listing.
std::uint64_t unit_squares_mod(std::int64_t n) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::int64_t x = 1; x < n; ++x) {
        std::int64_t g = x, m = n;
        while (m) std::swap(g %= m, m);
        if (g == 1) seen[static_cast<std::size_t>(x * x % n)] = true;
    }
    return static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), true));
}

}  // namespace

TEST_CASE("norm-one formula values") {
    CHECK(norm_one_formula(7, 1, false) == 336);
    CHECK(norm_one_formula(8, 1, false) == 504);
    CHECK(norm_one_formula(13, 1, false) == 2184);
    CHECK(norm_one_formula(3, 1, true) == 36);
    CHECK(norm_one_formula(2, 2, false) == 48);
    CHECK(norm_one_formula(7, 2, false) == 115248);
}

TEST_CASE("norm-one counts in Hurwitz quotients") {
    Setup s;
    const FiniteQuotRing R7(s.Q, s.P7, 1);
    CHECK(R7.cardinality() == 2401);
    const QuotientCounts c7 = count_quotient(R7);
    CHECK(c7.norm_one == 336);
    CHECK(c7.norm_one == norm_one_by_definition(R7));
    CHECK(Integer(static_cast<unsigned long>(c7.norm_one)) == norm_one_formula(7, 1, false));
    CHECK(c7.units == 48 * 42);  // |GL_2(F_7)|

    const QuotientCounts c2 = count_quotient(FiniteQuotRing(s.Q, s.P2, 1));
    CHECK(c2.norm_one == 504);
    CHECK(c2.units == 56 * 63);  // |GL_2(F_8)|

    REQUIRE(s.P13.size() == 3);
    for (const auto& P : s.P13) {
        const FiniteQuotRing R(s.Q, P, 1);
        CHECK(R.cardinality() == 28561);
        CHECK(count_quotient(R).norm_one == 2184);
    }
}

TEST_CASE("norm-one counts are bounded by units over the norm image") {
    Setup s;
    for (const auto* order : {&s.Q, &s.O}) {
        for (const auto* P : {&s.P7, &s.P2}) {
            const QuotientCounts c = count_quotient(FiniteQuotRing(*order, *P, 1));
            CHECK(c.norm_one * c.norm_image <= c.units);
            // The fibres of nu over its image all have the same size.
            CHECK(c.norm_one * c.norm_image == c.units);
        }
    }
}

TEST_CASE("cardinality cap") {
    Setup s;
    const FiniteQuotRing R(s.Q, s.P7, 2);
    CHECK(R.cardinality() == 5764801);
    CHECK(count_quotient(R).norm_one == 115248);
    CHECK_THROWS_AS(FiniteQuotRing(s.Q, s.P7, 2, 1000000), CapExceeded);
    CHECK_THROWS_AS(FiniteQuotRing(s.Q, s.P7, 3), CapExceeded);
    CHECK_THROWS_AS(FiniteQuotRing(s.Q, s.P7, 0), InputError);
}

TEST_CASE("ring axioms on quotients") {
    Setup s;
    std::mt19937_64 rng(11);
    for (const auto* order : {&s.Q, &s.O}) {
        FiniteQuotRing(*order, s.P7, 1).self_check(300, rng);
        FiniteQuotRing(*order, s.P2, 1).self_check(300, rng);
        FiniteQuotRing(*order, s.P2, 2, std::uint64_t{1} << 24).self_check(300, rng);
    }
    const FiniteQuotRing R(s.Q, s.P7, 1);
    const auto jp = R.from_quat(Rational(1, 2) * (s.D.one() + s.eta * s.D.i() + (s.K.one() + s.eta + s.eta * s.eta) * s.D.j()));
    CHECK(R.index(R.element(R.index(jp))) == R.index(jp));
    CHECK_THROWS_AS(R.from_quat(Rational(1, 2) * s.D.i()), InputError);
}

TEST_CASE("radical and semisimple type") {
    Setup s;
    for (const auto* P : {&s.P7, &s.P2}) {
        const RadicalType r = radical_and_type(FiniteQuotRing(s.Q, *P, 1));
        CHECK(r.radical_size == 1);
        CHECK(r.type == "M_2(F_q)");
        CHECK(r.cross_checked);
        CHECK(r.center_size == static_cast<std::uint64_t>(P->norm().get_si()));
    }
    // Z[eta]<1, i, j, ij> at <2>: local with residue field F_8.
    const RadicalType r = radical_and_type(FiniteQuotRing(s.O, s.P2, 1));
    CHECK(r.radical_size == 512);
    CHECK(r.semisimple_size == 8);
    CHECK(r.type == "F_q");
    CHECK_THROWS_AS(radical_and_type(FiniteQuotRing(s.Q, s.P7, 2)), InputError);
}

TEST_CASE("envelopes on non-maximal orders") {
    Setup s;
    const FieldElement pi = s.K.from_integer(2) - s.eta;
    const OrderLattice E = OrderLattice::generated_by(s.D, {s.D.i(), pi * s.D.j()});
    CHECK_FALSE(E.is_maximal());

    const FiniteQuotRing R(E, s.P7, 1);
    const RadicalType rt = radical_and_type(R);
    CHECK(rt.type == "F_q x F_q");
    const QuotientCounts c = count_quotient(R);
    CHECK(Integer(static_cast<unsigned long>(c.units)) <= unit_envelope(7, false));
    CHECK(c.units == 49 * 36);
    const Rational ratio(Integer(static_cast<unsigned long>(c.norm_one)), 343);
    CHECK(ratio <= norm_one_envelope(7, false, false, 0));

    const QuotientCounts c2 = count_quotient(FiniteQuotRing(E, s.P7, 2));
    CHECK(Rational(Integer(static_cast<unsigned long>(c2.norm_one)), ipow(Integer(7), 6)) <=
          norm_one_envelope(7, false, false, 0));

    // The standard order at <2>, a diadic prime with e = 1.
    const QuotientCounts d = count_quotient(FiniteQuotRing(s.O, s.P2, 1));
    CHECK(Rational(Integer(static_cast<unsigned long>(d.norm_one)), 512) <= norm_one_envelope(8, false, true, 1));
}

TEST_CASE("unit envelope is exceeded by a local quotient") {
    // Q/PQ with semisimple part F_q and a radical of size q^3 has (q-1) q^3
    // units, above the q^2 (q-1)^2 envelope stated for the split case.
    Setup s;
    const QuotientCounts c = count_quotient(FiniteQuotRing(s.O, s.P2, 1));
    CHECK(c.units == 7 * 512);
    CHECK(Integer(static_cast<unsigned long>(c.units)) > unit_envelope(8, false));
}

TEST_CASE("squares of units") {
    const NumberField F = NumberField::rationals();
    for (std::int64_t p : {3, 5, 7}) {
        const PrimeIdeal P = factor_rational_prime(F, p).at(0);
        std::int64_t pt = 1;
        for (unsigned t = 1; t <= 3; ++t) {
            pt *= p;
            const SquaresCount sc = squares_count(P, t);
            CHECK(sc.count == unit_squares_mod(pt));
            CHECK(sc.consistent);
            CHECK(Rational(Integer(static_cast<unsigned long>(sc.count))) == sc.formula);
        }
    }
    CHECK(squares_count(factor_rational_prime(F, 5).at(0), 2).count == 10);

    const PrimeIdeal two = factor_rational_prime(F, 2).at(0);
    const SquaresCount z8 = squares_count(two, 3);
    CHECK(z8.count == unit_squares_mod(8));
    CHECK(z8.count == 1);
    CHECK(z8.formula == 2);
    CHECK(z8.equality_claimed);
    CHECK_FALSE(z8.consistent);
    CHECK(z8.diadic_exact == 1);
    for (unsigned t = 1; t <= 2; ++t) CHECK(squares_count(two, t).consistent);
    // Z/2^t for larger t: the exact count is 2^(t-3).
    for (unsigned t = 4; t <= 8; ++t) {
        const SquaresCount sc = squares_count(two, t);
        CHECK(sc.count == unit_squares_mod(std::int64_t{1} << t));
        CHECK(Rational(Integer(static_cast<unsigned long>(sc.count))) == sc.diadic_exact);
    }

    Setup s;
    const SquaresCount a = squares_count(s.P7, 1);
    CHECK(a.count == 3);
    CHECK(a.consistent);
    const SquaresCount b = squares_count(s.P2, 3);
    CHECK(b.e == 1);
    CHECK(b.count == 28);
    CHECK(b.diadic_exact == 28);
    CHECK_FALSE(b.consistent);
}

TEST_CASE("lambda and index bounds") {
    Setup s;
    std::vector<Ideal> ideals{s.P7.ideal, s.P2.ideal};
    for (const auto& P : s.P13) ideals.push_back(P.ideal);
    const std::vector<std::uint64_t> counts{336, 504, 2184, 2184, 2184};
    for (std::size_t k = 0; k < ideals.size(); ++k) {
        const LambdaFactor lf = lambda_factor(s.Q, ideals[k]);
        CHECK(lf.lambda == 1);
        CHECK(lf.ramified.empty());
        CHECK(lf.nonmaximal.empty());
        const Rational bound = index_bound(s.Q, ideals[k]);
        CHECK(bound == Rational(ipow(ideals[k].norm(), 3)));
        CHECK(Rational(Integer(static_cast<unsigned long>(counts[k]))) < bound);
    }
    // The standard order is non-maximal at 2.
    const LambdaFactor lo = lambda_factor(s.O, s.P2.ideal);
    CHECK(lo.nonmaximal.size() == 1);
    CHECK(lo.lambda == 16);
    CHECK(lambda_factor(s.O, s.P7.ideal).lambda == 1);

    // (-1, -1)_Q ramifies at 2 only.
    const NumberField F = NumberField::rationals();
    const QuaternionAlgebra H(F.from_integer(-1), F.from_integer(-1));
    const OrderLattice L = OrderLattice::standard(H);
    const PrimeIdeal three = factor_rational_prime(F, 3).at(0);
    CHECK(lambda_factor(L, three.ideal).lambda == 1);
    const LambdaFactor l2 = lambda_factor(L, factor_rational_prime(F, 2).at(0).ideal);
    CHECK(l2.ramified.size() == 1);
    CHECK(l2.lambda == 4);  // non-maximal at 2: 2 * 2^1
}

TEST_CASE("composite ideals") {
    Setup s;
    const CompositeCount c = composite_counts(s.Q, s.P2.ideal * s.P7.ideal);
    REQUIRE(c.factors.size() == 2);
    CHECK(c.norm_one == 504 * 336);
    const CompositeCount sq = composite_counts(s.Q, s.P7.ideal.pow(2));
    CHECK(sq.norm_one == norm_one_formula(7, 2, false));
}
