#include <cmath>
#include <random>

#include "doctest.h"
#include "quatsys/bounds.hpp"
#include "quatsys/errors.hpp"

using namespace quatsys;

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

// Clausen function Cl_2(x) = sum sin(k x) / k^2, summed in blocks of the
// period of x = 2 pi / 3 so that the tail is O(1/N^2).
double clausen_two_pi_thirds(long terms) {
    double s = 0.0;
    for (long k = terms; k >= 1; --k) s += std::sin(2.0 * M_PI * static_cast<double>(k % 3) / 3.0) / (static_cast<double>(k) * k);
    return s;
}

}  // namespace

TEST_CASE("trace lower bounds") {
    const GeometryContext h = GeometryContext::hurwitz();
    const NumberField K = NumberField::heptagonal();
    const PrimeIdeal P7 = factor_rational_prime(K, 7).at(0);
    const TraceBound t7 = trace_lower_bound(h, P7.ideal);
    CHECK(t7.coarse.contains(1.0625));
    CHECK(t7.coarse.width() < 1e-12);
    // kappa = 2 puts 2 I inside <2>, so both forms agree for Q_Hur.
    CHECK(t7.sharp.contains(1.0625));
    const TraceBound t2 = trace_lower_bound(h, factor_rational_prime(K, 2).at(0).ideal);
    CHECK(t2.sharp.contains(2.0));
    CHECK(t2.coarse.contains(2.0));

    GeometryContext k1 = h;
    k1.kappa = 1;
    const TraceBound s7 = trace_lower_bound(k1, P7.ideal);
    CHECK(s7.sharp.contains(49.0 / 2.0 - 2.0));
    CHECK(s7.sharp.lo > s7.coarse.hi);
    CHECK(trace_lower_bound(h, Integer(1), Integer(8)).coarse.hi < 0);
}

TEST_CASE("trace bounds: sharp dominates coarse and grows with the norm") {
    const NumberField K = NumberField::heptagonal();
    const auto primes = primes_up_to_norm(K, 100);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<int> kap(1, 2);
    for (int trial = 0; trial < 100; ++trial) {
        GeometryContext ctx = GeometryContext::hurwitz();
        ctx.kappa = kap(rng);
        Ideal I = primes[pick(rng)].ideal;
        if (trial % 2) I = I * primes[pick(rng)].ideal;
        const TraceBound t = trace_lower_bound(ctx, I);
        CHECK(t.sharp.hi >= t.coarse.lo);
        const Ideal J = I * primes[pick(rng)].ideal;
        const Ideal two = Ideal::principal(K.from_integer(2));
        const Ideal kap_ideal = Ideal::principal(K.from_rational(Rational(ctx.kappa)));
        if ((two + kap_ideal * I).norm() == (two + kap_ideal * J).norm()) {
            CHECK(trace_lower_bound(ctx, J).sharp.lo >= t.sharp.lo);
        }
    }
}

TEST_CASE("lengths from traces") {
    CHECK_THROWS_AS(length_from_trace(Interval(2.0), true), InputError);
    CHECK_THROWS_AS(length_from_trace(Interval(-1.5), true), InputError);
    const Interval l = length_from_trace(Interval(7.2972), true);
    CHECK(std::fabs(l.mid() - 3.936) < 5e-4);
    CHECK(std::fabs(2 * std::cosh(3.936 / 2) - 7.2972) < 2e-3);
    const Interval b = length_from_trace(Interval(3.0), false);
    CHECK(b.contains(2 * std::log(2.0)));
    CHECK(b.hi < length_from_trace(Interval(3.0), true).lo);
    CHECK(length_from_trace(Interval(-3.0), true).contains(2 * std::acosh(1.5)));
    for (double t = 2.001; t < 1e6; t *= 1.01) {
        CHECK(length_from_trace(Interval(t), false).hi < length_from_trace(Interval(t), true).lo);
    }
}

TEST_CASE("genus from the index") {
    const GeometryContext h = GeometryContext::hurwitz();
    CHECK(psl_index(336, false) == 168);
    CHECK(psl_index(504, true) == 504);
    CHECK(psl_index(2184, false) == 1092);
    CHECK(genus_from_index(h, 168) == 3);
    CHECK(genus_from_index(h, 504) == 7);
    CHECK(genus_from_index(h, 1092) == 14);
    // 84 (g - 1) = index for the (2,3,7) group.
    for (long g = 2; g < 200; ++g) CHECK(genus_from_index(h, 84 * (g - 1)) == g);
    CHECK_THROWS_AS(genus_from_index(h, 100), InvariantViolation);
    CHECK_THROWS_AS(psl_index(335, false), InvariantViolation);
}

TEST_CASE("4/3 bound for Hurwitz surfaces") {
    CHECK(hurwitz_43_check(65));
    // The chain falls short at g = 64 by about 2e-3.
    CHECK_FALSE(hurwitz_43_check(64));
    const double lhs64 = 2 * std::log(std::pow(21.0 * 63 / 16, 2.0 / 3) - 3);
    CHECK(lhs64 < 4.0 / 3 * std::log(64.0));
    for (long g = 65; g <= 10000; ++g) CHECK(hurwitz_43_check(g));
    for (double g = 1e4; g <= 1e6; g *= 1.05) CHECK(hurwitz_43_check(static_cast<long>(g)));
    CHECK(hurwitz_43_check(1000000));

    CHECK(round3(four_thirds_bound(3).mid()) == doctest::Approx(1.465));
    CHECK(round3(four_thirds_bound(7).mid()) == doctest::Approx(2.595));
    CHECK(round3(four_thirds_bound(14).mid()) == doctest::Approx(3.519));
    CHECK(round3(four_thirds_bound(17).mid()) == doctest::Approx(3.778));
}

TEST_CASE("systole chain in terms of the genus") {
    const GeometryContext h = GeometryContext::hurwitz();
    for (long g : {65L, 100L, 1000L, 123456L}) {
        const SystoleBound s = sys_lower_bound_from_genus(h, g);
        REQUIRE_FALSE(s.vacuous);
        const double expect = 2 * std::log(std::pow(21.0 * (g - 1) / 16, 2.0 / 3) - 3);
        CHECK(s.value.mid() == doctest::Approx(expect).epsilon(1e-12));
        CHECK(s.value.width() < 1e-9);
    }
    CHECK(sys_lower_bound_from_genus(h, 3).vacuous);
    // The known systoles are above the chain value for the same ideal.
    const NumberField K = NumberField::heptagonal();
    const SystoleBound s2 = sys_lower_bound(h, factor_rational_prime(K, 2).at(0).ideal);
    REQUIRE_FALSE(s2.vacuous);
    CHECK(s2.value.hi < 5.796);
    CHECK(s2.value.contains(0.0));  // 2 log(2 - 1)
}

TEST_CASE("R invariant and constants") {
    const GeometryContext h = GeometryContext::hurwitz();
    CHECK(r_invariant(h).contains(512 * M_PI / 21));
    CHECK(fuchsian_constant(h).contains(std::log(16.0 / 21.0)));
    CHECK(fuchsian_asymptotic(h).find("o(1)") != std::string::npos);
    const SystoleBound sr = fuchsian_sr_bound(h, 1000);
    REQUIRE_FALSE(sr.vacuous);
    const double sys = 2 * std::log(std::pow(21.0 * 999 / 16, 2.0 / 3) - 3);
    CHECK(sr.value.mid() == doctest::Approx(sys * sys / (4 * M_PI * 999)));
}

TEST_CASE("v3 against the Clausen series") {
    const double oracle = 1.5 * clausen_two_pi_thirds(2000000);
    CHECK(v3() == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(v3() == doctest::Approx(1.0149416064).epsilon(1e-9));
}

TEST_CASE("Kleinian bounds") {
    GeometryContext ctx;
    ctx.dimension = Dimension::kleinian;
    ctx.degree = 2;
    CHECK_THROWS_AS(kleinian_bounds(ctx, 100), InputError);
    ctx.base_simplicial_volume = 1.0;
    ctx.base_torsion_free = true;
    const KleinianBounds k = kleinian_bounds(ctx, 100);
    CHECK(k.simplicial_volume_upper.contains(1e6));
    REQUIRE_FALSE(k.systole.vacuous);
    CHECK(k.systole.value.contains(2 * std::log(97.0)));
    CHECK(k.systole_from_volume.value.lo <= k.systole.value.hi);
    CHECK(k.systole_from_volume.value.hi >= k.systole.value.lo);
    CHECK(k.c1 == doctest::Approx(8.0 / 27.0 / 1.0149416064));
    CHECK(k.sr.value.mid() == doctest::Approx(std::pow(2 * std::log(97.0), 3) / (1e6 * v3())).epsilon(1e-9));
    CHECK(kleinian_bounds(ctx, 3).systole.vacuous);
    CHECK(kleinian_asymptotic(ctx).find("2^0") != std::string::npos);

    const TraceBound t = trace_lower_bound(ctx, Integer(100), Integer(4));
    CHECK(t.coarse.contains(98.0));
    CHECK(t.sharp.contains(100.0 / (0.5 * 2.0) - 2.0));
}
