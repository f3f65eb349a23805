#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "quatsys/bounds.hpp"
#include "quatsys/errors.hpp"
#include "quatsys/geodesics.hpp"
#include "quatsys/torsion.hpp"

using namespace quatsys;

namespace {

struct Setting {
    OrderLattice Q = OrderLattice::hurwitz();
    NumberField K = Q.field();
    Ideal P7 = factor_rational_prime(K, 7).at(0).ideal;
    Ideal two = Ideal::principal(K.from_integer(2));
};

const Setting& setting() {
    static const Setting s;
    return s;
}

// d(i, x i) from the Moebius action of the matrix of x at the split place.
double moebius_displacement(const QuatElement& x) {
    const NumberField& K = x.algebra().field();
    auto at0 = [&](const FieldElement& v) { return K.embed_interval(v, 0).mid(); };
    const double s = std::sqrt(at0(x.algebra().a())), b = at0(x.algebra().b());
    const double x0 = at0(x[0]), x1 = at0(x[1]), x2 = at0(x[2]), x3 = at0(x[3]);
    const std::complex<double> i(0, 1);
    const std::complex<double> z = ((x0 + s * x1) * i + (x2 + s * x3)) / (b * (x2 - s * x3) * i + (x0 - s * x1));
    return std::acosh(1 + std::norm(z - i) / (2 * z.imag()));
}

std::vector<QuatElement> all_elements(const EnumerationOutput& out) {
    std::vector<QuatElement> v;
    for (const auto& g : out.hyperbolic) v.push_back(g.x);
    for (const auto& g : out.elliptic) v.push_back(g.x);
    return v;
}

bool contains(const std::vector<QuatElement>& v, const QuatElement& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

EnumerationOutput run(const Ideal& I, double L, unsigned jobs = 1) {
    EnumerationParams p;
    p.radius = L;
    p.jobs = jobs;
    return enumerate_gamma(setting().Q, I, p);
}

}  // namespace

TEST_CASE("box bounds") {
    const OrderLattice& Q = setting().Q;
    const BoxBounds b4 = box_bounds(Q, 4.0), b8 = box_bounds(Q, 8.0);
    for (std::size_t k = 0; k < 4; ++k) {
        const IntVector zero(3, Integer(0));
        CHECK(std::binary_search(b4.coefficients[k].begin(), b4.coefficients[k].end(), zero));
        CHECK(std::includes(b8.coefficients[k].begin(), b8.coefficients[k].end(), b4.coefficients[k].begin(),
                            b4.coefficients[k].end()));
        CHECK(b8.coefficients[k].size() > b4.coefficients[k].size());
    }
    // x0 = +-1/2 and +-1 are in the first box: kappa x0 = +-1, +-2.
    for (long v : {-2L, -1L, 1L, 2L}) {
        const IntVector w{Integer(v), Integer(0), Integer(0)};
        CHECK(std::binary_search(b4.coefficients[0].begin(), b4.coefficients[0].end(), w));
    }
    // Every enumerated element lies in the box of its radius.
    for (const auto& x : all_elements(run(setting().P7, 4.0))) {
        const IntVector c = Q.coordinates(x).value();
        for (std::size_t k = 0; k < 4; ++k) {
            const IntVector part(c.begin() + static_cast<long>(3 * k), c.begin() + static_cast<long>(3 * k + 3));
            CHECK(std::binary_search(b4.coefficients[k].begin(), b4.coefficients[k].end(), part));
        }
    }
    CHECK_THROWS_AS(box_bounds(Q, 8.0, 10), CapExceeded);
}

TEST_CASE("enumeration of Gamma(<2 - eta>)") {
    const Setting& s = setting();
    CHECK(Ideal::principal(s.K.from_integer(2) - s.K.generator()) == s.P7);
    const EnumerationOutput small = run(s.P7, 1.0);
    CHECK(small.hyperbolic.empty());
    CHECK(small.elliptic.empty());

    const EnumerationOutput o4 = run(s.P7, 4.0), o6 = run(s.P7, 6.0);
    REQUIRE(!o4.hyperbolic.empty());
    CHECK(o6.elliptic.empty());
    CHECK(std::fabs(o4.hyperbolic.front().length->mid() - 3.936) < 1e-3);
    const auto e4 = all_elements(o4), e6 = all_elements(o6);
    const CongruenceLattice IQ(s.Q, s.P7);
    const TraceBound tb = trace_lower_bound(GeometryContext::hurwitz(), s.P7);
    for (const auto& g : o6.hyperbolic) {
        CHECK(in_gamma_I(IQ, g.x));
        CHECK(moebius_displacement(g.x) <= 6.0 + 1e-9);
        CHECK(std::fabs(g.displacement.mid() - moebius_displacement(g.x)) < 1e-9);
        // The translation length never exceeds the displacement of a point.
        CHECK(g.length->lo <= g.displacement.hi + 1e-9);
        CHECK(g.trace_value.lo >= tb.sharp.lo - 1e-9);
        // l(x) = l(x^-1) = l(-x)
        CHECK(contains(e6, g.x.conj()));
        CHECK(g.x.conj().reduced_trace() == g.x.reduced_trace());
        CHECK((-g.x).reduced_trace() == -g.x.reduced_trace());
    }
    for (const auto& x : e4) CHECK(contains(e6, x));
    CHECK(e6.size() > e4.size());
    // Products of short elements that stay within the radius are found.
    const auto e8 = all_elements(run(s.P7, 8.0));
    std::size_t checked = 0;
    for (const auto& x : e4) {
        for (const auto& y : e4) {
            const QuatElement xy = x * y;
            if (xy == s.Q.algebra().one() || moebius_displacement(xy) > 8.0 - 1e-6) continue;
            CHECK(contains(e8, xy));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("enumeration does not depend on the number of jobs") {
    const EnumerationOutput a = run(setting().two, 7.0, 1), b = run(setting().two, 7.0, 3);
    REQUIRE(a.hyperbolic.size() == b.hyperbolic.size());
    for (std::size_t k = 0; k < a.hyperbolic.size(); ++k) CHECK(a.hyperbolic[k].x == b.hyperbolic[k].x);
    CHECK(a.solutions == b.solutions);
}

TEST_CASE("elliptic elements of the full norm-one group") {
    const Setting& s = setting();
    const EnumerationOutput out = run(Ideal::unit(s.K), 2.0);
    REQUIRE(!out.elliptic.empty());
    const auto orders = candidate_orders(s.K);
    const QuatElement one = s.Q.algebra().one();
    std::set<unsigned> seen;
    for (const auto& g : out.elliptic) {
        CHECK(g.trace_value.hi <= 2.0 + 1e-9);
        QuatElement p = g.x;
        unsigned n = 1;
        while (p != one && p != -one && n < 64) {
            p = p * g.x;
            ++n;
        }
        REQUIRE(n < 64);
        const unsigned order = (p == one) ? n : 2 * n;
        CHECK(std::find(orders.begin(), orders.end(), order) != orders.end());
        seen.insert(n);
    }
    // Orders 2, 3 and 7 in PSL_2 appear near the basepoint of the triangle group.
    CHECK(seen.size() >= 2);
}

TEST_CASE("systoles of the congruence covers") {
    const Setting& s = setting();
    struct Row {
        Ideal I;
        double systole;
    };
    std::vector<Row> rows{{s.P7, 3.936}, {s.two, 5.796}};
    std::vector<double> thirteen;
    for (const auto& P : factor_rational_prime(s.K, 13)) {
        const EnumerationResult r = systole_search(s.Q, P.ideal, RadiusSchedule{4.0, 1.0, 12.0});
        CHECK(r.mode == Completeness::stabilized);
        thirteen.push_back(r.min_length.mid());
    }
    std::sort(thirteen.begin(), thirteen.end());
    REQUIRE(thirteen.size() == 3);
    const double expected[3] = {5.903, 6.393, 6.887};
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(thirteen[k] - expected[k]) <= 1e-3);
    for (const auto& row : rows) {
        const EnumerationResult r = systole_search(s.Q, row.I, RadiusSchedule{});
        CHECK(std::fabs(r.min_length.mid() - row.systole) <= 1e-3);
        CHECK(r.history.size() >= 2);
        CHECK(r.history.back().second == r.min_trace.to_string());
    }
}

TEST_CASE("certified completeness") {
    const Setting& s = setting();
    const Interval ell(3.93595);
    CHECK(completeness_certified(2 * std::acosh(std::cosh(3.93595 / 2) * std::cosh(0.5)) + 1e-6, ell, 0.5));
    CHECK(!completeness_certified(2 * std::acosh(std::cosh(3.93595 / 2) * std::cosh(0.5)) - 1e-6, ell, 0.5));
    const EnumerationResult r = systole_search(s.Q, s.P7, RadiusSchedule{4.0, 1.0, 8.0}, 0.5);
    CHECK(r.mode == Completeness::certified);
    CHECK(r.radius == 5.0);
    CHECK_THROWS_AS(systole_search(s.Q, s.P7, RadiusSchedule{4.0, 1.0, 6.0}, 3.0), CapExceeded);
    CHECK_THROWS_AS(systole_search(s.Q, s.P7, RadiusSchedule{0.0, 1.0, 6.0}), InputError);
}
