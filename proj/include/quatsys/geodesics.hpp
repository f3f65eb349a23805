#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quatsys/interval.hpp"
#include "quatsys/orders.hpp"

namespace quatsys {

// Elements are embedded at place 0 by i -> diag(s, -s), j -> [[0, 1], [b, 0]]
// with s = sqrt(a). The basepoint is i in the upper half-plane, and
// cosh d(i, g i) = |g|_F^2 / 2.
struct EnumerationParams {
    double radius = 4.0;  // L
    std::uint64_t node_cap = 2000000000;
    unsigned jobs = 1;
};

// Per-coefficient candidates: coordinates of kappa x_k over the power basis
// such that every place bound implied by the radius holds.
struct BoxBounds {
    double radius = 0.0;
    std::array<std::vector<IntVector>, 4> coefficients;
};

// Throws InputError unless D is split at place 0 (with a > 0 there) and
// ramified at every other real place. CapExceeded if more than `cap`
// candidates would be listed for one coefficient.
BoxBounds box_bounds(const OrderLattice& Q, double radius, std::uint64_t cap = 1000000);

struct GeodesicCandidate {
    QuatElement x;
    FieldElement trace;       // Tr x = 2 x0, sign normalized so sigma_0 >= 0
    Interval trace_value;     // |sigma_0(Tr x)|
    std::optional<Interval> length;  // 2 arccosh(|Tr| / 2) for hyperbolic x
    Interval displacement;    // d(i, x i)
};

struct EnumerationOutput {
    double radius = 0.0;
    std::vector<GeodesicCandidate> hyperbolic;  // sorted by |Tr|, then coordinates
    std::vector<GeodesicCandidate> elliptic;    // |Tr| <= 2, x != +-1: torsion alarms
    std::uint64_t nodes = 0;       // search tree nodes
    std::uint64_t lattice_points = 0;  // (x0, x1, x2) points reaching the x3 solve
    std::uint64_t solutions = 0;   // exact norm-one members of 1 + IQ, including +-1
};

// All x in Gamma(I) other than +-1 with d(i, x i) <= L. Membership is decided
// in exact arithmetic; floating point only prunes. The output does not depend
// on params.jobs.
EnumerationOutput enumerate_gamma(const OrderLattice& Q, const Ideal& I, const EnumerationParams& params);

struct RadiusSchedule {
    double initial = 4.0;
    double step = 1.0;
    double max = 12.0;
};

enum class Completeness { certified, stabilized };

struct EnumerationResult {
    FieldElement min_trace;
    Interval min_length;
    std::size_t distinct_traces = 0;  // distinct |Tr| values found at the final radius
    Completeness mode = Completeness::stabilized;
    double radius = 0.0;
    std::optional<double> diameter;
    std::uint64_t visited = 0;
    std::size_t elliptic = 0;
    std::vector<std::pair<double, std::string>> history;  // (L, minimal trace) per run

    std::string to_record(const Ideal& I) const;
};

// Runs enumerate_gamma at L = initial, initial + step, ... and stops when the
// minimal trace repeats between consecutive radii (stabilized) or, given a
// diameter bound D of X_I, when cosh(L/2) >= cosh(l/2) cosh(D) (certified).
// Throws CapExceeded when the schedule runs out first.
EnumerationResult systole_search(const OrderLattice& Q, const Ideal& I, const RadiusSchedule& schedule,
                                 std::optional<double> diameter = std::nullopt, const EnumerationParams& base = {},
                                 const std::function<void(const EnumerationOutput&)>& progress = {});

// cosh(L/2) >= cosh(l/2) cosh(D), certified.
bool completeness_certified(double radius, const Interval& length, double diameter);

}  // namespace quatsys
