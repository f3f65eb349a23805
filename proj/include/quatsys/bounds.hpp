#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "quatsys/interval.hpp"
#include "quatsys/numfield.hpp"

namespace quatsys {

enum class Dimension { fuchsian, kleinian };

// Inputs shared by the bound evaluators. The covolume is stored as a
// rational multiple of pi.
struct GeometryContext {
    Dimension dimension = Dimension::fuchsian;
    unsigned degree = 1;           // d = [K:Q]
    Integer kappa = 1;
    Rational covolume_over_pi = 0;  // nu / pi
    Rational lambda = 1;
    // Kleinian only: simplicial volume of the torsion-free base X_1.
    std::optional<double> base_simplicial_volume;
    bool base_torsion_free = false;

    // Q_Hur: d = 3, kappa = 2, nu = pi/21, lambda = 1.
    static GeometryContext hurwitz();

    Interval covolume() const;
};

Interval interval_pi();

struct TraceBound {
    Interval sharp;
    Interval coarse;
};

// Lower bounds for |Tr x|, x != +-1 in Gamma(I). `sum_norm` is Norm(<2> + kappa I).
TraceBound trace_lower_bound(const GeometryContext& ctx, const Integer& ideal_norm, const Integer& sum_norm);
TraceBound trace_lower_bound(const GeometryContext& ctx, const Ideal& I);

// exact: 2 arccosh(|t|/2), needs |t| > 2. Otherwise the bound 2 log(|t| - 1).
Interval length_from_trace(const Interval& t, bool exact);

// PSL-level index from the SL-level count: halved when -1 is not in Gamma(I).
Integer psl_index(const Integer& sl_count, bool minus_one_in_gamma);

// Solves 4 pi (g - 1) = index * nu. Throws InvariantViolation if g is not an
// integer.
Integer genus_from_index(const GeometryContext& ctx, const Integer& psl_index);

struct SystoleBound {
    bool vacuous = false;  // the argument of the logarithm is not positive
    Interval value;
};

// 2 log(t - 1) for the trace bound t of I, sharp and coarse.
SystoleBound sys_lower_bound(const GeometryContext& ctx, const Ideal& I, bool sharp = true);
// The chain in terms of the genus alone:
// 2 log((4 pi (g-1) / (nu lambda))^(2/3) / 2^(2d-2) - 3).
SystoleBound sys_lower_bound_from_genus(const GeometryContext& ctx, const Integer& genus);

// (4/3) log g.
Interval four_thirds_bound(const Integer& genus);
// 2 log((21 (g-1) / 16)^(2/3) - 3) >= (4/3) log g, certified. False when
// undecided or false.
bool hurwitz_43_check(const Integer& genus);

// log(2^(3d-5) nu lambda / pi), the bracketed constant of the Fuchsian bound.
Interval fuchsian_constant(const GeometryContext& ctx);
// R(D, Q) = 8^d nu lambda.
Interval r_invariant(const GeometryContext& ctx);

// SR >= sys^2 / (4 pi (g - 1)) with sys the explicit chain bound.
SystoleBound fuchsian_sr_bound(const GeometryContext& ctx, const Integer& genus);

// Volume of the regular ideal tetrahedron, 3 Lambda(pi/3), by quadrature.
double v3();

struct KleinianBounds {
    Interval simplicial_volume_upper;  // ||X_1|| lambda Norm(I)^3
    SystoleBound systole;              // 2 log(Norm(I) / 2^(d-2) - 3)
    SystoleBound systole_from_volume;  // same chain through ||X_I||
    Interval constant;                 // log(2^(3d-6) ||X_1|| lambda)
    double c1 = 0.0;                   // (8/27) / v3
    SystoleBound sr;                   // sys^3 / (v3 ||X_I||)
};

// Needs ctx.base_simplicial_volume. ||X_I|| defaults to the upper bound.
KleinianBounds kleinian_bounds(const GeometryContext& ctx, const Integer& ideal_norm,
                               std::optional<double> simplicial_volume = std::nullopt);

// Labeled statements with the o(1) terms of the asymptotic forms.
std::string fuchsian_asymptotic(const GeometryContext& ctx);
std::string kleinian_asymptotic(const GeometryContext& ctx);

}  // namespace quatsys
