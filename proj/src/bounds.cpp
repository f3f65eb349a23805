#include "quatsys/bounds.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "quatsys/errors.hpp"

namespace quatsys {

namespace {

Interval exact(const Rational& r) { return Interval::from_rational(r); }

Interval exact(const Integer& v) { return Interval::from_rational(Rational(v)); }

Interval power_of_two(int e) {
    return e >= 0 ? exact(Rational(ipow(Integer(2), static_cast<unsigned>(e))))
                  : exact(Rational(Integer(1), ipow(Integer(2), static_cast<unsigned>(-e))));
}

Interval two_thirds_power(const Interval& x) { return exp(log(x) * (exact(Rational(2, 3)))); }

SystoleBound two_log_minus(const Interval& x, double shift) {
    const Interval arg = x - Interval(shift);
    if (!arg.certainly_positive()) return {true, arg};
    return {false, log(arg) * 2.0};
}

}  // namespace

GeometryContext GeometryContext::hurwitz() {
    GeometryContext ctx;
    ctx.degree = 3;
    ctx.kappa = 2;
    ctx.covolume_over_pi = Rational(1, 21);
    ctx.lambda = 1;
    return ctx;
}

Interval interval_pi() { return {round_down(M_PI), round_up(M_PI)}; }

Interval GeometryContext::covolume() const { return exact(covolume_over_pi) * interval_pi(); }

TraceBound trace_lower_bound(const GeometryContext& ctx, const Integer& ideal_norm, const Integer& sum_norm) {
    const int d = static_cast<int>(ctx.degree);
    TraceBound out;
    if (ctx.dimension == Dimension::fuchsian) {
        // N(I)^2 / (2^(d-2) N(<2> + kappa I)) - 2 and N(I)^2 / 2^(2d-2) - 2
        Rational sharp(ideal_norm * ideal_norm, sum_norm);
        Rational coarse(ideal_norm * ideal_norm);
        sharp.canonicalize();
        if (d >= 2) {
            sharp /= Rational(ipow(Integer(2), static_cast<unsigned>(d - 2)));
        } else {
            sharp *= 2;
        }
        coarse /= Rational(ipow(Integer(2), static_cast<unsigned>(2 * d - 2)));
        out.sharp = exact(Rational(sharp - 2));
        out.coarse = exact(Rational(coarse - 2));
    } else {
        // N(I) / (2^(d/2-2) N(<2> + kappa I)^(1/2)) - 2 and N(I) / 2^(d-2) - 2
        const Interval n = exact(ideal_norm);
        const Interval scale = exp(log(Interval(2.0)) * (exact(Rational(d, 2)) - Interval(2.0)));
        out.sharp = n / (scale * sqrt(exact(sum_norm))) - Interval(2.0);
        out.coarse = n / power_of_two(d - 2) - Interval(2.0);
    }
    return out;
}

TraceBound trace_lower_bound(const GeometryContext& ctx, const Ideal& I) {
    const NumberField& K = I.field();
    const Ideal two_plus = Ideal::principal(K.from_integer(2)) +
                           Ideal::principal(K.from_rational(Rational(ctx.kappa))) * I;
    return trace_lower_bound(ctx, I.norm(), two_plus.norm());
}

Interval length_from_trace(const Interval& t, bool exact_mode) {
    const Interval a = abs(t);
    if (exact_mode) {
        if (a.lo <= 2.0) throw InputError("trace " + to_string(t) + " is not hyperbolic (|t| <= 2)");
        return acosh(a / 2.0) * 2.0;
    }
    if (a.lo <= 1.0) throw InputError("length bound needs |t| > 1");
    return log(a - 1.0) * 2.0;
}

Integer psl_index(const Integer& sl_count, bool minus_one_in_gamma) {
    if (minus_one_in_gamma) return sl_count;
    if (sl_count % 2 != 0) throw InvariantViolation("odd SL index " + to_string(sl_count) + " with -1 not in Gamma(I)");
    return sl_count / 2;
}

Integer genus_from_index(const GeometryContext& ctx, const Integer& psl_index) {
    if (ctx.covolume_over_pi <= 0) throw InputError("covolume must be positive");
    const Rational g = 1 + Rational(psl_index) * ctx.covolume_over_pi / 4;
    if (!is_integral(g)) {
        throw InvariantViolation("genus " + to_string(g) + " from index " + to_string(psl_index) + " is not an integer");
    }
    return g.get_num();
}

SystoleBound sys_lower_bound(const GeometryContext& ctx, const Ideal& I, bool sharp) {
    const TraceBound t = trace_lower_bound(ctx, I);
    return two_log_minus(sharp ? t.sharp : t.coarse, 1.0);
}

SystoleBound sys_lower_bound_from_genus(const GeometryContext& ctx, const Integer& genus) {
    if (genus < 2) return {true, Interval(0.0)};
    const int d = static_cast<int>(ctx.degree);
    const Interval area = Interval(4.0) * interval_pi() * exact(Integer(genus - 1));
    const Interval norm_cubed = area / (ctx.covolume() * exact(ctx.lambda));
    return two_log_minus(two_thirds_power(norm_cubed) / power_of_two(2 * d - 2), 3.0);
}

Interval four_thirds_bound(const Integer& genus) {
    return log(exact(genus)) * exact(Rational(4, 3));
}

bool hurwitz_43_check(const Integer& genus) {
    if (genus < 2) return false;
    const Interval inner = two_thirds_power(exact(Rational(21 * (genus - 1), 16)));
    const SystoleBound lhs = two_log_minus(inner, 3.0);
    if (lhs.vacuous) return false;
    return lhs.value.lo >= four_thirds_bound(genus).hi;
}

Interval fuchsian_constant(const GeometryContext& ctx) {
    const int d = static_cast<int>(ctx.degree);
    return log(power_of_two(3 * d - 5) * exact(ctx.covolume_over_pi) * exact(ctx.lambda));
}

Interval r_invariant(const GeometryContext& ctx) {
    return exact(ipow(Integer(8), ctx.degree)) * ctx.covolume() * exact(ctx.lambda);
}

SystoleBound fuchsian_sr_bound(const GeometryContext& ctx, const Integer& genus) {
    const SystoleBound s = sys_lower_bound_from_genus(ctx, genus);
    if (s.vacuous) return s;
    return {false, sqr(s.value) / (Interval(4.0) * interval_pi() * exact(Integer(genus - 1)))};
}

double v3() {
    // Lambda(theta) = -int_0^theta log|2 sin t| dt
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double lobachevsky = -integrator.integrate([](double t) { return std::log(2.0 * std::sin(t)); }, 0.0, M_PI / 3);
    return 3.0 * lobachevsky;
}

KleinianBounds kleinian_bounds(const GeometryContext& ctx, const Integer& ideal_norm, std::optional<double> simplicial_volume) {
    if (!ctx.base_simplicial_volume || *ctx.base_simplicial_volume <= 0) {
        throw InputError("Kleinian bounds need the simplicial volume of the base manifold");
    }
    const int d = static_cast<int>(ctx.degree);
    const Interval base(*ctx.base_simplicial_volume);
    const Interval lambda = exact(ctx.lambda);
    KleinianBounds out;
    out.simplicial_volume_upper = base * lambda * exact(Integer(ideal_norm * ideal_norm * ideal_norm));
    out.systole = two_log_minus(exact(ideal_norm) / power_of_two(d - 2), 3.0);
    const Interval volume = simplicial_volume ? Interval(*simplicial_volume) : out.simplicial_volume_upper;
    const Interval norm_lower = exp(log(volume / (base * lambda)) / 3.0);
    out.systole_from_volume = two_log_minus(norm_lower / power_of_two(d - 2), 3.0);
    out.constant = log(power_of_two(3 * d - 6) * base * lambda);
    const double v = v3();
    out.c1 = (8.0 / 27.0) / v;
    if (out.systole_from_volume.vacuous) {
        out.sr = {true, Interval(0.0)};
    } else {
        const Interval s = out.systole_from_volume.value;
        out.sr = {false, s * s * s / (volume * Interval(v))};
    }
    return out;
}

std::string fuchsian_asymptotic(const GeometryContext& ctx) {
    std::ostringstream os;
    os << "sys >= (4/3) [log g - (" << to_string(fuchsian_constant(ctx)) << " + o(1))]  (asymptotic form)";
    return os.str();
}

std::string kleinian_asymptotic(const GeometryContext& ctx) {
    std::ostringstream os;
    const int d = static_cast<int>(ctx.degree);
    os << "sys >= (2/3) [log ||X_I|| - (log(2^" << (3 * d - 6) << " ||X_1|| lambda) + o(1))]  (asymptotic form)";
    return os.str();
}

}  // namespace quatsys
