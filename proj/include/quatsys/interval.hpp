#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>

#include "quatsys/arith.hpp"

namespace quatsys {

// Closed interval with double end-points.
//
// Every operation rounds to nearest and then steps one ulp outward, so the
// true result of the exact operation on any points of the operands is always
// contained. Library functions (log, acosh, ...) are assumed accurate to
// within one ulp; two ulps are added for them.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    // Tight enclosure of an exact rational.
    static Interval from_rational(const Rational& r);
    static Interval from_rational(const Rational& lo, const Rational& hi);

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool certainly_positive() const { return lo > 0.0; }
    bool certainly_negative() const { return hi < 0.0; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }

    // -1, 0, +1 when the sign is certified; 2 when undecided.
    int sign() const;
};

inline double round_down(double v, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
    return v;
}
inline double round_up(double v, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, std::numeric_limits<double>::infinity());
    return v;
}

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }

Interval abs(const Interval& a);
Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval cosh(const Interval& a);
Interval acosh(const Interval& a);
Interval pow(const Interval& a, double exponent);  // a > 0

std::string to_string(const Interval& x, int digits = 6);
std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace quatsys
