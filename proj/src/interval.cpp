#include "quatsys/interval.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace quatsys {

namespace {

Interval widen(double lo, double hi, int ulps = 1) { return {round_down(lo, ulps), round_up(hi, ulps)}; }

// Rational -> double, rounded down / up exactly.
double rational_down(const Rational& r) {
    double d = r.get_d();  // truncates toward zero
    while (Rational(d) > r) d = round_down(d);
    return d;
}

double rational_up(const Rational& r) {
    double d = r.get_d();
    while (Rational(d) < r) d = round_up(d);
    return d;
}

}  // namespace

Interval Interval::from_rational(const Rational& r) { return {rational_down(r), rational_up(r)}; }

Interval Interval::from_rational(const Rational& lo, const Rational& hi) {
    return {rational_down(lo), rational_up(hi)};
}

int Interval::sign() const {
    if (lo > 0.0) return 1;
    if (hi < 0.0) return -1;
    if (lo == 0.0 && hi == 0.0) return 0;
    return 2;
}

Interval operator+(const Interval& a, const Interval& b) { return widen(a.lo + b.lo, a.hi + b.hi); }

Interval operator-(const Interval& a, const Interval& b) { return widen(a.lo - b.hi, a.hi - b.lo); }

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

Interval sqr(const Interval& a) {
    const Interval m = abs(a);
    return widen(m.lo * m.lo, m.hi * m.hi);
}

Interval sqrt(const Interval& a) {
    const double lo = a.lo <= 0.0 ? 0.0 : round_down(std::sqrt(a.lo));
    return {std::max(0.0, lo), round_up(std::sqrt(std::max(0.0, a.hi)))};
}

Interval log(const Interval& a) {
    const double lo = a.lo <= 0.0 ? -std::numeric_limits<double>::infinity() : round_down(std::log(a.lo), 2);
    return {lo, round_up(std::log(a.hi), 2)};
}

Interval exp(const Interval& a) {
    return {std::max(0.0, round_down(std::exp(a.lo), 2)), round_up(std::exp(a.hi), 2)};
}

Interval cosh(const Interval& a) {
    const Interval m = abs(a);
    return {std::max(1.0, round_down(std::cosh(m.lo), 2)), round_up(std::cosh(m.hi), 2)};
}

Interval acosh(const Interval& a) {
    const double lo = a.lo <= 1.0 ? 0.0 : std::max(0.0, round_down(std::acosh(a.lo), 2));
    return {lo, round_up(std::acosh(std::max(1.0, a.hi)), 2)};
}

Interval pow(const Interval& a, double exponent) {
    // Monotone for a > 0; composed as exp(exponent * log a).
    return exp(log(a) * Interval(exponent));
}

std::string to_string(const Interval& x, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << "[" << x.lo << "," << x.hi << "]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_string(x, 10); }

}  // namespace quatsys
