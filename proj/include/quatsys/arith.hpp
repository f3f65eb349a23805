#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace quatsys {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = s*a + t*b with g >= 0.
inline void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& v);

// Parses "p", "-p" or "p/q".
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

bool is_prime(std::int64_t n);

// Trial division; throws InputError if n has a prime factor above `limit`
// that cannot be resolved.
std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n,
                                                         std::int64_t limit = 1000000);

}  // namespace quatsys
