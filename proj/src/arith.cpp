#include "quatsys/arith.hpp"

#include <stdexcept>

#include "quatsys/errors.hpp"

namespace quatsys {

std::int64_t to_int64(const Integer& v) {
    if (!mpz_fits_slong_p(v.get_mpz_t())) {
        throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
    }
    return mpz_get_si(v.get_mpz_t());
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c != ' ' && c != '\t') t.push_back(c);
    }
    if (t.empty()) throw InputError("empty rational literal");
    if (t[0] == '+') t.erase(0, 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const char c = t[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
        if (!ok) throw InputError("malformed rational literal '" + text + "'");
    }
    Rational r;
    if (r.set_str(t, 10) != 0) throw InputError("malformed rational literal '" + text + "'");
    if (r.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t q : {2, 3, 5, 7, 11, 13}) {
        if (n % q == 0) return n == q;
    }
    Integer z(static_cast<long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n, std::int64_t limit) {
    std::vector<std::pair<Integer, unsigned>> out;
    if (n < 0) n = -n;
    if (n == 0) throw InputError("cannot factor zero");
    for (std::int64_t q = 2; q <= limit && Integer(static_cast<long>(q)) * q <= n; ++q) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(q))) {
            n /= static_cast<unsigned long>(q);
            ++e;
        }
        if (e > 0) out.emplace_back(Integer(static_cast<long>(q)), e);
    }
    if (n > 1) {
        const Integer lim(static_cast<long>(limit));
        if (n > lim * lim && mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) {
            throw InputError("cannot factor " + n.get_str() + " by trial division");
        }
        out.emplace_back(n, 1);
    }
    return out;
}

}  // namespace quatsys
