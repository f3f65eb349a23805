#include "quatsys/polynomial.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "quatsys/errors.hpp"
#include "quatsys/linalg.hpp"

namespace quatsys {

int degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Rational evaluate(const IntPoly& f, const Rational& x) {
    Rational acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

IntPoly derivative(const IntPoly& f) {
    IntPoly d;
    for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<long>(k));
    trim(d);
    return d;
}

IntPoly multiply(const IntPoly& f, const IntPoly& g) {
    if (f.empty() || g.empty()) return {};
    IntPoly r(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    trim(r);
    return r;
}

bool divide_exact(const IntPoly& f, const IntPoly& g, IntPoly& quotient) {
    if (g.empty() || g.back() != 1) throw std::invalid_argument("divide_exact needs a monic divisor");
    IntPoly rem = f;
    trim(rem);
    const int dg = degree(g);
    if (degree(rem) < dg) {
        quotient.clear();
        return rem.empty();
    }
    quotient.assign(rem.size() - g.size() + 1, 0);
    for (int k = degree(rem); k >= dg; --k) {
        const Integer c = rem[k];
        quotient[k - dg] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) rem[k - dg + j] -= c * g[j];
    }
    trim(rem);
    trim(quotient);
    return rem.empty();
}

Integer resultant(const IntPoly& f, const IntPoly& g) {
    const int m = degree(f);
    const int n = degree(g);
    if (m < 0 || n < 0) return 0;
    const int size = m + n;
    if (size == 0) return 1;
    IntMatrix s(size, IntVector(size, 0));
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];
    }
    return determinant(s);
}

Integer discriminant(const IntPoly& f) {
    const int n = degree(f);
    if (n < 1) throw std::invalid_argument("discriminant of a constant");
    if (n == 1) return 1;
    Integer r = resultant(f, derivative(f));
    if (((n * (n - 1)) / 2) % 2 == 1) r = -r;
    return r / f.back();
}

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly rat_remainder(RatPoly a, const RatPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        a.pop_back();
        trim(a);
    }
    return a;
}

std::vector<RatPoly> sturm_sequence(const IntPoly& f) {
    std::vector<RatPoly> seq;
    seq.emplace_back(f.begin(), f.end());
    const IntPoly df = derivative(f);
    seq.emplace_back(df.begin(), df.end());
    while (seq.back().size() > 1) {
        RatPoly r = rat_remainder(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    return seq;
}

int sign_changes(const std::vector<RatPoly>& seq, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq) {
        Rational acc = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
        const int s = sgn(acc);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Roots in (lo, hi].
int count_in(const std::vector<RatPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_changes(seq, lo) - sign_changes(seq, hi);
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPoly& f) {
    if (degree(f) < 1) return {};
    const auto seq = sturm_sequence(f);
    Rational bound = 0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        Rational c = Rational(f[k]) / Rational(f.back());
        if (c < 0) c = -c;
        if (c > bound) bound = c;
    }
    bound += 1;
    std::vector<std::pair<Rational, Rational>> out;
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const int c = count_in(seq, lo, hi);
        if (c == 0) continue;
        if (c == 1) {
            out.emplace_back(lo, hi);
            continue;
        }
        const Rational mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Pin exact rational roots so every interval is closed around its root.
    for (auto& [lo, hi] : out) {
        if (evaluate(f, hi) == 0) lo = hi;
    }
    return out;
}

int count_real_roots(const IntPoly& f) {
    return static_cast<int>(isolate_real_roots(f).size());
}

void refine_root(const IntPoly& f, Rational& lo, Rational& hi, const Rational& width) {
    if (lo == hi) return;
    const auto seq = sturm_sequence(f);
    while (hi - lo > width) {
        const Rational mid = (lo + hi) / 2;
        if (evaluate(f, mid) == 0) {
            lo = hi = mid;
            return;
        }
        if (count_in(seq, lo, mid) == 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

// --- F_p[t] -----------------------------------------------------------------

namespace {

using i64 = std::int64_t;

i64 mulmod(i64 a, i64 b, i64 p) { return static_cast<i64>((__int128)a * b % p); }

i64 powmod(i64 a, i64 e, i64 p) {
    i64 r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

i64 invmod(i64 a, i64 p) { return powmod(((a % p) + p) % p, p - 2, p); }

void ptrim(PolyModP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyModP padd(const PolyModP& a, const PolyModP& b, i64 p) {
    PolyModP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    ptrim(r);
    return r;
}

PolyModP psub(const PolyModP& a, const PolyModP& b, i64 p) {
    PolyModP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % p + p) % p;
    ptrim(r);
    return r;
}

PolyModP pmul(const PolyModP& a, const PolyModP& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    PolyModP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    ptrim(r);
    return r;
}

void pdivmod(const PolyModP& a, const PolyModP& b, i64 p, PolyModP& q, PolyModP& r) {
    r = a;
    ptrim(r);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    const i64 inv = invmod(b.back(), p);
    if (r.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, 0);
    while (r.size() >= b.size() && !r.empty()) {
        const i64 c = mulmod(r.back(), inv, p);
        const std::size_t shift = r.size() - b.size();
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[shift + j] = ((r[shift + j] - mulmod(c, b[j], p)) % p + p) % p;
        }
        ptrim(r);
    }
    ptrim(q);
}

PolyModP pmod(const PolyModP& a, const PolyModP& b, i64 p) {
    PolyModP q, r;
    pdivmod(a, b, p, q, r);
    return r;
}

PolyModP pdiv(const PolyModP& a, const PolyModP& b, i64 p) {
    PolyModP q, r;
    pdivmod(a, b, p, q, r);
    return q;
}

PolyModP pmonic(PolyModP f, i64 p) {
    ptrim(f);
    if (f.empty()) return f;
    const i64 inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

PolyModP pgcd(PolyModP a, PolyModP b, i64 p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PolyModP r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a, p);
}

PolyModP pderiv(const PolyModP& f, i64 p) {
    PolyModP d;
    for (std::size_t k = 1; k < f.size(); ++k) d.push_back(mulmod(f[k], static_cast<i64>(k) % p, p));
    ptrim(d);
    return d;
}

PolyModP ppowmod(PolyModP base, const Integer& e, const PolyModP& mod, i64 p) {
    PolyModP result{1};
    base = pmod(base, mod, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = pmod(pmul(result, result, p), mod, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = pmod(pmul(result, base, p), mod, p);
    }
    return result;
}

bool is_one(const PolyModP& f) { return f.size() == 1 && f[0] == 1; }

// Squarefree decomposition: pairs (squarefree factor, multiplicity).
std::vector<std::pair<PolyModP, unsigned>> squarefree(const PolyModP& f, i64 p) {
    std::vector<std::pair<PolyModP, unsigned>> out;
    PolyModP c = pgcd(f, pderiv(f, p), p);
    PolyModP w = pdiv(pmonic(f, p), c, p);
    unsigned i = 1;
    while (!is_one(w) && !w.empty()) {
        PolyModP y = pgcd(w, c, p);
        PolyModP fac = pdiv(w, y, p);
        if (fac.size() > 1) out.emplace_back(pmonic(fac, p), i);
        w = y;
        c = pdiv(c, y, p);
        ++i;
    }
    if (c.size() > 1) {
        PolyModP root;
        for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(p)) root.push_back(c[k]);
        for (auto& [g, m] : squarefree(root, p)) out.emplace_back(g, m * static_cast<unsigned>(p));
    }
    return out;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<PolyModP, unsigned>> distinct_degree(PolyModP f, i64 p) {
    std::vector<std::pair<PolyModP, unsigned>> out;
    const PolyModP x{0, 1};
    PolyModP h = x;
    unsigned k = 1;
    while (degree(f) >= 2 * static_cast<int>(k)) {
        h = ppowmod(h, Integer(static_cast<long>(p)), f, p);
        PolyModP g = pgcd(psub(h, x, p), f, p);
        if (g.size() > 1) {
            out.emplace_back(g, k);
            f = pdiv(f, g, p);
            h = pmod(h, f, p);
        }
        ++k;
    }
    if (f.size() > 1) out.emplace_back(pmonic(f, p), static_cast<unsigned>(degree(f)));
    return out;
}

void equal_degree(const PolyModP& f, unsigned k, i64 p, std::mt19937_64& rng,
                  std::vector<PolyModP>& out) {
    const int n = degree(f);
    if (n == static_cast<int>(k)) {
        out.push_back(f);
        return;
    }
    std::uniform_int_distribution<i64> coef(0, p - 1);
    for (;;) {
        PolyModP a(static_cast<std::size_t>(n));
        for (auto& c : a) c = coef(rng);
        ptrim(a);
        if (a.size() < 2) continue;
        PolyModP b;
        if (p == 2) {
            // Absolute trace a + a^2 + ... + a^(2^(k-1)).
            PolyModP t = pmod(a, f, p);
            PolyModP sq = t;
            for (unsigned i = 1; i < k; ++i) {
                sq = pmod(pmul(sq, sq, p), f, p);
                t = padd(t, sq, p);
            }
            b = t;
        } else {
            Integer e = ipow(Integer(static_cast<long>(p)), k);
            e = (e - 1) / 2;
            b = psub(ppowmod(a, e, f, p), PolyModP{1}, p);
        }
        PolyModP g = pgcd(b, f, p);
        if (g.size() > 1 && degree(g) < n) {
            equal_degree(g, k, p, rng, out);
            equal_degree(pdiv(f, g, p), k, p, rng, out);
            return;
        }
    }
}

}  // namespace

PolyModP reduce_mod_p(const IntPoly& f, std::int64_t p) {
    PolyModP r(f.size());
    const Integer P(static_cast<long>(p));
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer c = f[i] % P;
        if (c < 0) c += P;
        r[i] = to_int64(c);
    }
    ptrim(r);
    return r;
}

IntPoly lift(const PolyModP& f) {
    IntPoly r;
    for (auto c : f) r.push_back(Integer(static_cast<long>(c)));
    trim(r);
    return r;
}

int degree(const PolyModP& f) { return static_cast<int>(f.size()) - 1; }

std::vector<ModPFactor> factor_mod_p(const IntPoly& f, std::int64_t p) {
    if (!is_prime(p)) throw InputError("factor_mod_p: " + std::to_string(p) + " is not prime");
    PolyModP fp = reduce_mod_p(f, p);
    if (fp.empty()) throw InputError("factor_mod_p: polynomial vanishes mod p");
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(p));
    std::vector<ModPFactor> out;
    for (auto& [sf, mult] : squarefree(fp, p)) {
        for (auto& [g, k] : distinct_degree(sf, p)) {
            std::vector<PolyModP> parts;
            equal_degree(g, k, p, rng, parts);
            for (auto& q : parts) out.push_back({pmonic(q, p), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const ModPFactor& a, const ModPFactor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        return std::lexicographical_compare(a.factor.rbegin(), a.factor.rend(), b.factor.rbegin(),
                                            b.factor.rend());
    });
    return out;
}

bool dedekind_p_maximal(const IntPoly& f, std::int64_t p) {
    const auto factors = factor_mod_p(f, p);
    PolyModP g{1};
    PolyModP h{1};
    for (const auto& fac : factors) {
        g = pmul(g, fac.factor, p);
        for (unsigned e = 1; e < fac.multiplicity; ++e) h = pmul(h, fac.factor, p);
    }
    // f == lift(g) * lift(h) mod p; F = (lift(g) lift(h) - f) / p.
    IntPoly gh = multiply(lift(g), lift(h));
    IntPoly F(std::max(gh.size(), f.size()), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) F[i] += gh[i];
    for (std::size_t i = 0; i < f.size(); ++i) F[i] -= f[i];
    const Integer P(static_cast<long>(p));
    for (auto& c : F) {
        if (c % P != 0) throw InvariantViolation("Dedekind criterion: factorization does not recombine mod p");
        c /= P;
    }
    trim(F);
    PolyModP Fp = reduce_mod_p(F, p);
    if (Fp.empty()) {
        // gcd(0, g, h) = gcd(g, h)
        return pgcd(g, h, p).size() == 1;
    }
    PolyModP t = pgcd(pgcd(Fp, g, p), h, p);
    return t.size() == 1;
}

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned q = 2; q * q <= m; ++q) {
        if (m % q != 0) continue;
        while (m % q == 0) m /= q;
        result -= result / q;
    }
    if (m > 1) result -= result / m;
    return result;
}

IntPoly cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial(0)");
    IntPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        IntPoly q;
        if (!divide_exact(num, cyclotomic_polynomial(d), q)) {
            throw InvariantViolation("cyclotomic division not exact");
        }
        num = q;
    }
    return num;
}

IntPoly trace_polynomial(unsigned n) {
    if (n == 1) return {-2, 1};
    if (n == 2) return {2, 1};
    const IntPoly phi = cyclotomic_polynomial(n);
    const int m = degree(phi) / 2;
    // C_k(x + 1/x) = x^k + x^-k
    std::vector<IntPoly> cheb{{2}, {0, 1}};
    for (int k = 2; k <= m; ++k) {
        IntPoly next = multiply(cheb[k - 1], IntPoly{0, 1});
        next.resize(std::max(next.size(), cheb[k - 2].size()), 0);
        for (std::size_t i = 0; i < cheb[k - 2].size(); ++i) next[i] -= cheb[k - 2][i];
        trim(next);
        cheb.push_back(next);
    }
    IntPoly psi(static_cast<std::size_t>(m) + 1, 0);
    psi[0] = phi[m];
    for (int k = 1; k <= m; ++k) {
        for (std::size_t i = 0; i < cheb[k].size(); ++i) psi[i] += phi[m + k] * cheb[k][i];
    }
    trim(psi);
    return psi;
}

}  // namespace quatsys
