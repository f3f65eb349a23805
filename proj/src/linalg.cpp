#include "quatsys/linalg.hpp"

#include <stdexcept>
#include <utility>

#include "quatsys/errors.hpp"

namespace quatsys {

namespace {

void axpy_rows(IntVector& target, const Integer& factor, const IntVector& source) {
    for (std::size_t k = 0; k < target.size(); ++k) target[k] += factor * source[k];
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix a) {
    if (a.empty()) return {};
    const std::size_t n = a[0].size();
    std::size_t row = 0;
    Integer g, s, t;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        for (std::size_t i = row + 1; i < a.size(); ++i) {
            if (a[i][col] == 0) continue;
            if (a[row][col] == 0) {
                std::swap(a[row], a[i]);
                continue;
            }
            const Integer x = a[row][col];
            const Integer y = a[i][col];
            xgcd(x, y, g, s, t);
            const Integer u = x / g;
            const Integer v = y / g;
            // [[s, t], [-v, u]] is unimodular.
            for (std::size_t k = col; k < n; ++k) {
                const Integer r0 = a[row][k];
                const Integer r1 = a[i][k];
                a[row][k] = s * r0 + t * r1;
                a[i][k] = u * r1 - v * r0;
            }
        }
        if (a[row][col] == 0) continue;
        if (a[row][col] < 0) {
            for (std::size_t k = col; k < n; ++k) a[row][k] = -a[row][k];
        }
        for (std::size_t i = 0; i < row; ++i) {
            if (a[i][col] == 0) continue;
            const Integer q = floor_div(a[i][col], a[row][col]);
            if (q != 0) axpy_rows(a[i], -q, a[row]);
        }
        ++row;
    }
    a.resize(row);
    return a;
}

std::vector<std::size_t> pivot_columns(const IntMatrix& hnf) {
    std::vector<std::size_t> piv;
    piv.reserve(hnf.size());
    for (const auto& r : hnf) {
        std::size_t c = 0;
        while (c < r.size() && r[c] == 0) ++c;
        piv.push_back(c);
    }
    return piv;
}

IntVector reduce_mod_hnf(const IntMatrix& hnf, IntVector v) {
    const auto piv = pivot_columns(hnf);
    for (std::size_t r = 0; r < hnf.size(); ++r) {
        const std::size_t c = piv[r];
        if (v[c] == 0) continue;
        const Integer q = floor_div(v[c], hnf[r][c]);
        if (q != 0) axpy_rows(v, -q, hnf[r]);
    }
    return v;
}

bool hnf_contains(const IntMatrix& hnf, const IntVector& v) {
    const IntVector r = reduce_mod_hnf(hnf, v);
    for (const auto& x : r) {
        if (x != 0) return false;
    }
    return true;
}

std::optional<IntVector> hnf_solve(const IntMatrix& hnf, const IntVector& v) {
    const auto piv = pivot_columns(hnf);
    IntVector rest = v;
    IntVector coords(hnf.size());
    for (std::size_t r = 0; r < hnf.size(); ++r) {
        const std::size_t c = piv[r];
        if (rest[c] % hnf[r][c] != 0) return std::nullopt;
        coords[r] = rest[c] / hnf[r][c];
        if (coords[r] != 0) axpy_rows(rest, -coords[r], hnf[r]);
    }
    for (const auto& x : rest) {
        if (x != 0) return std::nullopt;
    }
    return coords;
}

Integer hnf_index(const IntMatrix& hnf) {
    Integer det = 1;
    for (std::size_t r = 0; r < hnf.size(); ++r) det *= hnf[r][r];
    return det;
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a[0].size();
    IntMatrix big;
    big.reserve(a.size() + b.size());
    for (const auto& r : a) {
        IntVector row(2 * n);
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = r[k];
            row[n + k] = r[k];
        }
        big.push_back(std::move(row));
    }
    for (const auto& r : b) {
        IntVector row(2 * n);
        for (std::size_t k = 0; k < n; ++k) row[k] = r[k];
        big.push_back(std::move(row));
    }
    const IntMatrix h = hermite_normal_form(std::move(big));
    const auto piv = pivot_columns(h);
    IntMatrix out;
    for (std::size_t r = 0; r < h.size(); ++r) {
        if (piv[r] < n) continue;
        out.emplace_back(h[r].begin() + static_cast<std::ptrdiff_t>(n), h[r].end());
    }
    return hermite_normal_form(std::move(out));
}

Rational determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

Integer determinant(const IntMatrix& m) {
    RatMatrix r(m.size(), RatVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = m[i][j];
    }
    const Rational d = determinant(std::move(r));
    return d.get_num();
}

std::optional<RatVector> solve_left(RatMatrix m, RatVector rhs) {
    // x * m = rhs  <=>  m^T x^T = rhs^T
    const std::size_t n = m.size();
    RatMatrix a(n, RatVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[j][i];
        a[i][n] = rhs[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    auto inv = [p](std::int64_t a) {
        std::int64_t r = 1, e = p - 2;
        a %= p;
        while (e > 0) {
            if (e & 1) r = static_cast<std::int64_t>((__int128)r * a % p);
            a = static_cast<std::int64_t>((__int128)a * a % p);
            e >>= 1;
        }
        return r;
    };
    for (auto& row : m) {
        for (auto& x : row) x = ((x % p) + p) % p;
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        const std::int64_t iv = inv(m[rank][c]);
        for (auto& x : m[rank]) x = static_cast<std::int64_t>((__int128)x * iv % p);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const std::int64_t f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                m[r][k] = ((m[r][k] - static_cast<std::int64_t>((__int128)f * m[rank][k] % p)) % p + p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace quatsys
