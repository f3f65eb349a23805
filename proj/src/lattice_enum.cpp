#include "quatsys/lattice_enum.hpp"

#include <cmath>
#include <string>

#include "quatsys/errors.hpp"

namespace quatsys {

EllipsoidEnumeration enumerate_ellipsoid(const std::vector<std::vector<long double>>& gram,
                                         const std::vector<long double>& center, long double bound,
                                         std::uint64_t node_cap,
                                         const std::function<bool(const std::vector<long>&)>& visit,
                                         EnumerationSlice slice) {
    if (slice.stride == 0 || slice.offset >= slice.stride) throw InvariantViolation("enumerate_ellipsoid: bad slice");
    const std::size_t n = gram.size();
    EllipsoidEnumeration stats;
    if (n == 0) {
        stats.points = 1;
        stats.stopped = !visit({});
        return stats;
    }
    if (bound < 0) return stats;

    // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    std::vector<std::vector<long double>> q = gram;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k) {
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
        }
        if (!(q[i][i] > 0)) {
            throw InvariantViolation("enumerate_ellipsoid: Gram matrix not positive definite at pivot " +
                                     std::to_string(i));
        }
    }

    std::vector<long> x(n, 0);
    std::vector<long double> remaining(n + 1, 0);  // bound left at level i
    std::vector<long double> shift(n, 0);          // center offset at level i
    std::vector<long> upper(n, 0);
    remaining[n] = bound;

    auto level_range = [&](std::size_t i) -> bool {
        long double s = 0;
        for (std::size_t j = i + 1; j < n; ++j) s += q[i][j] * (static_cast<long double>(x[j]) - center[j]);
        shift[i] = s;
        const long double r = remaining[i + 1];
        if (r < 0) return false;
        const long double half = std::sqrt(r / q[i][i]);
        const long double lo = std::ceil(-half - s + center[i] - 1e-12L);
        const long double hi = std::floor(half - s + center[i] + 1e-12L);
        if (lo > hi) return false;
        if (std::fabs(lo) > 9e15L || std::fabs(hi) > 9e15L) {
            throw CapExceeded("enumerate_ellipsoid: coordinate range overflows");
        }
        x[i] = static_cast<long>(lo);
        upper[i] = static_cast<long>(hi);
        return true;
    };

    // Subtrees below split_level are dealt out round-robin to the slices.
    const std::size_t split_level = n > slice.depth ? n - 1 - slice.depth : 0;
    std::uint64_t split_counter = 0;

    std::size_t i = n - 1;
    bool active = level_range(i);
    for (;;) {
        if (active) {
            if (++stats.nodes > node_cap) {
                throw CapExceeded("enumerate_ellipsoid: node cap " + std::to_string(node_cap) + " exceeded");
            }
            const long double t = static_cast<long double>(x[i]) - center[i] + shift[i];
            remaining[i] = remaining[i + 1] - q[i][i] * t * t;
            bool mine = true;
            if (slice.stride > 1 && i == split_level && remaining[i] >= -1e-9L * (1 + bound)) {
                mine = (split_counter++ % slice.stride) == slice.offset;
            }
            if (mine && remaining[i] >= -1e-9L * (1 + bound)) {
                if (i == 0) {
                    ++stats.points;
                    if (!visit(x)) {
                        stats.stopped = true;
                        return stats;
                    }
                } else {
                    --i;
                    active = level_range(i);
                    continue;
                }
            }
        }
        // advance
        for (;;) {
            if (active && x[i] < upper[i]) {
                ++x[i];
                break;
            }
            if (i + 1 == n) return stats;
            ++i;
            active = true;
        }
    }
}

EllipsoidEnumeration enumerate_ellipsoid_reduced(const std::vector<std::vector<long double>>& gram,
                                                 const std::vector<long double>& center, long double bound,
                                                 std::uint64_t node_cap,
                                                 const std::function<bool(const std::vector<long>&)>& visit,
                                                 EnumerationSlice slice) {
    const std::size_t n = gram.size();
    const LllReduction red = lll_reduce_gram(gram);
    // v = v' U, so the center in the reduced coordinates is center U^-1.
    std::vector<long double> c2(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) c2[j] += center[k] * static_cast<long double>(red.inverse[k][j]);
    }
    std::vector<long> v(n);
    return enumerate_ellipsoid(
        red.gram, c2, bound, node_cap,
        [&](const std::vector<long>& w) {
            for (std::size_t j = 0; j < n; ++j) {
                long acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc += w[k] * red.transform[k][j];
                v[j] = acc;
            }
            return visit(v);
        },
        slice);
}

LllReduction lll_reduce_gram(const std::vector<std::vector<long double>>& gram, long double delta) {
    const std::size_t n = gram.size();
    LllReduction r;
    r.gram = gram;
    r.transform.assign(n, std::vector<long>(n, 0));
    r.inverse.assign(n, std::vector<long>(n, 0));
    for (std::size_t k = 0; k < n; ++k) r.transform[k][k] = r.inverse[k][k] = 1;
    if (n < 2) return r;
    auto& G = r.gram;
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> bstar(n, 0);
    auto gram_schmidt = [&]() {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < k; ++j) {
                long double s = G[k][j];
                for (std::size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[k][l] * bstar[l];
                mu[k][j] = s / bstar[j];
            }
            long double s = G[k][k];
            for (std::size_t l = 0; l < k; ++l) s -= mu[k][l] * mu[k][l] * bstar[l];
            if (!(s > 0)) throw InvariantViolation("lll_reduce_gram: Gram matrix not positive definite");
            bstar[k] = s;
        }
    };
    // b_k <- b_k - q b_j
    auto subtract = [&](std::size_t k, std::size_t j, long q) {
        const long double qd = static_cast<long double>(q);
        for (std::size_t l = 0; l < n; ++l) G[k][l] -= qd * G[j][l];
        for (std::size_t l = 0; l < n; ++l) G[l][k] -= qd * G[l][j];
        for (std::size_t l = 0; l < n; ++l) {
            r.transform[k][l] -= q * r.transform[j][l];
            r.inverse[l][j] += q * r.inverse[l][k];
        }
    };
    auto swap = [&](std::size_t k) {
        std::swap(G[k], G[k - 1]);
        for (std::size_t l = 0; l < n; ++l) std::swap(G[l][k], G[l][k - 1]);
        std::swap(r.transform[k], r.transform[k - 1]);
        for (std::size_t l = 0; l < n; ++l) std::swap(r.inverse[l][k], r.inverse[l][k - 1]);
    };
    gram_schmidt();
    std::size_t k = 1;
    for (std::size_t iterations = 0; k < n; ++iterations) {
        if (iterations > 100000) throw CapExceeded("lll_reduce_gram: no convergence");
        for (std::size_t j = k; j-- > 0;) {
            const long double m = std::round(mu[k][j]);
            if (m != 0) {
                if (std::fabs(m) > 1e15L) throw CapExceeded("lll_reduce_gram: coefficient overflow");
                subtract(k, j, static_cast<long>(m));
                gram_schmidt();
            }
        }
        if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            ++k;
        } else {
            swap(k);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return r;
}

}  // namespace quatsys
