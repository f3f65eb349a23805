#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "quatsys/errors.hpp"
#include "quatsys/lattice_enum.hpp"

using namespace quatsys;

namespace {

using Mat = std::vector<std::vector<long double>>;

long double form(const Mat& g, const std::vector<long double>& c, const std::vector<long>& v) {
    long double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) s += g[i][j] * (v[i] - c[i]) * (v[j] - c[j]);
    }
    return s;
}

// Random positive definite Gram matrix A A^T from a skewed integer basis.
Mat random_gram(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> coef(-4, 4);
    Mat a(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = coef(rng);
        a[i][i] += 6;
    }
    Mat g(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) g[i][j] += a[i][k] * a[j][k];
        }
    }
    return g;
}

// Largest (G^-1)_ii, by Gauss-Jordan elimination.
long double max_inverse_diagonal(Mat m) {
    const std::size_t n = m.size();
    Mat inv(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        const long double p = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= p;
            inv[c][k] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            const long double f = m[i][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[i][k] -= f * m[c][k];
                inv[i][k] -= f * inv[c][k];
            }
        }
    }
    long double best = 0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, inv[i][i]);
    return best;
}

// Every vector in the box [-r, r]^n inside the ellipsoid.
std::set<std::vector<long>> brute_force(const Mat& g, const std::vector<long double>& c, long double bound, long r) {
    const std::size_t n = g.size();
    std::set<std::vector<long>> out;
    std::vector<long> v(n, -r);
    while (true) {
        if (form(g, c, v) <= bound) out.insert(v);
        std::size_t i = 0;
        while (i < n && v[i] == r) v[i++] = -r;
        if (i == n) break;
        ++v[i];
    }
    return out;
}

std::set<std::vector<long>> collect(const Mat& g, const std::vector<long double>& c, long double bound, bool reduced,
                                    EnumerationSlice slice = {}) {
    std::set<std::vector<long>> out;
    auto visit = [&](const std::vector<long>& v) {
        out.insert(v);
        return true;
    };
    if (reduced) {
        enumerate_ellipsoid_reduced(g, c, bound, 100000000, visit, slice);
    } else {
        enumerate_ellipsoid(g, c, bound, 100000000, visit, slice);
    }
    return out;
}

}  // namespace

TEST_CASE("ellipsoid enumeration matches a brute-force box search") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Mat g = random_gram(rng, n);
        std::vector<long double> c(n);
        for (auto& x : c) x = shift(rng);
        const long double bound = 40.0L + 10 * trial;
        // |v_i - c_i| <= sqrt(bound (G^-1)_ii) on the ellipsoid.
        const long r = 4 + static_cast<long>(std::sqrt(static_cast<double>(bound * max_inverse_diagonal(g))));
        const auto expected = brute_force(g, c, bound, r);
        CHECK(collect(g, c, bound, false) == expected);
        CHECK(collect(g, c, bound, true) == expected);
    }
}

TEST_CASE("slices partition the enumeration") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + trial % 4;
        const Mat g = random_gram(rng, n);
        const std::vector<long double> c(n, 0.25L);
        const long double bound = 200.0L;
        const auto whole = collect(g, c, bound, true);
        for (std::uint64_t stride : {2u, 3u, 5u}) {
            std::set<std::vector<long>> merged;
            std::size_t total = 0;
            for (std::uint64_t offset = 0; offset < stride; ++offset) {
                const auto part = collect(g, c, bound, true, EnumerationSlice{stride, offset, static_cast<std::size_t>(1 + trial % 3)});
                total += part.size();
                merged.insert(part.begin(), part.end());
            }
            CHECK(total == whole.size());
            CHECK(merged == whole);
        }
    }
}

TEST_CASE("LLL keeps the lattice and shortens the basis") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const Mat g = random_gram(rng, n);
        const LllReduction r = lll_reduce_gram(g);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                long double ug = 0;
                long id = 0;
                for (std::size_t k = 0; k < n; ++k) id += r.transform[i][k] * r.inverse[k][j];
                CHECK(id == (i == j ? 1 : 0));
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l < n; ++l) ug += r.transform[i][k] * g[k][l] * r.transform[j][l];
                }
                CHECK(std::fabs(static_cast<double>(ug - r.gram[i][j])) < 1e-6 * (1 + std::fabs(static_cast<double>(ug))));
            }
        }
        // The first reduced vector is within 2^((n-1)/2) of the shortest.
        long double shortest = r.gram[0][0];
        for (std::size_t i = 0; i < n; ++i) shortest = std::min(shortest, g[i][i]);
        CHECK(r.gram[0][0] <= std::pow(2.0L, static_cast<long double>(n - 1)) * shortest);
    }
}

TEST_CASE("enumeration errors") {
    const Mat g = {{1, 0}, {0, 1}};
    CHECK_THROWS_AS(enumerate_ellipsoid(g, {0, 0}, 1e6, 10, [](const std::vector<long>&) { return true; }), CapExceeded);
    const Mat bad = {{1, 2}, {2, 1}};
    CHECK_THROWS_AS(lll_reduce_gram(bad), InvariantViolation);
    std::size_t seen = 0;
    const auto stats = enumerate_ellipsoid(g, {0, 0}, 100, 100000, [&](const std::vector<long>&) { return ++seen < 5; });
    CHECK(stats.stopped);
    CHECK(seen == 5);
}
