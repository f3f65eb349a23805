#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace quatsys {

// Fincke-Pohst enumeration of all integer vectors v with
//   (v - center)^T G (v - center) <= bound
// for a positive definite Gram matrix G. Points are visited in a fixed
// deterministic order. The visitor returns false to stop early.
//
// Floating point is used only for pruning; callers should pad `bound` and
// re-check candidates exactly. Throws CapExceeded after `node_cap` tree nodes,
// InvariantViolation if G is not numerically positive definite.

// Splits one enumeration across workers: the subtrees rooted `depth` levels
// below the outermost coordinate are numbered in visiting order, and a slice
// only descends into those congruent to offset mod stride.
struct EnumerationSlice {
    std::uint64_t stride = 1;
    std::uint64_t offset = 0;
    std::size_t depth = 2;
};

struct EllipsoidEnumeration {
    std::uint64_t nodes = 0;
    std::uint64_t points = 0;
    bool stopped = false;
};

EllipsoidEnumeration enumerate_ellipsoid(const std::vector<std::vector<long double>>& gram,
                                         const std::vector<long double>& center, long double bound,
                                         std::uint64_t node_cap,
                                         const std::function<bool(const std::vector<long>&)>& visit,
                                         EnumerationSlice slice = {});

// LLL reduction of a Gram matrix: gram' = U gram U^T with U unimodular.
struct LllReduction {
    std::vector<std::vector<long double>> gram;
    std::vector<std::vector<long>> transform;  // U
    std::vector<std::vector<long>> inverse;    // U^-1
};

LllReduction lll_reduce_gram(const std::vector<std::vector<long double>>& gram, long double delta = 0.99L);

// enumerate_ellipsoid on an LLL-reduced Gram matrix. Points are reported in
// the original coordinates; the visiting order is still deterministic.
EllipsoidEnumeration enumerate_ellipsoid_reduced(const std::vector<std::vector<long double>>& gram,
                                                 const std::vector<long double>& center, long double bound,
                                                 std::uint64_t node_cap,
                                                 const std::function<bool(const std::vector<long>&)>& visit,
                                                 EnumerationSlice slice = {});

}  // namespace quatsys
