#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quatsys/arith.hpp"

namespace quatsys {

using RatMatrix = std::vector<RatVector>;

// Row-style Hermite normal form.
//
// The rows of `rows` generate a lattice in Z^n. Returns a basis in echelon
// form: each row's first nonzero entry (its pivot) is positive, lies strictly
// right of the previous row's pivot, and the entries above each pivot are
// reduced into [0, pivot). Zero rows are dropped. For a full-rank lattice the
// result is square and upper triangular. The form is canonical, so two
// lattices are equal iff their HNFs are equal.
IntMatrix hermite_normal_form(IntMatrix rows);

// Column index of each row's pivot.
std::vector<std::size_t> pivot_columns(const IntMatrix& hnf);

// Reduces v modulo the lattice spanned by an HNF basis; the remainder is zero
// iff v lies in the lattice. For a full-rank square HNF the remainder has
// 0 <= r[k] < hnf[k][k].
IntVector reduce_mod_hnf(const IntMatrix& hnf, IntVector v);

bool hnf_contains(const IntMatrix& hnf, const IntVector& v);

// Integer coordinates c with c * hnf = v, if v is in the lattice.
std::optional<IntVector> hnf_solve(const IntMatrix& hnf, const IntVector& v);

// |det| of a square upper-triangular HNF.
Integer hnf_index(const IntMatrix& hnf);

// Lattice intersection via the kernel of [[A, A], [B, 0]].
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

Rational determinant(RatMatrix m);
Integer determinant(const IntMatrix& m);

// Solves x * m = rhs (row vector convention) for square invertible m.
std::optional<RatVector> solve_left(RatMatrix m, RatVector rhs);

// Rank of an integer matrix over F_p.
std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p);

}  // namespace quatsys
