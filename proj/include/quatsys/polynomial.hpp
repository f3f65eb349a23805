#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quatsys/arith.hpp"

namespace quatsys {

// Integer polynomial, coefficients low to high. The zero polynomial is empty.
using IntPoly = IntVector;

// Polynomial over F_p, coefficients low to high, each in [0, p).
using PolyModP = std::vector<std::int64_t>;

int degree(const IntPoly& f);
void trim(IntPoly& f);
Rational evaluate(const IntPoly& f, const Rational& x);
IntPoly derivative(const IntPoly& f);
IntPoly multiply(const IntPoly& f, const IntPoly& g);

// Exact division by a monic divisor; nullopt-like: returns false if the
// remainder is nonzero.
bool divide_exact(const IntPoly& f, const IntPoly& monic_divisor, IntPoly& quotient);

Integer resultant(const IntPoly& f, const IntPoly& g);
Integer discriminant(const IntPoly& f);

// Isolating intervals (lo, hi] with rational end-points, one per real root,
// sorted ascending. `f` must be squarefree.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPoly& f);
int count_real_roots(const IntPoly& f);

// Bisects an isolating interval until hi - lo <= width.
void refine_root(const IntPoly& f, Rational& lo, Rational& hi, const Rational& width);

// --- F_p[t] ---------------------------------------------------------------

PolyModP reduce_mod_p(const IntPoly& f, std::int64_t p);
IntPoly lift(const PolyModP& f);
int degree(const PolyModP& f);

struct ModPFactor {
    PolyModP factor;  // monic irreducible
    unsigned multiplicity = 0;
};

// Complete factorization of a nonzero polynomial mod p into monic
// irreducibles, sorted by (degree, coefficients). Deterministic.
std::vector<ModPFactor> factor_mod_p(const IntPoly& f, std::int64_t p);

// Dedekind's criterion: true iff Z[t]/(f) is maximal at p.
bool dedekind_p_maximal(const IntPoly& f, std::int64_t p);

// n-th cyclotomic polynomial.
IntPoly cyclotomic_polynomial(unsigned n);

// Minimal polynomial of 2cos(2*pi/n) for n >= 3; t - 2 for n = 1, t + 2 for n = 2.
IntPoly trace_polynomial(unsigned n);

unsigned euler_phi(unsigned n);

}  // namespace quatsys
