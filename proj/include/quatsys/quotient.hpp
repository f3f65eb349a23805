#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quatsys/okarith.hpp"
#include "quatsys/orders.hpp"

namespace quatsys {

constexpr std::uint64_t kDefaultQuotientCap = 10000000;

// The finite ring Q / P^t Q. Residues are integer vectors over the Z-basis of
// Q, reduced modulo the HNF of P^t Q in that basis: entry k lies in
// [0, h_k) where h_k is the k-th diagonal entry.
class FiniteQuotRing {
public:
    using Elem = std::vector<std::int64_t>;

    // Throws CapExceeded when Norm(P^t)^4 exceeds `cap`.
    FiniteQuotRing(const OrderLattice& Q, const PrimeIdeal& P, unsigned t, std::uint64_t cap = kDefaultQuotientCap);

    const OrderLattice& order() const { return Q_; }
    const PrimeIdeal& prime() const { return P_; }
    unsigned exponent() const { return t_; }
    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    std::uint64_t cardinality() const { return size_; }
    std::size_t rank() const { return n_; }

    Elem zero() const { return Elem(n_, 0); }
    Elem one() const { return one_; }
    Elem element(std::uint64_t index) const;
    std::uint64_t index(const Elem& x) const;
    Elem reduce(std::vector<std::int64_t> v) const;
    Elem from_quat(const QuatElement& x) const;  // x must lie in Q

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem conj(const Elem& x) const;

    // nu(x) in O_K / P^t as a reduced coordinate vector.
    IntElt norm(const Elem& x) const;
    bool norm_is_one(const Elem& x) const;
    bool norm_is_unit(const Elem& x) const;
    std::uint64_t residue_index(const IntElt& r) const;  // index of a reduced O_K / P^t residue
    std::uint64_t residue_count() const { return residue_size_; }

    // Left multiplication by x is invertible on Q / PQ.
    bool is_unit(const Elem& x) const;
    // Index of the image of x in Q / PQ, in [0, q^4).
    std::uint64_t mod_p_index(const Elem& x) const;

    // Ring axioms, involution and nu(pi(x)) = pi0(N(x)) on random samples.
    // Throws InvariantViolation with the witness on failure.
    void self_check(std::size_t samples, std::mt19937_64& rng) const;

private:
    std::vector<std::int64_t> mod_p_coordinates(const Elem& x) const;

    OrderLattice Q_;
    PrimeIdeal P_;
    unsigned t_;
    std::int64_t p_;
    std::int64_t q_;
    std::size_t n_;
    std::uint64_t size_ = 1;
    std::vector<std::vector<std::int64_t>> hnf_;     // P^t Q in Q-basis coordinates
    std::vector<std::vector<std::int64_t>> hnf1_;    // P Q in Q-basis coordinates
    std::vector<std::size_t> free1_;                 // positions with diagonal p in hnf1_
    std::vector<std::uint64_t> stride_;
    std::vector<std::vector<std::vector<std::int64_t>>> mult_;  // e_a e_b = sum_k mult_[a][b][k] e_k
    std::vector<std::vector<std::int64_t>> conj_;                // e_a^* in Q-basis coordinates
    std::vector<std::vector<IntElt>> polar_;                     // N(e_a) on the diagonal, trd(e_a e_b^*) above
    OkArith ok_;
    std::vector<std::vector<std::int64_t>> ideal_hnf_;   // P^t in O_K coordinates
    std::vector<std::vector<std::int64_t>> prime_hnf_;   // P in O_K coordinates
    std::uint64_t residue_size_ = 1;
    IntElt one_residue_{};
    Elem one_;
};

struct QuotientCounts {
    std::uint64_t cardinality = 0;
    std::uint64_t units = 0;
    std::uint64_t norm_one = 0;
    std::uint64_t norm_image = 0;  // |nu(R^x)|
};

// Exhaustive pass over all residues. The unit test by left multiplication is
// cross-checked against "nu(x) is a unit" on every element.
QuotientCounts count_quotient(const FiniteQuotRing& R);

// q^(3t) (1 + 1/q) for division algebras, q^(3t) (1 - 1/q^2) otherwise.
Integer norm_one_formula(const Integer& q, unsigned t, bool division_case);

struct RadicalType {
    std::uint64_t radical_size = 0;
    std::uint64_t semisimple_size = 0;
    std::uint64_t center_size = 0;
    std::uint64_t idempotents = 0;
    std::string type;  // one of the six semisimple algebras
    bool cross_checked = false;  // unit-perturbation definition agreed
};

// Jacobson radical of Q / PQ (t must be 1) by the nil left ideal test, and
// the isomorphism type of the semisimple quotient. Rings with fewer than 10^4
// elements are cross-checked against x in J iff 1 - rx is a unit for all r.
RadicalType radical_and_type(const FiniteQuotRing& R);

struct SquaresCount {
    std::int64_t q = 0;
    unsigned t = 0;
    unsigned e = 0;          // v_P(2); 0 for odd primes
    std::uint64_t units = 0;
    std::uint64_t count = 0;  // |((O_K / P^t)^x)^2|
    Rational formula;         // (q-1)/2 q^(t-1), or 1/2 q^(t-e) for diadic P
    bool equality_claimed = false;
    bool consistent = false;  // count agrees with the claim (equality or lower bound)
    // Exact diadic value for t >= 2e+1: the kernel of squaring is
    // {x = +-1 mod P^(t-e)}, so the count is (q-1) q^(t-e-1) / 2.
    Rational diadic_exact;
};

SquaresCount squares_count(const PrimeIdeal& P, unsigned t, std::uint64_t cap = kDefaultQuotientCap);

struct LambdaFactor {
    std::vector<PrimeIdeal> ramified;     // T1, restricted to P | I
    std::vector<PrimeIdeal> nonmaximal;   // T2, restricted to P | I
    Rational lambda = 1;
};

// T2 is decided from the discriminant: empty when Q is maximal, otherwise
// every P | I over a rational prime dividing the excess discriminant.
LambdaFactor lambda_factor(const OrderLattice& Q, const Ideal& I, std::uint64_t node_cap = 10000000);

// lambda * Norm(I)^3
Rational index_bound(const OrderLattice& Q, const Ideal& I);

// Upper envelope for unit counts of Q / PQ in non-maximal orders.
Integer unit_envelope(const Integer& q, bool division_case);
// Envelope for |(Q / P^t Q)^1| / q^(3t) in non-maximal orders.
Rational norm_one_envelope(const Integer& q, bool division_case, bool diadic, unsigned e);

struct CompositeCount {
    std::vector<IdealFactor> factors;
    std::vector<QuotientCounts> local;
    Integer norm_one = 1;
    Integer units = 1;
};

// |(Q/IQ)^1| as the product over the prime-power factors of I.
CompositeCount composite_counts(const OrderLattice& Q, const Ideal& I, std::uint64_t cap = kDefaultQuotientCap);

}  // namespace quatsys
