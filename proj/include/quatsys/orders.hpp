#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quatsys/quatalg.hpp"

namespace quatsys {

// A Z-lattice of rank 4d in D that is a ring with 1. An element x is encoded
// by the integer coordinates of kappa * x: entry k*d + m is the theta^m
// coefficient of kappa * x_k.
class OrderLattice {
public:
    // Certifies: full rank, contains 1, closed under products of basis pairs,
    // closed under the involution, integral reduced trace and norm on the
    // basis, kappa | 2ab. Throws InvariantViolation with the witness.
    static OrderLattice from_hnf(const QuaternionAlgebra& D, const Integer& kappa, IntMatrix hnf,
                                 std::string name = "");

    // Smallest order containing O_K and the given elements.
    static OrderLattice generated_by(const QuaternionAlgebra& D, const std::vector<QuatElement>& gens,
                                     std::string name = "");

    static OrderLattice standard(const QuaternionAlgebra& D);
    // Z[eta][i, j, j'] in (eta, eta) over Q(eta), j' = (1 + eta i + tau j)/2.
    static OrderLattice hurwitz(const QuaternionAlgebra& D);
    static OrderLattice hurwitz();

    const QuaternionAlgebra& algebra() const { return D_; }
    const NumberField& field() const { return D_.field(); }
    const Integer& kappa() const { return kappa_; }
    const IntMatrix& hnf() const { return hnf_; }
    const std::vector<QuatElement>& basis() const { return basis_; }
    const std::string& name() const { return name_; }

    bool contains(const QuatElement& x) const;
    bool is_norm_one(const QuatElement& x) const;

    // Coordinates of kappa * x, or nullopt if not integral.
    std::optional<IntVector> coordinates(const QuatElement& x) const;
    QuatElement from_coordinates(const IntVector& v) const;

    // |disc| of the trace form Tr_{K/Q}(trd(e_i e_j)) on a Z-basis.
    Integer z_discriminant() const;
    // Value |disc(K)|^4 N(d)^2 that a maximal order would have, d the product
    // of the finite ramified primes (all of which divide 2ab).
    Integer maximal_discriminant(std::uint64_t node_cap = 10000000) const;
    // True iff z_discriminant() == maximal_discriminant().
    bool is_maximal() const;
    // Rational primes at which the order may fail to be maximal.
    std::vector<std::int64_t> nonmaximal_rational_primes() const;

    // [this : sub] for sub contained in this.
    Integer index_of(const OrderLattice& sub) const;

private:
    OrderLattice(QuaternionAlgebra D, Integer kappa, IntMatrix hnf, std::string name);
    void certify() const;

    QuaternionAlgebra D_;
    Integer kappa_;
    IntMatrix hnf_;
    std::vector<QuatElement> basis_;
    std::string name_;
    mutable std::optional<Integer> disc_cache_;
    mutable std::optional<Integer> maximal_disc_cache_;
};

// The two-sided ideal IQ as a sublattice of Q, same coordinates as Q.
class CongruenceLattice {
public:
    CongruenceLattice(const OrderLattice& Q, const Ideal& I);

    const OrderLattice& order() const { return Q_; }
    const Ideal& ideal() const { return I_; }
    const IntMatrix& hnf() const { return hnf_; }
    // |Q / IQ| = Norm(I)^4
    Integer index() const;

    bool contains(const QuatElement& x) const;
    bool contains_coordinates(const IntVector& v) const;
    std::vector<QuatElement> basis() const;
    // Closed under x -> x* and under left and right multiplication by Q.
    bool certify_two_sided() const;

private:
    OrderLattice Q_;
    Ideal I_;
    IntMatrix hnf_;
};

// x in Gamma(I): N(x) = 1, x in Q and x - 1 in IQ.
bool in_gamma_I(const CongruenceLattice& IQ, const QuatElement& x);

// (<2> + kappa I)^-1 I^2
FractionalIdeal y0_ideal(const OrderLattice& Q, const Ideal& I);

struct ProofChainCheck {
    bool trace_in_I = true;          // Tr(x - 1) in I
    bool norm_in_I2 = true;          // N(x - 1) in I^2
    bool norm_identity = true;        // 2 y0 = -N(x - 1), y0 = x0 - 1
    bool y0_membership = true;            // x0 - 1 in (<2> + kappa I)^-1 I^2
    bool conjugates_bounded = true;             // |sigma(x0)| < 1 at every non-trivial place
    bool ok() const { return trace_in_I && norm_in_I2 && norm_identity && y0_membership && conjugates_bounded; }
};

// Checks for x in Gamma(I), x != +-1.
ProofChainCheck check_gamma_element(const CongruenceLattice& IQ, const FractionalIdeal& where, const QuatElement& x);

struct TraceNormReport {
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;
};

// Random z in IQ: Tr(z) in I and N(z) in I^2.
TraceNormReport verify_trace_norm(const CongruenceLattice& IQ, std::size_t samples, std::mt19937_64& rng);

// w* in Q for each basis element w.
bool involution_stable(const OrderLattice& Q);

}  // namespace quatsys
