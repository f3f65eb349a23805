#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatsys/orders.hpp"

namespace quatsys {

// All roots of the integer polynomial f that lie in K, each found by solving
// for the conjugate vector and verified exactly.
std::vector<FieldElement> roots_in_field(const NumberField& K, const IntPoly& f);

// Orders n of roots of unity x with x + 1/x in K: phi(n) <= 2d and the
// minimal polynomial of 2cos(2 pi / n) has a root in K. Includes 1 and 2.
std::vector<unsigned> candidate_orders(const NumberField& K);

struct TorsionObstruction {
    unsigned n = 0;
    FieldElement trace;                 // x + 1/x
    std::optional<Ideal> ideal;         // <x + 1/x - 2>; empty when it is a unit
    Integer norm;                       // |Norm(x + 1/x - 2)|
    bool divides = false;               // I divides <x + 1/x - 2> (I^2 for principal I)
};

struct TorsionCertificate {
    Ideal ideal;
    std::vector<unsigned> candidates;
    std::vector<TorsionObstruction> obstructions;  // one per trace value, n >= 3
    bool principal = false;  // I = <g>, so the I^2 test applies
    bool torsion_free = false;
    std::string named_candidate;  // first obstruction that could not be ruled out
    // -1 in Gamma(I) is central torsion; it is reported, not certified away.
    bool minus_one_in_gamma = false;

    std::string to_string() const;
};

// Certifies that Gamma(I) has no non-central torsion. Throws InputError for
// I = O_K.
TorsionCertificate certify_torsion_free(const OrderLattice& Q, const Ideal& I);

}  // namespace quatsys
