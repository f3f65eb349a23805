#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quatsys/numfield.hpp"

namespace quatsys {

class QuatElement;

enum class PlaceStatus { split, ramified, undecided };

std::string to_string(PlaceStatus s);

struct LocalStatus {
    PlaceStatus status = PlaceStatus::undecided;
    // Primitive zero of the norm form mod P^level that passes the Hensel test.
    std::optional<std::array<IntVector, 4>> witness;
    unsigned level = 0;        // depth searched (P^level)
    unsigned hensel_level = 0;  // 2v + 1 for the witness
    std::uint64_t nodes = 0;
};

struct RamificationReport {
    std::int64_t norm_bound = 0;
    std::vector<std::size_t> ramified_real;
    std::vector<PrimeIdeal> ramified_finite;
    std::vector<PrimeIdeal> undecided_finite;
    std::size_t finite_primes_checked = 0;
    // Total number of ramified places is even. Only meaningful when nothing is
    // undecided; every prime dividing 2ab is always included in the scan.
    bool parity_consistent = false;
};

// D = (a, b)_K with i^2 = a, j^2 = b, ji = -ij; a, b nonzero algebraic integers.
class QuaternionAlgebra {
public:
    QuaternionAlgebra(FieldElement a, FieldElement b);

    // (eta, eta) over Q(eta).
    static QuaternionAlgebra hurwitz();

    const NumberField& field() const;
    const FieldElement& a() const;
    const FieldElement& b() const;

    QuatElement element(FieldElement x0, FieldElement x1, FieldElement x2, FieldElement x3) const;
    QuatElement zero() const;
    QuatElement one() const;
    QuatElement i() const;
    QuatElement j() const;
    QuatElement ij() const;
    QuatElement scalar(const FieldElement& c) const;

    PlaceStatus real_place_status(std::size_t place) const;

    // Isotropy of x0^2 - a x1^2 - b x2^2 + ab x3^2 over the completion at P,
    // decided by a depth-first search for primitive zeros mod P^n that satisfy
    // Hensel's condition. Returns undecided if more than `node_cap` search
    // nodes would be needed.
    LocalStatus finite_prime_status(const PrimeIdeal& P, std::uint64_t node_cap = 10000000) const;

    // If lambda is primitive at P and N(lambda) lies in P^(2v+1), where v is
    // the least valuation of the gradient 2 c_k lambda_k, returns 2v + 1.
    std::optional<unsigned> hensel_certificate(const PrimeIdeal& P, const std::array<IntVector, 4>& lambda) const;

    // Scans all primes of norm <= norm_bound and all primes dividing 2ab.
    RamificationReport ramification(std::int64_t norm_bound, std::uint64_t node_cap = 10000000) const;

    bool same_as(const QuaternionAlgebra& o) const;
    std::string to_string() const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

// x = x0 + x1 i + x2 j + x3 ij with coefficients in K.
class QuatElement {
public:
    QuatElement(QuaternionAlgebra algebra, std::array<FieldElement, 4> coeffs);

    const QuaternionAlgebra& algebra() const { return algebra_; }
    const std::array<FieldElement, 4>& coeffs() const { return c_; }
    const FieldElement& operator[](std::size_t k) const { return c_[k]; }

    QuatElement operator-() const;
    QuatElement& operator+=(const QuatElement& o);
    QuatElement& operator-=(const QuatElement& o);
    QuatElement operator*(const QuatElement& o) const;
    QuatElement operator+(const QuatElement& o) const { return QuatElement(*this) += o; }
    QuatElement operator-(const QuatElement& o) const { return QuatElement(*this) -= o; }

    QuatElement conj() const;
    FieldElement reduced_trace() const;
    FieldElement reduced_norm() const;
    bool is_central() const;
    bool is_zero() const;

    bool operator==(const QuatElement& o) const;
    bool operator!=(const QuatElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    QuaternionAlgebra algebra_;
    std::array<FieldElement, 4> c_;
};

QuatElement operator*(const FieldElement& s, const QuatElement& x);
QuatElement operator*(const Rational& s, const QuatElement& x);

}  // namespace quatsys
