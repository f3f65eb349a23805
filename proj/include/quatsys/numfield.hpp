#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quatsys/arith.hpp"
#include "quatsys/interval.hpp"
#include "quatsys/polynomial.hpp"

namespace quatsys {

class FieldElement;
class Ideal;
class FractionalIdeal;

struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Interval to_interval() const { return Interval::from_rational(lo, hi); }
};

namespace detail {
struct FieldData;
}

// A totally real number field K = Q[t]/(m) of degree d, with Z[t]/(m) as its
// ring of integers.
//
// Construction certifies that m is monic, irreducible and totally real, and
// that the power basis is an integral basis (Dedekind's criterion at every
// prime whose square divides disc(m)). Fields failing any check are rejected
// with InputError.
//
// Real places are ordered with the distinguished place first; the remaining
// roots follow in descending order. `distinguished` indexes the roots sorted
// descending, so the default 0 picks the largest root.
//
// NumberField is a cheap handle; copies share the same immutable data.
class NumberField {
public:
    explicit NumberField(IntPoly minpoly, std::string name = "", std::size_t distinguished = 0);

    static NumberField rationals();
    // Q(eta), eta = 2cos(2pi/7), minimal polynomial t^3 + t^2 - 2t - 1.
    static NumberField heptagonal();

    std::size_t degree() const;
    const IntPoly& minimal_polynomial() const;
    const std::string& name() const;
    const Integer& discriminant() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_integer(long v) const;
    FieldElement from_rational(const Rational& v) const;
    FieldElement generator() const;
    FieldElement element(RatVector coeffs) const;
    FieldElement element(std::initializer_list<long> coeffs) const;

    // theta^k reduced mod m, for k < 2d - 1.
    const std::vector<IntVector>& power_table() const;

    // Certified enclosure of sigma_place(x) of width at most 2^-bits.
    // Throws InputError for place >= d or bits outside [1, 4096].
    RationalInterval embed(const FieldElement& x, std::size_t place, unsigned bits) const;

    // Fast double enclosure (about 50 correct bits).
    Interval embed_interval(const FieldElement& x, std::size_t place) const;

    // sigma_place(theta^k) as certified double intervals, [place][k].
    const std::vector<std::vector<Interval>>& basis_embeddings() const;

    // Isolating interval of the root used for `place`.
    const RationalInterval& root(std::size_t place) const;

    bool same_as(const NumberField& other) const;

private:
    std::shared_ptr<const detail::FieldData> data_;
};

// An element of K as a vector of d rationals over the power basis.
class FieldElement {
public:
    FieldElement(NumberField field, RatVector coeffs);

    const NumberField& field() const { return field_; }
    const RatVector& coeffs() const { return coeffs_; }
    const Rational& operator[](std::size_t k) const { return coeffs_[k]; }

    bool is_zero() const;
    bool is_integral() const;
    bool is_rational() const;
    // Lowest common denominator of the coefficients.
    Integer denominator() const;
    IntVector integer_coeffs() const;  // throws InvariantViolation if not integral

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement inverse() const;
    FieldElement pow(unsigned e) const;

    Rational norm() const;
    Rational trace() const;
    // Certified sign at a real place (refines until decided); 0 only for x == 0.
    int sign_at(std::size_t place) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    NumberField field_;
    RatVector coeffs_;
};

FieldElement operator+(FieldElement a, const FieldElement& b);
FieldElement operator-(FieldElement a, const FieldElement& b);
FieldElement operator*(FieldElement a, const FieldElement& b);
FieldElement operator/(FieldElement a, const FieldElement& b);
FieldElement operator*(const Rational& r, FieldElement a);
FieldElement operator+(FieldElement a, long v);
FieldElement operator-(FieldElement a, long v);

// Nonzero integral ideal of O_K, stored as the row HNF of its Z-basis in
// power-basis coordinates.
class Ideal {
public:
    static Ideal from_generators(const NumberField& K, const std::vector<FieldElement>& gens);
    static Ideal principal(const FieldElement& g);
    static Ideal unit(const NumberField& K);
    // Validates closure under multiplication by theta; throws InvariantViolation.
    static Ideal from_hnf(const NumberField& K, IntMatrix hnf);

    const NumberField& field() const { return field_; }
    const IntMatrix& hnf() const { return hnf_; }
    const Integer& norm() const { return norm_; }
    bool is_unit_ideal() const { return norm_ == 1; }

    bool contains(const FieldElement& x) const;
    bool contains(const IntVector& coeffs) const;
    // this | other, i.e. other is contained in this.
    bool divides(const Ideal& other) const;

    Ideal operator+(const Ideal& o) const;
    Ideal operator*(const Ideal& o) const;
    Ideal intersect(const Ideal& o) const;
    Ideal pow(unsigned e) const;
    FractionalIdeal inverse() const;

    std::vector<FieldElement> basis() const;

    // Generator recorded at construction (principal ideals) or found by
    // find_generator.
    const std::optional<FieldElement>& known_generator() const { return generator_; }
    // Searches short vectors of the ideal lattice for an element of norm
    // +-Norm(I). Returns nullopt if none within the search budget.
    std::optional<FieldElement> find_generator(double max_t2_scale = 64.0) const;
    Ideal with_generator(FieldElement g) const;

    bool operator==(const Ideal& o) const { return hnf_ == o.hnf_; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    Ideal(NumberField K, IntMatrix hnf);

    NumberField field_;
    IntMatrix hnf_;
    Integer norm_;
    std::optional<FieldElement> generator_;
};

// Fractional ideal numerator / denominator, normalized so the denominator is
// the least positive integer clearing it.
class FractionalIdeal {
public:
    FractionalIdeal(Ideal numerator, Integer denominator);

    const Ideal& numerator() const { return numerator_; }
    const Integer& denominator() const { return denominator_; }
    Rational norm() const;

    bool contains(const FieldElement& x) const;
    FractionalIdeal operator*(const FractionalIdeal& o) const;
    FractionalIdeal operator*(const Ideal& o) const;
    FractionalIdeal operator+(const FractionalIdeal& o) const;
    FractionalIdeal intersect(const FractionalIdeal& o) const;

    bool operator==(const FractionalIdeal& o) const {
        return denominator_ == o.denominator_ && numerator_ == o.numerator_;
    }

    std::string to_string() const;

private:
    Ideal numerator_;
    Integer denominator_;
};

struct PrimeIdeal {
    Ideal ideal;
    std::int64_t p = 0;
    unsigned ramification = 0;    // e
    unsigned residue_degree = 0;  // f
    PolyModP factor;              // irreducible factor of m mod p
    Integer norm() const { return ipow(Integer(p), residue_degree); }
};

// Primes above p via Kummer-Dedekind. Throws InputError if Z[theta] is not
// p-maximal. Post-condition (checked): prod P_i^e_i == <p>.
std::vector<PrimeIdeal> factor_rational_prime(const NumberField& K, std::int64_t p);

struct IdealFactor {
    PrimeIdeal prime;
    unsigned exponent = 0;
};

std::vector<IdealFactor> factor_ideal(const Ideal& I);

// Product of two algebraic integers given by power-basis coordinates.
IntVector ok_multiply(const NumberField& K, const IntVector& x, const IntVector& y);

// Largest k <= limit with x in P^k (x nonzero, or limit returned for x = 0).
unsigned valuation(const IntVector& x, const PrimeIdeal& P, unsigned limit);

// All prime ideals with Norm <= bound, ordered by (norm, p, index).
std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& K, std::int64_t bound);

}  // namespace quatsys
