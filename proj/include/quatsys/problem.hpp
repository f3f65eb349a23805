#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatsys/bounds.hpp"
#include "quatsys/orders.hpp"

namespace quatsys {

// A field, optionally with an algebra and an order, as read from a
// line-oriented file:
//
//   name: Q(eta)
//   minpoly: 1 1 -2 -1            (c_d ... c_0, monic)
//   quat: 0 1 0 | 0 1 0           (a and b over the power basis)
//   order: hurwitz                (or standard, or "k | row; row; ...")
//   covolume_over_pi: 1/21        (nu / pi of the order, for the bounds)
//
// Blank lines and text after '#' are ignored. Keys may appear in any order,
// but quat needs minpoly and order needs quat.
struct Problem {
    NumberField field;
    std::optional<QuaternionAlgebra> algebra;
    std::optional<OrderLattice> order;
    std::optional<Rational> covolume_over_pi;

    // Q(eta), (eta, eta), Q_Hur, nu = pi/21.
    static Problem hurwitz();

    const QuaternionAlgebra& require_algebra() const;
    const OrderLattice& require_order() const;
    // Throws InputError without a covolume.
    GeometryContext geometry(const Ideal& I) const;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

// "(r0, r1, ..., r_{d-1})" over the power basis, or a polynomial in the
// generator written with eta, t or theta, such as "2 - eta" or
// "1 + 3*eta + eta^2". Coefficients may be rationals p/q.
FieldElement parse_field_element(const NumberField& K, const std::string& text);

// Generators separated by ';'.
Ideal parse_ideal(const NumberField& K, const std::string& text);

}  // namespace quatsys
