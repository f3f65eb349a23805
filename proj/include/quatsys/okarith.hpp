#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quatsys/errors.hpp"
#include "quatsys/numfield.hpp"

namespace quatsys {

constexpr std::size_t kMaxDegree = 8;

// Algebraic integer in power-basis coordinates, machine-word version.
using IntElt = std::array<std::int64_t, kMaxDegree>;

// Fixed-width arithmetic in O_K for hot loops. Every operation checks for
// overflow and throws CapExceeded instead of wrapping.
class OkArith {
public:
    explicit OkArith(const NumberField& K);

    std::size_t degree() const { return d_; }

    IntElt zero() const { return IntElt{}; }
    IntElt one() const {
        IntElt r{};
        r[0] = 1;
        return r;
    }
    IntElt from_integer(std::int64_t v) const {
        IntElt r{};
        r[0] = v;
        return r;
    }
    IntElt from(const IntVector& v) const;
    IntElt from(const FieldElement& x) const { return from(x.integer_coeffs()); }
    IntVector to_vector(const IntElt& x) const;
    FieldElement to_element(const NumberField& K, const IntElt& x) const;

    IntElt add(const IntElt& x, const IntElt& y) const {
        IntElt r{};
        for (std::size_t k = 0; k < d_; ++k) r[k] = checked(static_cast<__int128>(x[k]) + y[k]);
        return r;
    }
    IntElt sub(const IntElt& x, const IntElt& y) const {
        IntElt r{};
        for (std::size_t k = 0; k < d_; ++k) r[k] = checked(static_cast<__int128>(x[k]) - y[k]);
        return r;
    }
    IntElt scale(const IntElt& x, std::int64_t s) const {
        IntElt r{};
        for (std::size_t k = 0; k < d_; ++k) r[k] = checked(static_cast<__int128>(x[k]) * s);
        return r;
    }
    IntElt mul(const IntElt& x, const IntElt& y) const {
        std::array<__int128, 2 * kMaxDegree> conv{};
        for (std::size_t i = 0; i < d_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < d_; ++j) conv[i + j] += static_cast<__int128>(x[i]) * y[j];
        }
        std::array<__int128, kMaxDegree> acc{};
        for (std::size_t k = 0; k < d_; ++k) acc[k] = conv[k];
        for (std::size_t j = d_; j + 1 < 2 * d_; ++j) {
            if (conv[j] == 0) continue;
            for (std::size_t k = 0; k < d_; ++k) acc[k] += conv[j] * power_[j][k];
        }
        IntElt r{};
        for (std::size_t k = 0; k < d_; ++k) r[k] = checked(acc[k]);
        return r;
    }
    bool is_zero(const IntElt& x) const {
        for (std::size_t k = 0; k < d_; ++k) {
            if (x[k] != 0) return false;
        }
        return true;
    }

    // Double-precision image at a real place (not certified).
    double embed(const IntElt& x, std::size_t place) const {
        double s = 0;
        for (std::size_t k = 0; k < d_; ++k) s += static_cast<double>(x[k]) * basis_[place][k];
        return s;
    }
    // Certified enclosure at a real place.
    Interval embed_interval(const IntElt& x, std::size_t place) const;

    std::string to_string(const IntElt& x) const;

private:
    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw CapExceeded("machine-word overflow in O_K arithmetic");
        return static_cast<std::int64_t>(v);
    }

    std::size_t d_;
    std::vector<std::array<std::int64_t, kMaxDegree>> power_;  // theta^j, j < 2d - 1
    std::vector<std::array<double, kMaxDegree>> basis_;        // [place][k]
    std::vector<std::array<Interval, kMaxDegree>> basis_iv_;
};

}  // namespace quatsys
