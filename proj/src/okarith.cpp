#include "quatsys/okarith.hpp"

namespace quatsys {

OkArith::OkArith(const NumberField& K) : d_(K.degree()) {
    if (d_ > kMaxDegree) throw InputError("fields of degree above " + std::to_string(kMaxDegree) + " are not supported");
    for (const auto& p : K.power_table()) {
        std::array<std::int64_t, kMaxDegree> row{};
        for (std::size_t k = 0; k < d_; ++k) row[k] = to_int64(p[k]);
        power_.push_back(row);
    }
    for (std::size_t place = 0; place < d_; ++place) {
        std::array<double, kMaxDegree> row{};
        std::array<Interval, kMaxDegree> iv{};
        for (std::size_t k = 0; k < d_; ++k) {
            iv[k] = K.basis_embeddings()[place][k];
            row[k] = iv[k].mid();
        }
        basis_.push_back(row);
        basis_iv_.push_back(iv);
    }
}

IntElt OkArith::from(const IntVector& v) const {
    IntElt r{};
    for (std::size_t k = 0; k < d_; ++k) r[k] = to_int64(v[k]);
    return r;
}

IntVector OkArith::to_vector(const IntElt& x) const {
    IntVector v;
    for (std::size_t k = 0; k < d_; ++k) v.push_back(Integer(static_cast<long>(x[k])));
    return v;
}

FieldElement OkArith::to_element(const NumberField& K, const IntElt& x) const {
    RatVector v;
    for (std::size_t k = 0; k < d_; ++k) v.push_back(Rational(static_cast<long>(x[k])));
    return K.element(v);
}

Interval OkArith::embed_interval(const IntElt& x, std::size_t place) const {
    Interval s(0.0);
    for (std::size_t k = 0; k < d_; ++k) {
        if (x[k] != 0) s = s + Interval::from_rational(Rational(static_cast<long>(x[k]))) * basis_iv_[place][k];
    }
    return s;
}

std::string OkArith::to_string(const IntElt& x) const {
    std::string s = "(";
    for (std::size_t k = 0; k < d_; ++k) {
        if (k) s += ", ";
        s += std::to_string(x[k]);
    }
    return s + ")";
}

}  // namespace quatsys
