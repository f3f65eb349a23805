#include "quatsys/quotient.hpp"

#include <algorithm>

#include "quatsys/errors.hpp"
#include "quatsys/linalg.hpp"

namespace quatsys {

namespace {

using Row = std::vector<std::int64_t>;
using Mat = std::vector<Row>;

Mat narrow(const IntMatrix& m) {
    Mat out;
    for (const auto& r : m) {
        Row row;
        for (const auto& v : r) row.push_back(to_int64(v));
        out.push_back(row);
    }
    return out;
}

IntMatrix widen(const Mat& m) {
    IntMatrix out;
    for (const auto& r : m) {
        IntVector row;
        for (auto v : r) row.push_back(Integer(static_cast<long>(v)));
        out.push_back(row);
    }
    return out;
}

// Reduces v against a square upper-triangular HNF so that entry k lies in
// [0, h[k][k]).
template <class T>
void reduce_rows(const Mat& h, std::vector<T>& v) {
    for (std::size_t r = 0; r < h.size(); ++r) {
        const T piv = h[r][r];
        if (v[r] >= 0 && v[r] < piv) continue;
        T q = v[r] / piv;
        if (v[r] % piv != 0 && v[r] < 0) --q;
        for (std::size_t k = r; k < h.size(); ++k) v[k] -= q * h[r][k];
    }
}

IntMatrix sublattice_in_basis(const OrderLattice& Q, const IntMatrix& sub_hnf) {
    IntMatrix rows;
    for (const auto& r : sub_hnf) {
        auto c = hnf_solve(Q.hnf(), r);
        if (!c) throw InvariantViolation("congruence lattice is not contained in the order");
        rows.push_back(*c);
    }
    return hermite_normal_form(rows);
}

Row solve_in_order(const OrderLattice& Q, const QuatElement& x) {
    const auto coords = Q.coordinates(x);
    if (!coords) throw InputError(x.to_string() + " is not in the order");
    const auto c = hnf_solve(Q.hnf(), *coords);
    if (!c) throw InputError(x.to_string() + " is not in the order");
    Row out;
    for (const auto& v : *c) out.push_back(to_int64(v));
    return out;
}

std::uint64_t to_u64(const Integer& v) { return static_cast<std::uint64_t>(to_int64(v)); }

}  // namespace

FiniteQuotRing::FiniteQuotRing(const OrderLattice& Q, const PrimeIdeal& P, unsigned t, std::uint64_t cap)
    : Q_(Q), P_(P), t_(t), p_(P.p), n_(Q.basis().size()), ok_(Q.field()) {
    if (t == 0) throw InputError("quotient exponent t must be >= 1");
    q_ = to_int64(P.norm());
    const Integer card = ipow(ipow(P.norm(), t), 4);
    if (card > Integer(static_cast<unsigned long>(cap))) {
        throw CapExceeded("|Q/P^tQ| = " + to_string(card) + " exceeds the cap " + std::to_string(cap));
    }
    const Ideal Pt = P.ideal.pow(t);
    hnf_ = narrow(sublattice_in_basis(Q, CongruenceLattice(Q, Pt).hnf()));
    hnf1_ = narrow(sublattice_in_basis(Q, CongruenceLattice(Q, P.ideal).hnf()));
    for (std::size_t k = 0; k < n_; ++k) {
        if (hnf1_[k][k] == p_) {
            free1_.push_back(k);
        } else if (hnf1_[k][k] != 1) {
            throw InvariantViolation("Q/PQ is not elementary abelian");
        }
    }
    stride_.assign(n_, 0);
    for (std::size_t k = n_; k-- > 0;) {
        stride_[k] = size_;
        size_ *= static_cast<std::uint64_t>(hnf_[k][k]);
    }
    if (Integer(static_cast<unsigned long>(size_)) != card) {
        throw InvariantViolation("|Q/P^tQ| = " + std::to_string(size_) + ", expected " + to_string(card));
    }

    const auto& basis = Q.basis();
    mult_.assign(n_, std::vector<Row>(n_));
    for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = 0; b < n_; ++b) mult_[a][b] = solve_in_order(Q, basis[a] * basis[b]);
        conj_.push_back(solve_in_order(Q, basis[a].conj()));
    }
    polar_.assign(n_, std::vector<IntElt>(n_));
    for (std::size_t a = 0; a < n_; ++a) {
        polar_[a][a] = ok_.from(basis[a].reduced_norm());
        for (std::size_t b = a + 1; b < n_; ++b) {
            polar_[a][b] = ok_.from((basis[a] * basis[b].conj()).reduced_trace());
        }
    }
    ideal_hnf_ = narrow(Pt.hnf());
    prime_hnf_ = narrow(P.ideal.hnf());
    for (std::size_t k = 0; k < ok_.degree(); ++k) residue_size_ *= static_cast<std::uint64_t>(ideal_hnf_[k][k]);
    {
        const IntElt u = ok_.one();
        Row v(u.begin(), u.begin() + static_cast<long>(ok_.degree()));
        reduce_rows(ideal_hnf_, v);
        std::copy(v.begin(), v.end(), one_residue_.begin());
    }
    one_ = from_quat(Q.algebra().one());
}

FiniteQuotRing::Elem FiniteQuotRing::element(std::uint64_t index) const {
    Elem x(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
        const auto h = static_cast<std::uint64_t>(hnf_[k][k]);
        if (h != 1) x[k] = static_cast<std::int64_t>((index / stride_[k]) % h);
    }
    return x;
}

std::uint64_t FiniteQuotRing::index(const Elem& x) const {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < n_; ++k) idx += static_cast<std::uint64_t>(x[k]) * stride_[k];
    return idx;
}

FiniteQuotRing::Elem FiniteQuotRing::reduce(std::vector<std::int64_t> v) const {
    reduce_rows(hnf_, v);
    return v;
}

FiniteQuotRing::Elem FiniteQuotRing::from_quat(const QuatElement& x) const {
    const auto coords = Q_.coordinates(x);
    if (!coords) throw InputError(x.to_string() + " is not in the order");
    const auto c = hnf_solve(Q_.hnf(), *coords);
    if (!c) throw InputError(x.to_string() + " is not in the order");
    const IntVector red = reduce_mod_hnf(widen(hnf_), *c);
    Elem v;
    for (const auto& e : red) v.push_back(to_int64(e));
    return v;
}

FiniteQuotRing::Elem FiniteQuotRing::add(const Elem& x, const Elem& y) const {
    Elem z(n_);
    for (std::size_t k = 0; k < n_; ++k) z[k] = x[k] + y[k];
    return reduce(std::move(z));
}

FiniteQuotRing::Elem FiniteQuotRing::sub(const Elem& x, const Elem& y) const {
    Elem z(n_);
    for (std::size_t k = 0; k < n_; ++k) z[k] = x[k] - y[k];
    return reduce(std::move(z));
}

FiniteQuotRing::Elem FiniteQuotRing::mul(const Elem& x, const Elem& y) const {
    std::vector<__int128> acc(n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
        if (x[a] == 0) continue;
        for (std::size_t b = 0; b < n_; ++b) {
            if (y[b] == 0) continue;
            const __int128 s = static_cast<__int128>(x[a]) * y[b];
            const Row& m = mult_[a][b];
            for (std::size_t k = 0; k < n_; ++k) {
                if (m[k] != 0) acc[k] += s * m[k];
            }
        }
    }
    reduce_rows(hnf_, acc);
    Elem z(n_);
    for (std::size_t k = 0; k < n_; ++k) z[k] = static_cast<std::int64_t>(acc[k]);
    return z;
}

FiniteQuotRing::Elem FiniteQuotRing::conj(const Elem& x) const {
    Row z(n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
        if (x[a] == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) z[k] += x[a] * conj_[a][k];
    }
    return reduce(std::move(z));
}

IntElt FiniteQuotRing::norm(const Elem& x) const {
    const std::size_t d = ok_.degree();
    std::vector<__int128> acc(d, 0);
    for (std::size_t a = 0; a < n_; ++a) {
        if (x[a] == 0) continue;
        for (std::size_t b = a; b < n_; ++b) {
            if (x[b] == 0) continue;
            const __int128 s = static_cast<__int128>(x[a]) * x[b];
            const IntElt& c = polar_[a][b];
            for (std::size_t k = 0; k < d; ++k) acc[k] += s * c[k];
        }
    }
    reduce_rows(ideal_hnf_, acc);
    IntElt out{};
    for (std::size_t k = 0; k < d; ++k) out[k] = static_cast<std::int64_t>(acc[k]);
    return out;
}

bool FiniteQuotRing::norm_is_one(const Elem& x) const { return norm(x) == one_residue_; }

bool FiniteQuotRing::norm_is_unit(const Elem& x) const {
    const IntElt r = norm(x);
    Row v(r.begin(), r.begin() + static_cast<long>(ok_.degree()));
    reduce_rows(prime_hnf_, v);
    return std::any_of(v.begin(), v.end(), [](std::int64_t c) { return c != 0; });
}

std::uint64_t FiniteQuotRing::residue_index(const IntElt& r) const {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < ok_.degree(); ++k) {
        idx = idx * static_cast<std::uint64_t>(ideal_hnf_[k][k]) + static_cast<std::uint64_t>(r[k]);
    }
    return idx;
}

std::vector<std::int64_t> FiniteQuotRing::mod_p_coordinates(const Elem& x) const {
    Row v = x;
    reduce_rows(hnf1_, v);
    Row out;
    for (std::size_t k : free1_) out.push_back(v[k]);
    return out;
}

std::uint64_t FiniteQuotRing::mod_p_index(const Elem& x) const {
    std::uint64_t idx = 0;
    for (auto c : mod_p_coordinates(x)) idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(c);
    return idx;
}

bool FiniteQuotRing::is_unit(const Elem& x) const {
    // Column c is x * e_{free1_[c]} in the free coordinates of Q / PQ.
    Mat m(free1_.size(), Row(free1_.size()));
    for (std::size_t c = 0; c < free1_.size(); ++c) {
        const std::size_t i = free1_[c];
        Row y(n_, 0);
        for (std::size_t a = 0; a < n_; ++a) {
            const std::int64_t xa = x[a] % p_;
            if (xa == 0) continue;
            for (std::size_t k = 0; k < n_; ++k) y[k] += xa * mult_[a][i][k];
        }
        const Row coords = mod_p_coordinates(y);
        for (std::size_t r = 0; r < coords.size(); ++r) m[r][c] = coords[r];
    }
    return rank_mod_p(m, p_) == free1_.size();
}

void FiniteQuotRing::self_check(std::size_t samples, std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> pick(0, size_ - 1);
    auto show = [](const Elem& x) {
        std::string s = "[";
        for (std::size_t k = 0; k < x.size(); ++k) s += (k ? " " : "") + std::to_string(x[k]);
        return s + "]";
    };
    const std::size_t d = ok_.degree();
    const QuaternionAlgebra& D = Q_.algebra();
    const NumberField& K = Q_.field();
    auto residue_of = [&](const IntVector& v) {
        const IntVector red = reduce_mod_hnf(widen(ideal_hnf_), v);
        IntElt out{};
        for (std::size_t k = 0; k < d; ++k) out[k] = to_int64(red[k]);
        return out;
    };
    for (std::size_t s = 0; s < samples; ++s) {
        const Elem x = element(pick(rng));
        const Elem y = element(pick(rng));
        const Elem z = element(pick(rng));
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) throw InvariantViolation("associativity fails at " + show(x));
        if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) {
            throw InvariantViolation("distributivity fails at " + show(x));
        }
        if (mul(one_, x) != x || mul(x, one_) != x) throw InvariantViolation("1 is not neutral at " + show(x));
        if (conj(mul(x, y)) != mul(conj(y), conj(x))) {
            throw InvariantViolation("involution is not anti-multiplicative at " + show(x));
        }
        const IntElt nx = norm(x);
        const IntElt ny = norm(y);
        const IntVector nxy = ok_multiply(K, ok_.to_element(K, nx).integer_coeffs(), ok_.to_element(K, ny).integer_coeffs());
        if (norm(mul(x, y)) != residue_of(nxy)) throw InvariantViolation("nu is not multiplicative at " + show(x));
        if (mul(x, conj(x)) != from_quat(D.scalar(ok_.to_element(K, nx)))) {
            throw InvariantViolation("x x^* != nu(x) at " + show(x));
        }
    }
    // nu(pi(x)) = pi0(N(x)) on random lifts from Q.
    std::uniform_int_distribution<long> coef(-50, 50);
    for (std::size_t s = 0; s < samples / 4 + 1; ++s) {
        IntVector coords(n_, 0);
        for (std::size_t r = 0; r < n_; ++r) {
            const long c = coef(rng);
            for (std::size_t k = 0; k < n_; ++k) coords[k] += c * Q_.hnf()[r][k];
        }
        const QuatElement x = Q_.from_coordinates(coords);
        if (norm(from_quat(x)) != residue_of(x.reduced_norm().integer_coeffs())) {
            throw InvariantViolation("nu(pi(x)) != pi0(N(x)) at " + x.to_string());
        }
    }
}

QuotientCounts count_quotient(const FiniteQuotRing& R) {
    QuotientCounts out;
    out.cardinality = R.cardinality();
    // Being a unit depends only on the residue mod PQ.
    const auto q = static_cast<std::uint64_t>(R.q());
    std::vector<signed char> unit_table(q * q * q * q, -1);
    std::vector<bool> image(R.residue_count(), false);
    for (std::uint64_t idx = 0; idx < R.cardinality(); ++idx) {
        const FiniteQuotRing::Elem x = R.element(idx);
        signed char& slot = unit_table[R.mod_p_index(x)];
        if (slot < 0) slot = R.is_unit(x) ? 1 : 0;
        const IntElt nx = R.norm(x);
        const bool unit = slot == 1;
        if (unit != R.norm_is_unit(x)) {
            throw InvariantViolation("unit test disagrees with nu(x) at residue " + std::to_string(idx));
        }
        if (!unit) continue;
        ++out.units;
        if (R.norm_is_one(x)) ++out.norm_one;
        image[R.residue_index(nx)] = true;
    }
    out.norm_image = static_cast<std::uint64_t>(std::count(image.begin(), image.end(), true));
    return out;
}

Integer norm_one_formula(const Integer& q, unsigned t, bool division_case) {
    const Integer base = ipow(q, 3 * t - 2);
    return division_case ? Integer(base * q * (q + 1)) : Integer(base * (q * q - 1));
}

namespace {

bool nilpotent(const FiniteQuotRing& R, FiniteQuotRing::Elem y, std::size_t dim) {
    const auto zero = R.zero();
    for (std::size_t power = 1; power < dim; power *= 2) {
        if (y == zero) return true;
        y = R.mul(y, y);
    }
    return y == zero;
}

}  // namespace

RadicalType radical_and_type(const FiniteQuotRing& R) {
    if (R.exponent() != 1) throw InputError("radical_and_type needs t = 1");
    const std::uint64_t size = R.cardinality();
    const std::int64_t p = R.p();
    std::size_t dim = 0;  // dimension of R over F_p
    for (std::uint64_t s = 1; s < size; s *= static_cast<std::uint64_t>(p)) ++dim;
    const std::size_t n = R.rank();
    const auto one = R.one();
    const std::uint64_t one_index = R.index(one);

    // x in J iff r x is nilpotent for every r.
    std::vector<bool> in_j(size, false);
    std::vector<FiniteQuotRing::Elem> basis;
    for (std::size_t a = 0; a < n; ++a) {
        FiniteQuotRing::Elem e(n, 0);
        e[a] = 1;
        basis.push_back(R.reduce(e));
    }
    for (std::uint64_t xi = 0; xi < size; ++xi) {
        const auto x = R.element(xi);
        bool member = nilpotent(R, x, dim);
        for (std::uint64_t ri = 0; member && ri < size; ++ri) {
            if (ri == one_index) continue;
            member = nilpotent(R, R.mul(R.element(ri), x), dim);
        }
        in_j[xi] = member;
    }

    RadicalType out;
    out.radical_size = static_cast<std::uint64_t>(std::count(in_j.begin(), in_j.end(), true));

    if (size < 10000) {
        std::vector<bool> unit(size);
        for (std::uint64_t i = 0; i < size; ++i) unit[i] = R.is_unit(R.element(i));
        for (std::uint64_t xi = 0; xi < size; ++xi) {
            const auto x = R.element(xi);
            bool member = true;
            for (std::uint64_t ri = 0; member && ri < size; ++ri) {
                member = unit[R.index(R.sub(one, R.mul(R.element(ri), x)))];
            }
            if (member != in_j[xi]) {
                throw InvariantViolation("radical definitions disagree at residue " + std::to_string(xi));
            }
        }
        out.cross_checked = true;
    }

    // Echelon basis of J over F_p, in the coordinates of the free positions.
    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < n; ++k) {
        if (R.element(size - 1)[k] != 0) free.push_back(k);
    }
    std::vector<FiniteQuotRing::Elem> jbasis;
    std::vector<std::size_t> pivots;
    auto inv_mod = [p](std::int64_t a) {
        std::int64_t r = 1;
        for (std::int64_t e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p) {
            if (e & 1) r = r * b % p;
        }
        return r;
    };
    for (std::uint64_t xi = 0; xi < size; ++xi) {
        if (!in_j[xi]) continue;
        auto v = R.element(xi);
        for (std::size_t b = 0; b < jbasis.size(); ++b) {
            const std::int64_t c = v[pivots[b]];
            if (c == 0) continue;
            for (std::size_t k = 0; k < n; ++k) v[k] = ((v[k] - c * jbasis[b][k]) % p + p) % p;
        }
        auto it = std::find_if(free.begin(), free.end(), [&](std::size_t k) { return v[k] != 0; });
        if (it == free.end()) continue;
        const std::int64_t s = inv_mod(v[*it]);
        for (auto& c : v) c = c * s % p;
        for (std::size_t b = 0; b < jbasis.size(); ++b) {
            const std::int64_t c = jbasis[b][*it];
            if (c == 0) continue;
            for (std::size_t k = 0; k < n; ++k) jbasis[b][k] = ((jbasis[b][k] - c * v[k]) % p + p) % p;
        }
        jbasis.push_back(v);
        pivots.push_back(*it);
    }
    std::uint64_t jsize = 1;
    for (std::size_t i = 0; i < jbasis.size(); ++i) jsize *= static_cast<std::uint64_t>(p);
    if (jsize != out.radical_size) throw InvariantViolation("radical is not an F_p subspace");

    // T = R / J is spanned by the free positions that are not pivots of J.
    std::vector<std::size_t> comp;
    for (std::size_t k : free) {
        if (std::find(pivots.begin(), pivots.end(), k) == pivots.end()) comp.push_back(k);
    }
    out.semisimple_size = size / jsize;
    std::vector<FiniteQuotRing::Elem> tbasis;
    for (std::size_t k : comp) {
        FiniteQuotRing::Elem e(n, 0);
        e[k] = 1;
        tbasis.push_back(e);
    }
    auto in_radical = [&](const FiniteQuotRing::Elem& v) { return in_j[R.index(v)]; };
    for (std::uint64_t ti = 0; ti < out.semisimple_size; ++ti) {
        FiniteQuotRing::Elem e(n, 0);
        std::uint64_t rest = ti;
        for (std::size_t k : comp) {
            e[k] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(p));
            rest /= static_cast<std::uint64_t>(p);
        }
        if (in_radical(R.sub(R.mul(e, e), e))) ++out.idempotents;
        bool central = true;
        for (const auto& b : tbasis) {
            if (!in_radical(R.sub(R.mul(e, b), R.mul(b, e)))) {
                central = false;
                break;
            }
        }
        if (central) ++out.center_size;
    }

    const std::uint64_t q = static_cast<std::uint64_t>(R.q());
    const std::uint64_t T = out.semisimple_size;
    if (T == q) {
        out.type = "F_q";
    } else if (T == q * q && out.idempotents == 2) {
        out.type = "F_q2";
    } else if (T == q * q && out.idempotents == 4) {
        out.type = "F_q x F_q";
    } else if (T == q * q * q && out.idempotents == 4) {
        out.type = "F_q x F_q2";
    } else if (T == q * q * q * q && out.center_size == q && out.idempotents == q * q + q + 2) {
        out.type = "M_2(F_q)";
    } else if (T == q * q * q * q && out.center_size == T && out.idempotents == 4) {
        out.type = "F_q2 x F_q2";
    } else {
        throw InvariantViolation("semisimple quotient of order " + std::to_string(T) + " with center " +
                                 std::to_string(out.center_size) + " and " + std::to_string(out.idempotents) +
                                 " idempotents is not on the list");
    }
    return out;
}

SquaresCount squares_count(const PrimeIdeal& P, unsigned t, std::uint64_t cap) {
    if (t == 0) throw InputError("t must be >= 1");
    const NumberField& K = P.ideal.field();
    const Ideal Pt = P.ideal.pow(t);
    if (Pt.norm() > Integer(static_cast<unsigned long>(cap))) {
        throw CapExceeded("|O_K/P^t| = " + to_string(Pt.norm()) + " exceeds the cap " + std::to_string(cap));
    }
    SquaresCount out;
    out.q = to_int64(P.norm());
    out.t = t;
    out.e = P.p == 2 ? P.ramification : 0;
    const Mat h = narrow(Pt.hnf());
    const Mat hp = narrow(P.ideal.hnf());
    const std::size_t d = K.degree();
    const OkArith ok(K);
    const std::uint64_t size = to_u64(Pt.norm());
    auto index_of = [&](const Row& v) {
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < d; ++k) idx = idx * static_cast<std::uint64_t>(h[k][k]) + static_cast<std::uint64_t>(v[k]);
        return idx;
    };
    std::vector<bool> seen(size, false);
    Row x(d, 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t k = d; k-- > 0;) {
            const auto hk = static_cast<std::uint64_t>(h[k][k]);
            x[k] = static_cast<std::int64_t>(rest % hk);
            rest /= hk;
        }
        Row r = x;
        reduce_rows(hp, r);
        if (std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; })) continue;
        ++out.units;
        IntElt a{};
        std::copy(x.begin(), x.end(), a.begin());
        const IntElt sq = ok.mul(a, a);
        Row s(sq.begin(), sq.begin() + static_cast<long>(d));
        reduce_rows(h, s);
        seen[index_of(s)] = true;
    }
    out.count = static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), true));
    const Integer q(static_cast<long>(out.q));
    if (out.e == 0) {
        out.formula = Rational(Integer((q - 1) * ipow(q, t - 1)), 2);
        out.equality_claimed = true;
    } else {
        out.formula = t >= out.e ? Rational(ipow(q, t - out.e), 2) : Rational(1, 2 * ipow(q, out.e - t));
        out.equality_claimed = t >= 2 * out.e + 1;
        if (out.equality_claimed) out.diadic_exact = Rational(Integer((q - 1) * ipow(q, t - out.e - 1)), 2);
    }
    out.formula.canonicalize();
    out.diadic_exact.canonicalize();
    const Rational c(Integer(static_cast<unsigned long>(out.count)));
    out.consistent = out.equality_claimed ? c == out.formula : c >= out.formula;
    return out;
}

LambdaFactor lambda_factor(const OrderLattice& Q, const Ideal& I, std::uint64_t node_cap) {
    LambdaFactor out;
    const auto excess = Q.is_maximal() ? std::vector<std::int64_t>{} : Q.nonmaximal_rational_primes();
    for (const auto& f : factor_ideal(I)) {
        const PrimeIdeal& P = f.prime;
        const bool nonmax = std::find(excess.begin(), excess.end(), P.p) != excess.end();
        const LocalStatus st = Q.algebra().finite_prime_status(P, node_cap);
        if (st.status == PlaceStatus::undecided) {
            throw CapExceeded("local status at " + P.ideal.to_string() + " is undecided within the node cap");
        }
        const Integer N = P.norm();
        if (st.status == PlaceStatus::ramified) out.ramified.push_back(P);
        if (nonmax) {
            out.nonmaximal.push_back(P);
            out.lambda *= 2;
            if (P.p == 2) out.lambda *= ipow(N, P.ramification);
        } else if (st.status == PlaceStatus::ramified) {
            out.lambda *= Rational(N + 1, N);
        }
    }
    return out;
}

Rational index_bound(const OrderLattice& Q, const Ideal& I) {
    return lambda_factor(Q, I).lambda * Rational(ipow(I.norm(), 3));
}

Integer unit_envelope(const Integer& q, bool division_case) {
    if (division_case) return q * (q - 1) * (q * q - 1);
    return q * q * (q - 1) * (q - 1);
}

Rational norm_one_envelope(const Integer& q, bool division_case, bool diadic, unsigned e) {
    const Rational inv(1, q);
    Rational r = division_case ? Rational(2 * (1 - inv * inv)) : Rational(2 * (1 - inv));
    if (diadic) r *= Rational(1 - inv) * Rational(ipow(q, e));
    return r;
}

CompositeCount composite_counts(const OrderLattice& Q, const Ideal& I, std::uint64_t cap) {
    CompositeCount out;
    out.factors = factor_ideal(I);
    for (const auto& f : out.factors) {
        const FiniteQuotRing R(Q, f.prime, f.exponent, cap);
        const QuotientCounts c = count_quotient(R);
        out.local.push_back(c);
        out.norm_one *= Integer(static_cast<unsigned long>(c.norm_one));
        out.units *= Integer(static_cast<unsigned long>(c.units));
    }
    return out;
}

}  // namespace quatsys
