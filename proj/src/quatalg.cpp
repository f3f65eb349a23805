#include "quatsys/quatalg.hpp"

#include <algorithm>
#include <set>

#include "quatsys/errors.hpp"
#include "quatsys/linalg.hpp"

namespace quatsys {

std::string to_string(PlaceStatus s) {
    switch (s) {
        case PlaceStatus::split: return "split";
        case PlaceStatus::ramified: return "ramified";
        case PlaceStatus::undecided: return "undecided";
    }
    return "?";
}

struct QuaternionAlgebra::Data {
    NumberField K;
    FieldElement a;
    FieldElement b;
    std::array<IntVector, 4> form;  // 1, -a, -b, ab
};

QuaternionAlgebra::QuaternionAlgebra(FieldElement a, FieldElement b) {
    if (!a.field().same_as(b.field())) throw InputError("a and b lie in different fields");
    if (a.is_zero() || b.is_zero()) throw InputError("structure constants must be nonzero");
    if (!a.is_integral() || !b.is_integral()) throw InputError("structure constants must be algebraic integers");
    const NumberField K = a.field();
    const FieldElement ab = a * b;
    data_ = std::make_shared<const Data>(
        Data{K, a, b, {K.one().integer_coeffs(), (-a).integer_coeffs(), (-b).integer_coeffs(), ab.integer_coeffs()}});
}

QuaternionAlgebra QuaternionAlgebra::hurwitz() {
    const NumberField K = NumberField::heptagonal();
    return QuaternionAlgebra(K.generator(), K.generator());
}

const NumberField& QuaternionAlgebra::field() const { return data_->K; }
const FieldElement& QuaternionAlgebra::a() const { return data_->a; }
const FieldElement& QuaternionAlgebra::b() const { return data_->b; }

QuatElement QuaternionAlgebra::element(FieldElement x0, FieldElement x1, FieldElement x2, FieldElement x3) const {
    return QuatElement(*this, {std::move(x0), std::move(x1), std::move(x2), std::move(x3)});
}

QuatElement QuaternionAlgebra::zero() const {
    const auto z = field().zero();
    return element(z, z, z, z);
}
QuatElement QuaternionAlgebra::one() const { return scalar(field().one()); }
QuatElement QuaternionAlgebra::scalar(const FieldElement& c) const {
    const auto z = field().zero();
    return element(c, z, z, z);
}
QuatElement QuaternionAlgebra::i() const {
    const auto z = field().zero();
    return element(z, field().one(), z, z);
}
QuatElement QuaternionAlgebra::j() const {
    const auto z = field().zero();
    return element(z, z, field().one(), z);
}
QuatElement QuaternionAlgebra::ij() const {
    const auto z = field().zero();
    return element(z, z, z, field().one());
}

bool QuaternionAlgebra::same_as(const QuaternionAlgebra& o) const {
    return data_ == o.data_ || (field().same_as(o.field()) && a() == o.a() && b() == o.b());
}

std::string QuaternionAlgebra::to_string() const { return "(" + a().to_string() + ", " + b().to_string() + ")"; }

PlaceStatus QuaternionAlgebra::real_place_status(std::size_t place) const {
    if (place >= field().degree()) throw InputError("real place out of range");
    const int sa = a().sign_at(place);
    const int sb = b().sign_at(place);
    return (sa < 0 && sb < 0) ? PlaceStatus::ramified : PlaceStatus::split;
}

namespace {

// Residue arithmetic mod P^n for the isotropy search.
struct LocalContext {
    NumberField K;
    std::vector<IntMatrix> power_hnf;      // P^0 .. P^N
    std::vector<std::vector<IntVector>> digits;  // reps of P^n / P^(n+1), n < N

    unsigned val(const IntVector& x, unsigned cap) const {
        for (unsigned k = 1; k <= cap; ++k) {
            if (!hnf_contains(power_hnf[k], x)) return k - 1;
        }
        return cap;
    }
};

LocalContext make_context(const NumberField& K, const PrimeIdeal& P, unsigned depth) {
    LocalContext ctx{K, {}, {}};
    Ideal power = Ideal::unit(K);
    for (unsigned n = 0; n <= depth; ++n) {
        ctx.power_hnf.push_back(power.hnf());
        power = power * P.ideal;
    }
    for (unsigned n = 0; n < depth; ++n) {
        // Close {0} under adding basis rows of P^n, modulo P^(n+1).
        std::set<IntVector> seen;
        std::vector<IntVector> frontier{IntVector(K.degree(), 0)};
        seen.insert(frontier[0]);
        while (!frontier.empty()) {
            IntVector v = frontier.back();
            frontier.pop_back();
            for (const auto& row : ctx.power_hnf[n]) {
                IntVector w = v;
                for (std::size_t k = 0; k < w.size(); ++k) w[k] += row[k];
                w = reduce_mod_hnf(ctx.power_hnf[n + 1], w);
                if (seen.insert(w).second) frontier.push_back(w);
            }
        }
        if (Integer(static_cast<unsigned long>(seen.size())) != P.norm()) {
            throw InvariantViolation("residue digits of P^" + std::to_string(n) + " have wrong count");
        }
        ctx.digits.push_back(std::vector<IntVector>(seen.begin(), seen.end()));
    }
    return ctx;
}

IntVector form_value(const NumberField& K, const std::array<IntVector, 4>& c, const std::array<IntVector, 4>& x) {
    IntVector q(K.degree(), 0);
    for (std::size_t k = 0; k < 4; ++k) {
        const IntVector t = ok_multiply(K, c[k], ok_multiply(K, x[k], x[k]));
        for (std::size_t m = 0; m < q.size(); ++m) q[m] += t[m];
    }
    return q;
}

// v = min_k v_P(2 c_k x_k), capped at `cap`.
unsigned gradient_valuation(const LocalContext& ctx, const std::array<IntVector, 4>& c,
                            const std::array<IntVector, 4>& x, unsigned cap) {
    unsigned v = cap;
    for (std::size_t k = 0; k < 4; ++k) {
        IntVector g = ok_multiply(ctx.K, c[k], x[k]);
        for (auto& e : g) e *= 2;
        v = std::min(v, ctx.val(g, cap));
    }
    return v;
}

struct Search {
    const LocalContext& ctx;
    const std::array<IntVector, 4>& form;
    unsigned depth;
    std::uint64_t cap;
    std::size_t fixed = 0;  // coordinate normalized to 1
    LocalStatus result;
    bool capped = false;

    // x is a zero mod P^n; returns true once a witness is stored.
    bool visit(std::array<IntVector, 4>& x, unsigned n) {
        const unsigned v = gradient_valuation(ctx, form, x, n);
        if (2 * v + 1 <= n) {
            result.status = PlaceStatus::split;
            result.witness = x;
            result.hensel_level = 2 * v + 1;
            result.level = n;
            return true;
        }
        if (n == depth) return false;
        return lift(x, n, 0);
    }

    bool lift(std::array<IntVector, 4>& x, unsigned n, std::size_t coord) {
        if (coord == 4) {
            if (++result.nodes > cap) {
                capped = true;
                return false;
            }
            const IntVector q = form_value(ctx.K, form, x);
            if (!hnf_contains(ctx.power_hnf[n + 1], q)) return false;
            return visit(x, n + 1);
        }
        if (coord == fixed) return lift(x, n, coord + 1);
        const IntVector base = x[coord];
        for (const auto& dgt : ctx.digits[n]) {
            IntVector w = base;
            for (std::size_t k = 0; k < w.size(); ++k) w[k] += dgt[k];
            x[coord] = reduce_mod_hnf(ctx.power_hnf[n + 1], w);
            if (lift(x, n, coord + 1)) return true;
            if (capped) break;
        }
        x[coord] = base;
        return false;
    }
};

}  // namespace

LocalStatus QuaternionAlgebra::finite_prime_status(const PrimeIdeal& P, std::uint64_t node_cap) const {
    const NumberField& K = field();
    if (!P.ideal.field().same_as(K)) throw InputError("prime ideal belongs to a different field");
    const auto& form = data_->form;
    // Any primitive exact zero has gradient valuation <= e + v(ab).
    const PrimeIdeal& Pc = P;
    const IntVector two = K.from_integer(2).integer_coeffs();
    const unsigned e = valuation(two, Pc, 64);
    const unsigned vab = valuation(form[3], Pc, 64);
    const unsigned depth = 2 * (e + vab) + 1;
    const LocalContext ctx = make_context(K, P, depth);

    LocalStatus out;
    out.level = depth;
    for (std::size_t fixed = 0; fixed < 4; ++fixed) {
        // Level-1 residues: coordinates before `fixed` in P, x_fixed = 1.
        Search s{ctx, form, depth, node_cap > out.nodes ? node_cap - out.nodes : 0, fixed, {}, false};
        std::array<IntVector, 4> x;
        for (auto& c : x) c = IntVector(K.degree(), 0);
        x[fixed][0] = 1;
        // Coordinates after `fixed` range over all of O_K/P (digit set of P^0).
        std::vector<std::size_t> free_coords;
        for (std::size_t k = fixed + 1; k < 4; ++k) free_coords.push_back(k);
        bool found = false;
        std::vector<std::size_t> idx(free_coords.size(), 0);
        const std::size_t q = ctx.digits[0].size();
        for (;;) {
            for (std::size_t t = 0; t < free_coords.size(); ++t) x[free_coords[t]] = ctx.digits[0][idx[t]];
            if (++s.result.nodes > s.cap) {
                s.capped = true;
                break;
            }
            if (hnf_contains(ctx.power_hnf[1], form_value(K, form, x))) {
                std::array<IntVector, 4> y = x;
                if (s.visit(y, 1)) {
                    found = true;
                    break;
                }
                if (s.capped) break;
            }
            std::size_t t = 0;
            while (t < idx.size() && ++idx[t] == q) idx[t++] = 0;
            if (t == idx.size()) break;
        }
        out.nodes += s.result.nodes;
        if (found) {
            s.result.nodes = out.nodes;
            return s.result;
        }
        if (s.capped) {
            out.status = PlaceStatus::undecided;
            return out;
        }
    }
    out.status = PlaceStatus::ramified;
    return out;
}

std::optional<unsigned> QuaternionAlgebra::hensel_certificate(const PrimeIdeal& P,
                                                              const std::array<IntVector, 4>& lambda) const {
    const auto& form = data_->form;
    const NumberField& K = field();
    const bool primitive = std::any_of(lambda.begin(), lambda.end(), [&](const IntVector& x) { return !P.ideal.contains(x); });
    if (!primitive) return std::nullopt;
    unsigned v = 64;
    for (std::size_t k = 0; k < 4; ++k) {
        IntVector g = ok_multiply(K, form[k], lambda[k]);
        for (auto& c : g) c *= 2;
        v = std::min(v, valuation(g, P, 64));
    }
    const unsigned need = 2 * v + 1;
    if (valuation(form_value(K, form, lambda), P, need) < need) return std::nullopt;
    return need;
}

RamificationReport QuaternionAlgebra::ramification(std::int64_t norm_bound, std::uint64_t node_cap) const {
    const NumberField& K = field();
    RamificationReport rep;
    rep.norm_bound = norm_bound;
    for (std::size_t place = 0; place < K.degree(); ++place) {
        if (real_place_status(place) == PlaceStatus::ramified) rep.ramified_real.push_back(place);
    }
    std::vector<PrimeIdeal> primes = primes_up_to_norm(K, norm_bound);
    const Ideal two_ab = Ideal::principal(K.from_integer(2) * a() * b());
    for (const auto& f : factor_ideal(two_ab)) {
        const bool seen = std::any_of(primes.begin(), primes.end(), [&](const PrimeIdeal& p) { return p.ideal == f.prime.ideal; });
        if (!seen) primes.push_back(f.prime);
    }
    for (const auto& P : primes) {
        const LocalStatus st = finite_prime_status(P, node_cap);
        ++rep.finite_primes_checked;
        if (st.status == PlaceStatus::ramified) rep.ramified_finite.push_back(P);
        if (st.status == PlaceStatus::undecided) rep.undecided_finite.push_back(P);
    }
    rep.parity_consistent =
        rep.undecided_finite.empty() && (rep.ramified_real.size() + rep.ramified_finite.size()) % 2 == 0;
    return rep;
}

// --- QuatElement ------------------------------------------------------------

QuatElement::QuatElement(QuaternionAlgebra algebra, std::array<FieldElement, 4> coeffs)
    : algebra_(std::move(algebra)), c_(std::move(coeffs)) {
    for (const auto& c : c_) {
        if (!c.field().same_as(algebra_.field())) throw InputError("quaternion coefficient from a different field");
    }
}

QuatElement QuatElement::operator-() const {
    return QuatElement(algebra_, {-c_[0], -c_[1], -c_[2], -c_[3]});
}

QuatElement& QuatElement::operator+=(const QuatElement& o) {
    for (std::size_t k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
}

QuatElement& QuatElement::operator-=(const QuatElement& o) {
    for (std::size_t k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
}

QuatElement QuatElement::operator*(const QuatElement& o) const {
    if (!algebra_.same_as(o.algebra_)) throw InputError("quaternions from different algebras");
    const FieldElement& a = algebra_.a();
    const FieldElement& b = algebra_.b();
    const auto& x = c_;
    const auto& y = o.c_;
    FieldElement z0 = x[0] * y[0] + a * (x[1] * y[1]) + b * (x[2] * y[2]) - a * b * (x[3] * y[3]);
    FieldElement z1 = x[0] * y[1] + x[1] * y[0] - b * (x[2] * y[3]) + b * (x[3] * y[2]);
    FieldElement z2 = x[0] * y[2] + x[2] * y[0] + a * (x[1] * y[3]) - a * (x[3] * y[1]);
    FieldElement z3 = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    return QuatElement(algebra_, {z0, z1, z2, z3});
}

QuatElement QuatElement::conj() const { return QuatElement(algebra_, {c_[0], -c_[1], -c_[2], -c_[3]}); }

FieldElement QuatElement::reduced_trace() const { return Rational(2) * c_[0]; }

FieldElement QuatElement::reduced_norm() const {
    const FieldElement& a = algebra_.a();
    const FieldElement& b = algebra_.b();
    return c_[0] * c_[0] - a * (c_[1] * c_[1]) - b * (c_[2] * c_[2]) + a * b * (c_[3] * c_[3]);
}

bool QuatElement::is_central() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

bool QuatElement::is_zero() const { return is_central() && c_[0].is_zero(); }

bool QuatElement::operator==(const QuatElement& o) const { return algebra_.same_as(o.algebra_) && c_ == o.c_; }

std::string QuatElement::to_string() const {
    return c_[0].to_string() + " + " + c_[1].to_string() + "*i + " + c_[2].to_string() + "*j + " +
           c_[3].to_string() + "*ij";
}

QuatElement operator*(const FieldElement& s, const QuatElement& x) {
    const auto& c = x.coeffs();
    return QuatElement(x.algebra(), {s * c[0], s * c[1], s * c[2], s * c[3]});
}

QuatElement operator*(const Rational& s, const QuatElement& x) {
    const auto& c = x.coeffs();
    return QuatElement(x.algebra(), {s * c[0], s * c[1], s * c[2], s * c[3]});
}

}  // namespace quatsys
