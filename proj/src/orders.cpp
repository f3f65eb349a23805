#include "quatsys/orders.hpp"

#include <algorithm>

#include "quatsys/errors.hpp"
#include "quatsys/linalg.hpp"

namespace quatsys {

namespace {

RatVector rational_coordinates(const QuatElement& x) {
    RatVector v;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& c = x[k].coeffs();
        v.insert(v.end(), c.begin(), c.end());
    }
    return v;
}

QuatElement from_rational_coordinates(const QuaternionAlgebra& D, const RatVector& v) {
    const NumberField& K = D.field();
    const std::size_t d = K.degree();
    std::array<FieldElement, 4> c{K.zero(), K.zero(), K.zero(), K.zero()};
    for (std::size_t k = 0; k < 4; ++k) {
        c[k] = K.element(RatVector(v.begin() + static_cast<long>(k * d), v.begin() + static_cast<long>((k + 1) * d)));
    }
    return QuatElement(D, c);
}

// HNF of the Z-span of a list of quaternions, with the least common denominator.
std::pair<Integer, IntMatrix> span(const std::vector<QuatElement>& elems) {
    Integer den = 1;
    std::vector<RatVector> coords;
    for (const auto& e : elems) {
        coords.push_back(rational_coordinates(e));
        for (const auto& c : coords.back()) den = lcm(den, c.get_den());
    }
    IntMatrix rows;
    for (const auto& v : coords) {
        IntVector r;
        for (const auto& c : v) {
            const Rational s = c * Rational(den);
            r.push_back(s.get_num());
        }
        rows.push_back(r);
    }
    IntMatrix h = hermite_normal_form(rows);
    // Reduce the denominator if every entry shares a factor with it.
    Integer g = den;
    for (const auto& r : h) {
        for (const auto& c : r) g = gcd(g, c);
    }
    if (g > 1) {
        for (auto& r : h) {
            for (auto& c : r) c /= g;
        }
        den /= g;
    }
    return {den, h};
}

std::vector<QuatElement> okspan_generators(const QuaternionAlgebra& D, const std::vector<QuatElement>& gens) {
    std::vector<QuatElement> out;
    const NumberField& K = D.field();
    FieldElement tk = K.one();
    for (std::size_t m = 0; m < K.degree(); ++m) {
        for (const auto& g : gens) out.push_back(tk * g);
        tk *= K.generator();
    }
    return out;
}

}  // namespace

OrderLattice::OrderLattice(QuaternionAlgebra D, Integer kappa, IntMatrix hnf, std::string name)
    : D_(std::move(D)), kappa_(std::move(kappa)), hnf_(std::move(hnf)), name_(std::move(name)) {
    const std::size_t n = 4 * D_.field().degree();
    if (hnf_.size() != n) throw InvariantViolation("order lattice has rank " + std::to_string(hnf_.size()) +
                                                   ", expected " + std::to_string(n));
    for (const auto& r : hnf_) basis_.push_back(from_coordinates(r));
}

OrderLattice OrderLattice::from_hnf(const QuaternionAlgebra& D, const Integer& kappa, IntMatrix hnf, std::string name) {
    if (kappa <= 0) throw InputError("kappa must be a positive integer");
    const std::size_t n = 4 * D.field().degree();
    for (const auto& r : hnf) {
        if (r.size() != n) throw InputError("order rows must have 4d = " + std::to_string(n) + " entries");
    }
    OrderLattice Q(D, kappa, hermite_normal_form(std::move(hnf)), std::move(name));
    Q.certify();
    return Q;
}

OrderLattice OrderLattice::generated_by(const QuaternionAlgebra& D, const std::vector<QuatElement>& gens, std::string name) {
    std::vector<QuatElement> start{D.one()};
    start.insert(start.end(), gens.begin(), gens.end());
    auto [den, h] = span(okspan_generators(D, start));
    for (int round = 0; round < 32; ++round) {
        std::vector<QuatElement> basis;
        for (const auto& r : h) {
            RatVector v;
            for (const auto& c : r) v.push_back(Rational(c) / Rational(den));
            for (auto& c : v) c.canonicalize();
            basis.push_back(from_rational_coordinates(D, v));
        }
        std::vector<QuatElement> all = basis;
        for (const auto& x : basis) {
            for (const auto& y : basis) all.push_back(x * y);
        }
        auto [den2, h2] = span(all);
        if (den2 == den && h2 == h) {
            OrderLattice Q(D, den, h, std::move(name));
            Q.certify();
            return Q;
        }
        den = den2;
        h = h2;
        if (h.size() != 4 * D.field().degree()) throw InputError("generators do not span D over K");
    }
    throw InputError("multiplicative closure did not stabilize: generators are not integral");
}

OrderLattice OrderLattice::standard(const QuaternionAlgebra& D) {
    const std::size_t n = 4 * D.field().degree();
    IntMatrix id(n, IntVector(n, 0));
    for (std::size_t k = 0; k < n; ++k) id[k][k] = 1;
    return from_hnf(D, 1, id, "standard");
}

OrderLattice OrderLattice::hurwitz(const QuaternionAlgebra& D) {
    const NumberField& K = D.field();
    if (!K.same_as(NumberField::heptagonal()) || D.a() != K.generator() || D.b() != K.generator()) {
        throw InputError("the Hurwitz order needs the algebra (eta, eta) over Q(eta)");
    }
    const FieldElement eta = K.generator();
    const FieldElement tau = K.one() + eta + eta * eta;
    const QuatElement jp = Rational(1, 2) * (D.one() + eta * D.i() + tau * D.j());
    return generated_by(D, {D.i(), D.j(), jp}, "hurwitz");
}

OrderLattice OrderLattice::hurwitz() { return hurwitz(QuaternionAlgebra::hurwitz()); }

std::optional<IntVector> OrderLattice::coordinates(const QuatElement& x) const {
    IntVector v;
    for (const auto& c : rational_coordinates(x)) {
        const Rational s = c * Rational(kappa_);
        if (!is_integral(s)) return std::nullopt;
        v.push_back(s.get_num());
    }
    return v;
}

QuatElement OrderLattice::from_coordinates(const IntVector& v) const {
    RatVector r;
    for (const auto& c : v) {
        Rational q(c, kappa_);
        q.canonicalize();
        r.push_back(q);
    }
    return from_rational_coordinates(D_, r);
}

bool OrderLattice::contains(const QuatElement& x) const {
    const auto v = coordinates(x);
    return v && hnf_contains(hnf_, *v);
}

bool OrderLattice::is_norm_one(const QuatElement& x) const {
    return contains(x) && x.reduced_norm() == field().one();
}

void OrderLattice::certify() const {
    if (!contains(D_.one())) throw InvariantViolation("order " + name_ + " does not contain 1");
    for (const auto& x : basis_) {
        for (const auto& y : basis_) {
            const QuatElement z = x * y;
            if (!contains(z)) {
                throw InvariantViolation("order " + name_ + " not closed: (" + x.to_string() + ") * (" +
                                         y.to_string() + ") = " + z.to_string());
            }
        }
        if (!contains(x.conj())) throw InvariantViolation("order " + name_ + " not closed under involution at " + x.to_string());
        if (!x.reduced_trace().is_integral() || !x.reduced_norm().is_integral()) {
            throw InvariantViolation("order " + name_ + " has non-integral trace or norm at " + x.to_string());
        }
    }
    const FieldElement q = (D_.field().from_integer(2) * D_.a() * D_.b()) / D_.field().from_integer(kappa_.get_si());
    if (!q.is_integral()) throw InvariantViolation("kappa = " + to_string(kappa_) + " does not divide 2ab");
    // kappa must be minimal for the basis.
    Integer den = 1;
    for (const auto& x : basis_) {
        for (const auto& c : rational_coordinates(x)) den = lcm(den, c.get_den());
    }
    if (den != kappa_) throw InvariantViolation("kappa " + to_string(kappa_) + " is not the least denominator " + to_string(den));
}

Integer OrderLattice::z_discriminant() const {
    if (disc_cache_) return *disc_cache_;
    const std::size_t n = basis_.size();
    IntMatrix gram(n, IntVector(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const Rational t = (basis_[a] * basis_[b]).reduced_trace().trace();
            if (!is_integral(t)) throw InvariantViolation("non-integral trace form on order basis");
            gram[a][b] = gram[b][a] = t.get_num();
        }
    }
    Integer det = determinant(gram);
    disc_cache_ = abs(det);
    return *disc_cache_;
}

Integer OrderLattice::maximal_discriminant(std::uint64_t node_cap) const {
    if (maximal_disc_cache_) return *maximal_disc_cache_;
    const NumberField& K = field();
    Integer nd = 1;
    const Ideal two_ab = Ideal::principal(K.from_integer(2) * D_.a() * D_.b());
    for (const auto& f : factor_ideal(two_ab)) {
        const auto st = D_.finite_prime_status(f.prime, node_cap);
        if (st.status == PlaceStatus::undecided) throw CapExceeded("ramification undecided at a prime above " + std::to_string(f.prime.p));
        if (st.status == PlaceStatus::ramified) nd *= f.prime.norm();
    }
    maximal_disc_cache_ = ipow(abs(K.discriminant()), 4) * nd * nd;
    return *maximal_disc_cache_;
}

bool OrderLattice::is_maximal() const { return z_discriminant() == maximal_discriminant(); }

std::vector<std::int64_t> OrderLattice::nonmaximal_rational_primes() const {
    const Integer ratio = z_discriminant() / maximal_discriminant();
    std::vector<std::int64_t> out;
    if (ratio == 1) return out;
    for (const auto& [p, e] : factor_integer(ratio)) {
        (void)e;
        out.push_back(p.get_si());
    }
    return out;
}

Integer OrderLattice::index_of(const OrderLattice& sub) const {
    if (!sub.algebra().same_as(D_)) throw InputError("orders in different algebras");
    for (const auto& x : sub.basis()) {
        if (!contains(x)) throw InputError("index_of: " + x.to_string() + " is not in " + name_);
    }
    // Work in coordinates scaled by lcm(kappa, kappa').
    const Integer L = lcm(kappa_, sub.kappa_);
    const std::size_t n = basis_.size();
    const Integer scale = ipow(L / kappa_, n);
    const Integer scale_sub = ipow(L / sub.kappa_, n);
    return (hnf_index(sub.hnf_) * scale_sub) / (hnf_index(hnf_) * scale);
}

bool involution_stable(const OrderLattice& Q) {
    return std::all_of(Q.basis().begin(), Q.basis().end(), [&](const QuatElement& w) { return Q.contains(w.conj()); });
}

// --- congruence lattices ----------------------------------------------------

CongruenceLattice::CongruenceLattice(const OrderLattice& Q, const Ideal& I) : Q_(Q), I_(I) {
    if (!I.field().same_as(Q.field())) throw InputError("ideal and order over different fields");
    IntMatrix rows;
    for (const auto& g : I.basis()) {
        for (const auto& e : Q.basis()) rows.push_back(*Q.coordinates(g * e));
    }
    hnf_ = hermite_normal_form(rows);
}

Integer CongruenceLattice::index() const { return hnf_index(hnf_) / hnf_index(Q_.hnf()); }

bool CongruenceLattice::contains(const QuatElement& x) const {
    const auto v = Q_.coordinates(x);
    return v && hnf_contains(hnf_, *v);
}

bool CongruenceLattice::contains_coordinates(const IntVector& v) const { return hnf_contains(hnf_, v); }

std::vector<QuatElement> CongruenceLattice::basis() const {
    std::vector<QuatElement> out;
    for (const auto& r : hnf_) out.push_back(Q_.from_coordinates(r));
    return out;
}

bool CongruenceLattice::certify_two_sided() const {
    for (const auto& z : basis()) {
        if (!contains(z.conj())) return false;
        for (const auto& e : Q_.basis()) {
            if (!contains(z * e) || !contains(e * z)) return false;
        }
    }
    return true;
}

bool in_gamma_I(const CongruenceLattice& IQ, const QuatElement& x) {
    const auto& Q = IQ.order();
    if (!Q.is_norm_one(x)) return false;
    return IQ.contains(x - Q.algebra().one());
}

FractionalIdeal y0_ideal(const OrderLattice& Q, const Ideal& I) {
    const NumberField& K = Q.field();
    const Ideal two = Ideal::principal(K.from_integer(2));
    const Ideal kI = Ideal::principal(K.from_integer(Q.kappa().get_si())) * I;
    return (two + kI).inverse() * (I * I);
}

ProofChainCheck check_gamma_element(const CongruenceLattice& IQ, const FractionalIdeal& where, const QuatElement& x) {
    ProofChainCheck out;
    const QuaternionAlgebra& D = IQ.order().algebra();
    const NumberField& K = D.field();
    const Ideal& I = IQ.ideal();
    const QuatElement z = x - D.one();
    out.trace_in_I = I.contains(z.reduced_trace());
    out.norm_in_I2 = (I * I).contains(z.reduced_norm());
    const FieldElement y0 = x[0] - K.one();
    out.norm_identity = Rational(2) * y0 == -z.reduced_norm();
    out.y0_membership = where.contains(y0);
    for (std::size_t place = 1; place < K.degree(); ++place) {
        const Interval s = K.embed_interval(x[0], place);
        if (!(s.lo > -1.0 && s.hi < 1.0)) {
            const RationalInterval r = K.embed(x[0], place, 200);
            if (!(r.lo > -1 && r.hi < 1)) out.conjugates_bounded = false;
        }
    }
    return out;
}

TraceNormReport verify_trace_norm(const CongruenceLattice& IQ, std::size_t samples, std::mt19937_64& rng) {
    TraceNormReport rep;
    const auto basis = IQ.hnf();
    const Ideal& I = IQ.ideal();
    const Ideal I2 = I * I;
    std::uniform_int_distribution<long> coef(-3, 3);
    for (std::size_t s = 0; s < samples; ++s) {
        IntVector v(basis[0].size(), 0);
        for (const auto& row : basis) {
            const long c = coef(rng);
            if (c == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] += row[k] * c;
        }
        const QuatElement z = IQ.order().from_coordinates(v);
        ++rep.samples;
        if (!I.contains(z.reduced_trace()) || !I2.contains(z.reduced_norm())) {
            ++rep.failures;
            if (rep.witnesses.size() < 5) rep.witnesses.push_back(z.to_string());
        }
    }
    return rep;
}

}  // namespace quatsys
