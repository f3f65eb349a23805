#include "quatsys/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quatsys/errors.hpp"
#include "quatsys/lattice_enum.hpp"
#include "quatsys/linalg.hpp"

namespace quatsys {

namespace detail {

struct FieldData {
    IntPoly minpoly;
    std::string name;
    std::size_t d = 0;
    Integer disc;
    std::vector<IntVector> powers;
    std::vector<RationalInterval> roots;               // by place, width <= 2^-256
    std::vector<std::vector<Interval>> basis_embedding;  // [place][k]
};

}  // namespace detail

namespace {

constexpr unsigned kStoredRootBits = 256;

Rational pow2(int e) {
    Rational r = 1;
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
    }
    r.canonicalize();
    return r;
}

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Tries all subsets of roots of size k as candidate monic factors.
bool has_proper_factor(const IntPoly& m, const std::vector<Interval>& roots) {
    const std::size_t d = roots.size();
    for (std::size_t k = 1; k <= d / 2; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            // Coefficients of prod (t - r_i) as intervals.
            std::vector<Interval> poly{Interval(1.0)};
            for (std::size_t i : idx) {
                std::vector<Interval> next(poly.size() + 1, Interval(0.0));
                for (std::size_t j = 0; j < poly.size(); ++j) {
                    next[j + 1] = next[j + 1] + poly[j];
                    next[j] = next[j] - poly[j] * roots[i];
                }
                poly = std::move(next);
            }
            // poly is high-index = high degree. Enumerate integer points.
            bool feasible = true;
            IntPoly candidate(poly.size());
            for (std::size_t j = 0; j < poly.size() && feasible; ++j) {
                const double lo = std::ceil(poly[j].lo);
                const double hi = std::floor(poly[j].hi);
                if (lo > hi) feasible = false;
                else if (hi - lo >= 1.0) throw CapExceeded("irreducibility test: root precision insufficient");
                else candidate[j] = Integer(static_cast<long>(lo));
            }
            if (feasible) {
                IntPoly q;
                if (divide_exact(m, candidate, q)) return true;
            }
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == d - k + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return false;
}

// Enclosure of f(root) for f = sum c_k t^k, root in [lo, hi].
RationalInterval eval_enclosure(const RatVector& c, const Rational& lo, const Rational& hi) {
    const Rational mid = (lo + hi) / 2;
    Rational v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * mid + c[k];
    if (lo == hi) return {v, v};
    const Rational R = std::max(rabs(lo), rabs(hi));
    Rational M = 0;
    Rational rp = 1;
    for (std::size_t k = 1; k < c.size(); ++k) {
        M += rabs(c[k]) * Rational(static_cast<long>(k)) * rp;
        rp *= R;
    }
    const Rational rad = M * (hi - lo) / 2;
    return {v - rad, v + rad};
}

RatMatrix multiplication_matrix(const FieldElement& x) {
    const NumberField& K = x.field();
    const std::size_t d = K.degree();
    RatMatrix m;
    FieldElement row = x;
    const FieldElement t = K.generator();
    for (std::size_t i = 0; i < d; ++i) {
        m.push_back(row.coeffs());
        if (i + 1 < d) row *= t;
    }
    return m;
}

IntMatrix int_multiplication_matrix(const NumberField& K, const IntVector& x) {
    RatVector c(x.begin(), x.end());
    RatMatrix rm = multiplication_matrix(K.element(c));
    IntMatrix m(rm.size(), IntVector(rm.size()));
    for (std::size_t i = 0; i < rm.size(); ++i) {
        for (std::size_t j = 0; j < rm.size(); ++j) m[i][j] = rm[i][j].get_num();
    }
    return m;
}

void check_same(const NumberField& a, const NumberField& b) {
    if (!a.same_as(b)) throw InputError("elements belong to different fields");
}

// {v in Z^d : v * C in n Z^cols}
IntMatrix kernel_mod(const IntMatrix& c, const Integer& n) {
    const std::size_t d = c.size();
    const std::size_t cols = c[0].size();
    IntMatrix big;
    for (std::size_t i = 0; i < d; ++i) {
        IntVector row(cols + d, 0);
        for (std::size_t j = 0; j < cols; ++j) row[j] = c[i][j];
        row[cols + i] = 1;
        big.push_back(row);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        IntVector row(cols + d, 0);
        row[j] = n;
        big.push_back(row);
    }
    IntMatrix h = hermite_normal_form(big);
    IntMatrix out;
    for (const auto& row : h) {
        bool zero = true;
        for (std::size_t j = 0; j < cols && zero; ++j) zero = row[j] == 0;
        if (zero) out.emplace_back(row.begin() + static_cast<long>(cols), row.end());
    }
    return hermite_normal_form(out);
}

Integer content(const IntMatrix& m) {
    Integer g = 0;
    for (const auto& r : m) {
        for (const auto& v : r) g = gcd(g, v);
    }
    return g;
}

IntMatrix scaled(const IntMatrix& m, const Integer& num, const Integer& den) {
    IntMatrix out = m;
    for (auto& r : out) {
        for (auto& v : r) {
            v *= num;
            v /= den;
        }
    }
    return out;
}

}  // namespace

// --- NumberField ----------------------------------------------------------

NumberField::NumberField(IntPoly minpoly, std::string name, std::size_t distinguished) {
    trim(minpoly);
    const int deg = quatsys::degree(minpoly);
    if (deg < 1) throw InputError("minimal polynomial must have degree >= 1");
    if (minpoly.back() != 1) throw InputError("minimal polynomial must be monic");
    auto data = std::make_shared<detail::FieldData>();
    data->minpoly = minpoly;
    data->name = name;
    data->d = static_cast<std::size_t>(deg);
    const std::size_t d = data->d;
    if (distinguished >= d) throw InputError("distinguished place out of range");

    data->disc = quatsys::discriminant(minpoly);
    if (data->disc == 0) throw InputError("minimal polynomial is not squarefree");

    auto iso = isolate_real_roots(minpoly);
    if (iso.size() != d) {
        throw InputError("field is not totally real: " + std::to_string(iso.size()) + " of " +
                         std::to_string(d) + " roots are real");
    }
    const Rational width = pow2(-static_cast<int>(kStoredRootBits));
    for (auto& [lo, hi] : iso) refine_root(minpoly, lo, hi, width);
    std::reverse(iso.begin(), iso.end());  // descending
    std::vector<std::size_t> order{distinguished};
    for (std::size_t k = 0; k < d; ++k) {
        if (k != distinguished) order.push_back(k);
    }
    for (std::size_t k : order) data->roots.push_back({iso[k].first, iso[k].second});

    std::vector<Interval> root_iv;
    for (const auto& r : data->roots) root_iv.push_back(r.to_interval());
    if (d > 1 && has_proper_factor(minpoly, root_iv)) throw InputError("minimal polynomial is reducible");

    // Power basis must be the maximal order.
    for (const auto& [p, e] : factor_integer(abs(data->disc))) {
        if (e < 2) continue;
        if (!p.fits_slong_p()) throw CapExceeded("discriminant prime too large");
        if (!dedekind_p_maximal(minpoly, p.get_si())) {
            throw InputError("Z[t]/(m) is not maximal at p = " + to_string(p) +
                             "; only monogenic fields with power integral basis are supported");
        }
    }

    // theta^k mod m
    IntVector cur(d, 0);
    cur[0] = 1;
    for (std::size_t k = 0; k + 1 < 2 * d; ++k) {
        data->powers.push_back(cur);
        IntVector next(d, 0);
        for (std::size_t i = 0; i + 1 < d; ++i) next[i + 1] = cur[i];
        const Integer top = cur[d - 1];
        for (std::size_t i = 0; i < d; ++i) next[i] -= top * minpoly[i];
        cur = next;
    }

    for (std::size_t place = 0; place < d; ++place) {
        std::vector<Interval> row;
        for (std::size_t k = 0; k < d; ++k) {
            RatVector c(k + 1, 0);
            c[k] = 1;
            row.push_back(eval_enclosure(c, data->roots[place].lo, data->roots[place].hi).to_interval());
        }
        data->basis_embedding.push_back(row);
    }
    data_ = data;
}

NumberField NumberField::rationals() { return NumberField(IntPoly{0, 1}, "Q"); }

NumberField NumberField::heptagonal() { return NumberField(IntPoly{-1, -2, 1, 1}, "Q(eta)"); }

std::size_t NumberField::degree() const { return data_->d; }
const IntPoly& NumberField::minimal_polynomial() const { return data_->minpoly; }
const std::string& NumberField::name() const { return data_->name; }
const Integer& NumberField::discriminant() const { return data_->disc; }
const std::vector<IntVector>& NumberField::power_table() const { return data_->powers; }
const std::vector<std::vector<Interval>>& NumberField::basis_embeddings() const {
    return data_->basis_embedding;
}

const RationalInterval& NumberField::root(std::size_t place) const {
    if (place >= degree()) throw InputError("place out of range");
    return data_->roots[place];
}

bool NumberField::same_as(const NumberField& other) const {
    return data_ == other.data_ || data_->minpoly == other.data_->minpoly;
}

FieldElement NumberField::zero() const { return FieldElement(*this, RatVector(degree(), 0)); }
FieldElement NumberField::one() const { return from_integer(1); }
FieldElement NumberField::from_integer(long v) const { return from_rational(Rational(v)); }

FieldElement NumberField::from_rational(const Rational& v) const {
    RatVector c(degree(), 0);
    c[0] = v;
    return FieldElement(*this, c);
}

FieldElement NumberField::generator() const {
    RatVector c(degree(), 0);
    if (degree() == 1) {
        c[0] = -Rational(data_->minpoly[0]);
    } else {
        c[1] = 1;
    }
    return FieldElement(*this, c);
}

FieldElement NumberField::element(RatVector coeffs) const { return FieldElement(*this, std::move(coeffs)); }

FieldElement NumberField::element(std::initializer_list<long> coeffs) const {
    RatVector c;
    for (long v : coeffs) c.emplace_back(v);
    return FieldElement(*this, c);
}

RationalInterval NumberField::embed(const FieldElement& x, std::size_t place, unsigned bits) const {
    if (place >= degree()) throw InputError("embed: place " + std::to_string(place) + " out of range");
    if (bits < 1 || bits > 4096) throw InputError("embed: precision must be in [1, 4096] bits");
    check_same(*this, x.field());
    const Rational target = pow2(-static_cast<int>(bits));
    Rational lo = data_->roots[place].lo;
    Rational hi = data_->roots[place].hi;
    RationalInterval out = eval_enclosure(x.coeffs(), lo, hi);
    while (out.width() > target) {
        refine_root(data_->minpoly, lo, hi, (hi - lo) / 1024);
        out = eval_enclosure(x.coeffs(), lo, hi);
    }
    return out;
}

Interval NumberField::embed_interval(const FieldElement& x, std::size_t place) const {
    if (place >= degree()) throw InputError("embed: place out of range");
    Interval acc(0.0);
    const auto& row = data_->basis_embedding[place];
    for (std::size_t k = 0; k < degree(); ++k) {
        if (x[k] == 0) continue;
        acc = acc + Interval::from_rational(x[k]) * row[k];
    }
    return acc;
}

// --- FieldElement -----------------------------------------------------------

FieldElement::FieldElement(NumberField field, RatVector coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > field_.degree()) {
        throw InputError("element has " + std::to_string(coeffs_.size()) + " coefficients, field degree is " +
                         std::to_string(field_.degree()));
    }
    coeffs_.resize(field_.degree(), 0);
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return r == 0; });
}

bool FieldElement::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return quatsys::is_integral(r); });
}

bool FieldElement::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& r) { return r == 0; });
}

Integer FieldElement::denominator() const {
    Integer l = 1;
    for (const auto& c : coeffs_) l = lcm(l, c.get_den());
    return l;
}

IntVector FieldElement::integer_coeffs() const {
    if (!is_integral()) throw InvariantViolation("element " + to_string() + " is not integral");
    IntVector v;
    for (const auto& c : coeffs_) v.push_back(c.get_num());
    return v;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(field_, o.field_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(field_, o.field_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(field_, o.field_);
    const std::size_t d = coeffs_.size();
    RatVector conv(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) conv[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    const auto& pw = field_.power_table();
    RatVector out(d, 0);
    for (std::size_t j = 0; j < conv.size(); ++j) {
        if (conv[j] == 0) continue;
        for (std::size_t k = 0; k < d; ++k) {
            if (pw[j][k] != 0) out[k] += conv[j] * Rational(pw[j][k]);
        }
    }
    coeffs_ = std::move(out);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    RatVector e(coeffs_.size(), 0);
    e[0] = 1;
    auto sol = solve_left(multiplication_matrix(*this), e);
    if (!sol) throw InvariantViolation("multiplication matrix singular for nonzero " + to_string());
    return FieldElement(field_, *sol);
}

FieldElement FieldElement::pow(unsigned e) const {
    FieldElement result = field_.one();
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e > 0) base *= base;
    }
    return result;
}

Rational FieldElement::norm() const { return determinant(multiplication_matrix(*this)); }

Rational FieldElement::trace() const {
    const RatMatrix m = multiplication_matrix(*this);
    Rational t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

int FieldElement::sign_at(std::size_t place) const {
    if (is_zero()) return 0;
    const Interval quick = field_.embed_interval(*this, place);
    if (quick.certainly_positive()) return 1;
    if (quick.certainly_negative()) return -1;
    for (unsigned bits = 64; bits <= 4096; bits *= 2) {
        const RationalInterval r = field_.embed(*this, place, bits);
        if (r.lo > 0) return 1;
        if (r.hi < 0) return -1;
    }
    throw CapExceeded("sign_at: could not separate " + to_string() + " from zero");
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_.same_as(o.field_) && coeffs_ == o.coeffs_;
}

std::string FieldElement::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) s += ", ";
        s += quatsys::to_string(coeffs_[k]);
    }
    return s + ")";
}

FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

FieldElement operator*(const Rational& r, FieldElement a) {
    RatVector c = a.coeffs();
    for (auto& v : c) v *= r;
    return FieldElement(a.field(), c);
}

FieldElement operator+(FieldElement a, long v) { return a += a.field().from_integer(v); }
FieldElement operator-(FieldElement a, long v) { return a -= a.field().from_integer(v); }

// --- Ideal ------------------------------------------------------------------

Ideal::Ideal(NumberField K, IntMatrix hnf) : field_(std::move(K)), hnf_(std::move(hnf)) {
    if (hnf_.size() != field_.degree()) throw InputError("zero ideal (lattice rank deficient)");
    norm_ = hnf_index(hnf_);
}

Ideal Ideal::from_generators(const NumberField& K, const std::vector<FieldElement>& gens) {
    IntMatrix rows;
    for (const auto& g : gens) {
        check_same(K, g.field());
        if (!g.is_integral()) throw InputError("ideal generator " + g.to_string() + " is not integral");
        if (g.is_zero()) continue;
        const IntMatrix m = int_multiplication_matrix(K, g.integer_coeffs());
        rows.insert(rows.end(), m.begin(), m.end());
    }
    if (rows.empty()) throw InputError("zero ideal rejected");
    Ideal I(K, hermite_normal_form(rows));
    if (gens.size() == 1) I.generator_ = gens[0];
    return I;
}

Ideal Ideal::principal(const FieldElement& g) { return from_generators(g.field(), {g}); }

Ideal Ideal::unit(const NumberField& K) { return principal(K.one()); }

Ideal Ideal::from_hnf(const NumberField& K, IntMatrix hnf) {
    IntMatrix h = hermite_normal_form(std::move(hnf));
    if (h.size() != K.degree() || h[0].size() != K.degree()) throw InputError("ideal HNF must be d x d of full rank");
    for (const auto& row : h) {
        const IntMatrix m = int_multiplication_matrix(K, row);
        for (const auto& r : m) {
            if (!hnf_contains(h, r)) {
                throw InvariantViolation("lattice is not an ideal: not closed under multiplication by theta");
            }
        }
    }
    return Ideal(K, h);
}

bool Ideal::contains(const FieldElement& x) const {
    check_same(field_, x.field());
    return x.is_integral() && hnf_contains(hnf_, x.integer_coeffs());
}

bool Ideal::contains(const IntVector& coeffs) const { return hnf_contains(hnf_, coeffs); }

bool Ideal::divides(const Ideal& other) const {
    check_same(field_, other.field_);
    if (other.norm_ % norm_ != 0) return false;
    return std::all_of(other.hnf_.begin(), other.hnf_.end(), [&](const IntVector& r) { return hnf_contains(hnf_, r); });
}

Ideal Ideal::operator+(const Ideal& o) const {
    check_same(field_, o.field_);
    IntMatrix rows = hnf_;
    rows.insert(rows.end(), o.hnf_.begin(), o.hnf_.end());
    return Ideal(field_, hermite_normal_form(rows));
}

Ideal Ideal::operator*(const Ideal& o) const {
    check_same(field_, o.field_);
    IntMatrix rows;
    for (const auto& a : hnf_) {
        const FieldElement x = field_.element(RatVector(a.begin(), a.end()));
        for (const auto& b : o.hnf_) {
            const FieldElement y = field_.element(RatVector(b.begin(), b.end()));
            rows.push_back((x * y).integer_coeffs());
        }
    }
    Ideal out(field_, hermite_normal_form(rows));
    if (generator_ && o.generator_) out.generator_ = *generator_ * *o.generator_;
    return out;
}

Ideal Ideal::intersect(const Ideal& o) const {
    check_same(field_, o.field_);
    return Ideal(field_, lattice_intersection(hnf_, o.hnf_));
}

Ideal Ideal::pow(unsigned e) const {
    Ideal result = unit(field_);
    Ideal base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

FractionalIdeal Ideal::inverse() const {
    // I^-1 = (1/n) {v : v I subset n O_K} with n = Norm(I) in I.
    const std::size_t d = field_.degree();
    IntMatrix c(d, IntVector());
    for (const auto& b : hnf_) {
        const IntMatrix mb = int_multiplication_matrix(field_, b);
        for (std::size_t i = 0; i < d; ++i) c[i].insert(c[i].end(), mb[i].begin(), mb[i].end());
    }
    return FractionalIdeal(Ideal(field_, kernel_mod(c, norm_)), norm_);
}

std::vector<FieldElement> Ideal::basis() const {
    std::vector<FieldElement> out;
    for (const auto& r : hnf_) out.push_back(field_.element(RatVector(r.begin(), r.end())));
    return out;
}

std::optional<FieldElement> Ideal::find_generator(double max_t2_scale) const {
    if (generator_) return generator_;
    const std::size_t d = field_.degree();
    if (norm_ == 1) return field_.one();
    // Gram matrix of T2 = sum_places sigma(x)^2 in the HNF basis.
    const auto& emb = field_.basis_embeddings();
    std::vector<std::vector<long double>> rows(d, std::vector<long double>(d, 0));
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t place = 0; place < d; ++place) {
            long double s = 0;
            for (std::size_t k = 0; k < d; ++k) s += hnf_[r][k].get_d() * static_cast<long double>(emb[place][k].mid());
            rows[r][place] = s;
        }
    }
    std::vector<std::vector<long double>> gram(d, std::vector<long double>(d, 0));
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t p = 0; p < d; ++p) gram[a][b] += rows[a][p] * rows[b][p];
        }
    }
    const long double n = norm_.get_d();
    const long double base = static_cast<long double>(d) * std::pow(n, 2.0L / static_cast<long double>(d));
    std::optional<FieldElement> found;
    for (long double scale = 1.0L; scale <= max_t2_scale && !found; scale *= 2) {
        enumerate_ellipsoid(gram, std::vector<long double>(d, 0), base * scale * 1.0001L, 1000000,
                            [&](const std::vector<long>& v) {
                                IntVector x(d, 0);
                                for (std::size_t r = 0; r < d; ++r) {
                                    if (v[r] == 0) continue;
                                    for (std::size_t k = 0; k < d; ++k) x[k] += hnf_[r][k] * v[r];
                                }
                                const FieldElement e = field_.element(RatVector(x.begin(), x.end()));
                                if (e.is_zero()) return true;
                                const Rational nr = e.norm();
                                if (nr == Rational(norm_) || nr == Rational(-norm_)) {
                                    found = e;
                                    return false;
                                }
                                return true;
                            });
    }
    return found;
}

Ideal Ideal::with_generator(FieldElement g) const {
    if (Ideal::principal(g) != *this) throw InvariantViolation(g.to_string() + " does not generate " + to_string());
    Ideal out = *this;
    out.generator_ = std::move(g);
    return out;
}

std::string Ideal::to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < hnf_.size(); ++r) {
        if (r) s += "; ";
        for (std::size_t c = 0; c < hnf_[r].size(); ++c) {
            if (c) s += " ";
            s += quatsys::to_string(hnf_[r][c]);
        }
    }
    return s + "]";
}

// --- FractionalIdeal ----------------------------------------------------------

FractionalIdeal::FractionalIdeal(Ideal numerator, Integer denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (denominator_ <= 0) throw InputError("fractional ideal denominator must be positive");
    const Integer g = gcd(denominator_, content(numerator_.hnf()));
    if (g != 1) {
        numerator_ = Ideal::from_hnf(numerator_.field(), scaled(numerator_.hnf(), 1, g));
        denominator_ /= g;
    }
}

Rational FractionalIdeal::norm() const {
    return Rational(numerator_.norm()) / Rational(ipow(denominator_, numerator_.field().degree()));
}

bool FractionalIdeal::contains(const FieldElement& x) const {
    return numerator_.contains(Rational(denominator_) * x);
}

FractionalIdeal FractionalIdeal::operator*(const FractionalIdeal& o) const {
    return FractionalIdeal(numerator_ * o.numerator_, denominator_ * o.denominator_);
}

FractionalIdeal FractionalIdeal::operator*(const Ideal& o) const {
    return FractionalIdeal(numerator_ * o, denominator_);
}

FractionalIdeal FractionalIdeal::operator+(const FractionalIdeal& o) const {
    const NumberField& K = numerator_.field();
    const Ideal a = Ideal::from_hnf(K, scaled(numerator_.hnf(), o.denominator_, 1));
    const Ideal b = Ideal::from_hnf(K, scaled(o.numerator_.hnf(), denominator_, 1));
    return FractionalIdeal(a + b, denominator_ * o.denominator_);
}

FractionalIdeal FractionalIdeal::intersect(const FractionalIdeal& o) const {
    const NumberField& K = numerator_.field();
    const Ideal a = Ideal::from_hnf(K, scaled(numerator_.hnf(), o.denominator_, 1));
    const Ideal b = Ideal::from_hnf(K, scaled(o.numerator_.hnf(), denominator_, 1));
    return FractionalIdeal(a.intersect(b), denominator_ * o.denominator_);
}

std::string FractionalIdeal::to_string() const {
    if (denominator_ == 1) return numerator_.to_string();
    return "(1/" + quatsys::to_string(denominator_) + ")" + numerator_.to_string();
}

// --- prime factorization ---------------------------------------------------

std::vector<PrimeIdeal> factor_rational_prime(const NumberField& K, std::int64_t p) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    const IntPoly& m = K.minimal_polynomial();
    const Integer P(static_cast<long>(p));
    if (K.discriminant() % (P * P) == 0 && !dedekind_p_maximal(m, p)) {
        throw InputError("power basis is not p-maximal at p = " + std::to_string(p));
    }
    const std::size_t d = K.degree();
    std::vector<PrimeIdeal> out;
    const FieldElement theta = K.generator();
    const FieldElement pe = K.from_integer(p);
    for (const auto& fac : factor_mod_p(m, p)) {
        FieldElement g = K.zero();
        FieldElement tk = K.one();
        for (std::size_t k = 0; k < fac.factor.size(); ++k) {
            g += K.from_integer(fac.factor[k]) * tk;
            tk *= theta;
        }
        PrimeIdeal pr{Ideal::from_generators(K, {pe, g}), p, fac.multiplicity,
                      static_cast<unsigned>(degree(fac.factor)), fac.factor};
        if (pr.ideal.norm() != pr.norm()) {
            throw InvariantViolation("prime above " + std::to_string(p) + " has norm " + to_string(pr.ideal.norm()) +
                                     ", expected " + to_string(pr.norm()));
        }
        out.push_back(pr);
    }
    Ideal prod = Ideal::unit(K);
    unsigned sum = 0;
    for (const auto& pr : out) {
        prod = prod * pr.ideal.pow(pr.ramification);
        sum += pr.ramification * pr.residue_degree;
    }
    if (prod != Ideal::principal(pe) || sum != d) {
        throw InvariantViolation("Kummer-Dedekind factors of " + std::to_string(p) + " do not recombine");
    }
    return out;
}

std::vector<IdealFactor> factor_ideal(const Ideal& I) {
    std::vector<IdealFactor> out;
    const NumberField& K = I.field();
    Ideal rest = I;
    for (const auto& [p, e] : factor_integer(I.norm())) {
        (void)e;
        if (!p.fits_slong_p()) throw CapExceeded("ideal norm has a prime factor beyond 64 bits");
        for (const auto& pr : factor_rational_prime(K, p.get_si())) {
            unsigned k = 0;
            Ideal power = pr.ideal;
            while (power.divides(I)) {
                ++k;
                power = power * pr.ideal;
            }
            if (k > 0) out.push_back({pr, k});
        }
    }
    Ideal prod = Ideal::unit(K);
    for (const auto& f : out) prod = prod * f.prime.ideal.pow(f.exponent);
    if (prod != I) throw InvariantViolation("factorization of " + I.to_string() + " does not recombine");
    return out;
}

std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& K, std::int64_t bound) {
    std::vector<PrimeIdeal> out;
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (!is_prime(p)) continue;
        for (auto& pr : factor_rational_prime(K, p)) {
            if (pr.norm() <= bound) out.push_back(pr);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.norm() < b.norm(); });
    return out;
}

}  // namespace quatsys

namespace quatsys {

IntVector ok_multiply(const NumberField& K, const IntVector& x, const IntVector& y) {
    const std::size_t d = K.degree();
    IntVector conv(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) conv[i + j] += x[i] * y[j];
    }
    const auto& pw = K.power_table();
    IntVector out(conv.begin(), conv.begin() + static_cast<long>(d));
    for (std::size_t j = d; j < conv.size(); ++j) {
        if (conv[j] == 0) continue;
        for (std::size_t k = 0; k < d; ++k) out[k] += conv[j] * pw[j][k];
    }
    return out;
}

unsigned valuation(const IntVector& x, const PrimeIdeal& P, unsigned limit) {
    Ideal power = P.ideal;
    for (unsigned k = 0; k < limit; ++k) {
        if (!power.contains(x)) return k;
        power = power * P.ideal;
    }
    return limit;
}

}  // namespace quatsys
