#include "quatsys/torsion.hpp"

#include <cmath>
#include <sstream>

#include "quatsys/errors.hpp"
#include "quatsys/polynomial.hpp"

namespace quatsys {

namespace {

FieldElement evaluate_in(const NumberField& K, const IntPoly& f, const FieldElement& x) {
    FieldElement acc = K.zero();
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * x + K.from_rational(Rational(f[k]));
    return acc;
}

// Solves V c = r by Gaussian elimination with partial pivoting.
std::vector<long double> solve(std::vector<std::vector<long double>> V, std::vector<long double> r) {
    const std::size_t n = r.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i) {
            if (std::fabs(V[i][c]) > std::fabs(V[piv][c])) piv = i;
        }
        std::swap(V[c], V[piv]);
        std::swap(r[c], r[piv]);
        for (std::size_t i = c + 1; i < n; ++i) {
            const long double m = V[i][c] / V[c][c];
            for (std::size_t k = c; k < n; ++k) V[i][k] -= m * V[c][k];
            r[i] -= m * r[c];
        }
    }
    std::vector<long double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        long double s = r[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= V[i][k] * x[k];
        x[i] = s / V[i][i];
    }
    return x;
}

}  // namespace

std::vector<FieldElement> roots_in_field(const NumberField& K, const IntPoly& f) {
    std::vector<FieldElement> out;
    if (degree(f) < 1 || f.back() != 1) throw InputError("roots_in_field needs a monic polynomial");
    const std::size_t d = K.degree();
    if (d % static_cast<std::size_t>(degree(f)) != 0) return out;

    std::vector<long double> roots;
    for (auto [lo, hi] : isolate_real_roots(f)) {
        refine_root(f, lo, hi, Rational(1, Integer(1) << 80));
        roots.push_back(static_cast<long double>(Rational((lo + hi) / 2).get_d()));
    }
    if (roots.empty()) return out;
    std::vector<std::vector<long double>> V(d, std::vector<long double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t m = 0; m < d; ++m) V[i][m] = K.basis_embeddings()[i][m].mid();
    }
    // A root in K maps each place to some real root of f.
    std::vector<std::size_t> choice(d, 0);
    while (true) {
        std::vector<long double> r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = roots[choice[i]];
        const auto c = solve(V, r);
        RatVector coeffs;
        for (auto v : c) coeffs.push_back(Rational(static_cast<long>(std::llround(v))));
        const FieldElement alpha = K.element(coeffs);
        if (evaluate_in(K, f, alpha).is_zero() &&
            std::find(out.begin(), out.end(), alpha) == out.end()) {
            out.push_back(alpha);
        }
        std::size_t k = 0;
        while (k < d && ++choice[k] == roots.size()) choice[k++] = 0;
        if (k == d) break;
    }
    return out;
}

std::vector<unsigned> candidate_orders(const NumberField& K) {
    const unsigned limit = 2 * static_cast<unsigned>(K.degree());
    std::vector<unsigned> out;
    // phi(n) >= sqrt(n / 2), so n <= 2 limit^2 covers every n with phi(n) <= limit.
    for (unsigned n = 1; n <= 2 * limit * limit + 2; ++n) {
        if (euler_phi(n) > limit) continue;
        if (!roots_in_field(K, trace_polynomial(n)).empty()) out.push_back(n);
    }
    return out;
}

TorsionCertificate certify_torsion_free(const OrderLattice& Q, const Ideal& I) {
    if (I.is_unit_ideal()) throw InputError("torsion certificate needs a proper ideal");
    const NumberField& K = Q.field();
    TorsionCertificate cert{I, candidate_orders(K), {}, false, false, "", false};
    cert.principal = I.known_generator().has_value() || I.find_generator().has_value();
    const Ideal I2 = I * I;
    bool clean = true;
    for (unsigned n : cert.candidates) {
        if (n <= 2) continue;  // x = 1 or -1 is central
        for (const FieldElement& t : roots_in_field(K, trace_polynomial(n))) {
            TorsionObstruction ob{n, t, std::nullopt, 0, false};
            const FieldElement g = t - K.from_integer(2);
            ob.norm = abs(g.norm().get_num());
            if (ob.norm != 1) {
                ob.ideal = Ideal::principal(g);
                ob.divides = cert.principal ? I2.divides(*ob.ideal) : I.divides(*ob.ideal);
            }
            if (ob.divides && clean) {
                clean = false;
                cert.named_candidate = "n = " + std::to_string(n) + ", x + 1/x = " + t.to_string();
            }
            cert.obstructions.push_back(ob);
        }
    }
    cert.torsion_free = clean;
    const CongruenceLattice IQ(Q, I);
    cert.minus_one_in_gamma = in_gamma_I(IQ, -Q.algebra().one());
    return cert;
}

std::string TorsionCertificate::to_string() const {
    std::ostringstream os;
    os << "ideal: " << ideal.to_string() << " (norm " << quatsys::to_string(ideal.norm()) << ")\n";
    os << "candidate orders:";
    for (unsigned n : candidates) os << ' ' << n;
    os << "\ntest: " << (principal ? "I^2 | <x + 1/x - 2>" : "I | <x + 1/x - 2>") << '\n';
    for (const auto& ob : obstructions) {
        os << "  n = " << ob.n << ", x + 1/x = " << ob.trace.to_string() << ": ";
        if (!ob.ideal) {
            os << "unit\n";
        } else {
            os << "norm " << quatsys::to_string(ob.norm) << (ob.divides ? ", divisible" : ", not divisible") << '\n';
        }
    }
    os << "verdict: " << (torsion_free ? "torsion-free (no non-central torsion)" : "possibly torsion: " + named_candidate)
       << '\n';
    os << "-1 in Gamma(I): " << (minus_one_in_gamma ? "yes" : "no") << '\n';
    return os.str();
}

}  // namespace quatsys
