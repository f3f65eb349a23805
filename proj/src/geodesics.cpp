#include "quatsys/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "quatsys/errors.hpp"
#include "quatsys/lattice_enum.hpp"

namespace quatsys {

namespace {

using LD = long double;

// Floating-point data for pruning at each real place.
struct PlaceData {
    std::size_t d = 0;
    long kappa = 1;
    std::vector<std::vector<LD>> emb;   // emb[p][m] = sigma_p(theta^m)
    std::vector<std::vector<LD>> vinv;  // inverse of emb
    std::vector<LD> a, b;
    LD s = 0;  // sqrt(sigma_0(a))
};

std::vector<std::vector<LD>> invert(std::vector<std::vector<LD>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<LD>> inv(n, std::vector<LD>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i) {
            if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
        }
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        const LD p = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= p;
            inv[c][k] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            const LD f = m[i][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[i][k] -= f * m[c][k];
                inv[i][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

PlaceData place_data(const OrderLattice& Q) {
    const QuaternionAlgebra& D = Q.algebra();
    const NumberField& K = Q.field();
    const std::size_t d = K.degree();
    if (D.real_place_status(0) != PlaceStatus::split) throw InputError("the algebra must split at place 0");
    for (std::size_t p = 1; p < d; ++p) {
        if (D.real_place_status(p) != PlaceStatus::ramified) {
            throw InputError("the algebra must ramify at every real place other than place 0");
        }
    }
    if (D.a().sign_at(0) <= 0) throw InputError("the split embedding needs sigma_0(a) > 0");
    PlaceData pd;
    pd.d = d;
    pd.kappa = Q.kappa().get_si();
    pd.emb.assign(d, std::vector<LD>(d));
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t m = 0; m < d; ++m) pd.emb[p][m] = K.basis_embeddings()[p][m].mid();
        pd.a.push_back(K.embed_interval(D.a(), p).mid());
        pd.b.push_back(K.embed_interval(D.b(), p).mid());
    }
    pd.vinv = invert(pd.emb);
    pd.s = std::sqrt(pd.a[0]);
    return pd;
}

LD sigma(const PlaceData& pd, const long* w, std::size_t p) {
    LD v = 0;
    for (std::size_t m = 0; m < pd.d; ++m) v += static_cast<LD>(w[m]) * pd.emb[p][m];
    return v / static_cast<LD>(pd.kappa);
}

// Squared bounds on |sigma_p(x_k)| for coefficient k at every place.
std::vector<LD> coefficient_bounds(const PlaceData& pd, std::size_t k, LD C) {
    std::vector<LD> out(pd.d);
    const LD a0 = pd.a[0], b0 = pd.b[0];
    switch (k) {
        case 0: out[0] = C / 2; break;
        case 1: out[0] = C / (2 * a0); break;
        case 2: out[0] = C * (1 + b0 * b0) / (4 * b0 * b0); break;
        default: out[0] = C * (1 + b0 * b0) / (4 * b0 * b0 * a0); break;
    }
    for (std::size_t p = 1; p < pd.d; ++p) {
        const LD c[4] = {1, -pd.a[p], -pd.b[p], pd.a[p] * pd.b[p]};
        out[p] = 1 / std::fabs(c[k]);
    }
    return out;
}

Interval sigma0_interval(const FieldElement& x) { return x.field().embed_interval(x, 0); }

// cosh d(i, x i) = |x|_F^2 / 2 at the split place.
Interval displacement(const QuatElement& x) {
    const QuaternionAlgebra& D = x.algebra();
    const Interval s = sqrt(sigma0_interval(D.a()));
    const Interval b = sigma0_interval(D.b());
    const Interval x0 = sigma0_interval(x[0]), x1 = sigma0_interval(x[1]);
    const Interval x2 = sigma0_interval(x[2]), x3 = sigma0_interval(x[3]);
    const Interval f = sqr(x0 + s * x1) + sqr(x0 - s * x1) + sqr(x2 + s * x3) + sqr(b) * sqr(x2 - s * x3);
    Interval c = f / 2.0;
    c.lo = std::max(c.lo, 1.0);
    c.hi = std::max(c.hi, 1.0);
    return acosh(c);
}

// 2 arccosh(t / 2) for a trace known to exceed 2.
Interval length_of_trace(const Interval& t) {
    Interval half = t / 2.0;
    half.lo = std::max(half.lo, 1.0);
    return acosh(half) * 2.0;
}

struct Found {
    IntVector coords;
    QuatElement x;
};

}  // namespace

BoxBounds box_bounds(const OrderLattice& Q, double radius, std::uint64_t cap) {
    const PlaceData pd = place_data(Q);
    const LD C = 2 * std::cosh(static_cast<LD>(radius));
    BoxBounds out;
    out.radius = radius;
    const std::size_t d = pd.d;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto bound = coefficient_bounds(pd, k, C);
        // sum_p sigma_p(x_k)^2 / bound_p <= d contains the box.
        std::vector<std::vector<LD>> gram(d, std::vector<LD>(d, 0));
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t m = 0; m < d; ++m) {
                for (std::size_t n = 0; n < d; ++n) {
                    gram[m][n] += pd.emb[p][m] * pd.emb[p][n] / (bound[p] * pd.kappa * pd.kappa);
                }
            }
        }
        std::vector<IntVector> list;
        enumerate_ellipsoid(gram, std::vector<LD>(d, 0), static_cast<LD>(d) * (1 + 1e-9L), cap * 64,
                            [&](const std::vector<long>& w) {
                                for (std::size_t p = 0; p < d; ++p) {
                                    const LD v = sigma(pd, w.data(), p);
                                    if (v * v > bound[p] * (1 + 1e-9L) + 1e-12L) return true;
                                }
                                if (list.size() >= cap) throw CapExceeded("box_bounds: more than " + std::to_string(cap) + " candidates");
                                IntVector iv;
                                for (long c : w) iv.push_back(Integer(c));
                                list.push_back(iv);
                                return true;
                            });
        std::sort(list.begin(), list.end());
        out.coefficients[k] = list;
    }
    return out;
}

EnumerationOutput enumerate_gamma(const OrderLattice& Q, const Ideal& I, const EnumerationParams& params) {
    const PlaceData pd = place_data(Q);
    const std::size_t d = pd.d;
    const std::size_t n = 4 * d, n9 = 3 * d;
    const CongruenceLattice IQ(Q, I);
    const IntMatrix& H = IQ.hnf();
    if (H.size() != n) throw InvariantViolation("congruence lattice is not of full rank");
    std::vector<std::vector<long>> h(n, std::vector<long>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            h[r][c] = to_int64(H[r][c]);
            if (c < r && h[r][c] != 0) throw InvariantViolation("congruence lattice HNF is not upper triangular");
        }
    }
    const long kappa = pd.kappa;
    const LD C = 2 * std::cosh(static_cast<LD>(params.radius));
    // The split place contributes at most C and each ramified place at most
    // 1; scaling the split functionals by 1/sqrt(C) keeps the ellipsoid
    // volume growing like C^(3/2) rather than C^(3d/2).
    const LD bound = static_cast<LD>(d);
    const LD split_scale = 1 / std::sqrt(C);

    // Linear functionals on w = kappa (x0, x1, x2) whose squares sum to the
    // positive definite form of the search.
    std::vector<std::vector<LD>> funcs;
    auto functional = [&](std::size_t k, std::size_t p, LD weight) {
        std::vector<LD> f(n9, 0);
        for (std::size_t m = 0; m < d; ++m) f[k * d + m] = weight * pd.emb[p][m] / kappa;
        return f;
    };
    {
        auto f0 = functional(0, 0, split_scale), f1 = functional(1, 0, pd.s * split_scale);
        std::vector<LD> plus(n9), minus(n9);
        for (std::size_t i = 0; i < n9; ++i) {
            plus[i] = f0[i] + f1[i];
            minus[i] = f0[i] - f1[i];
        }
        funcs.push_back(plus);
        funcs.push_back(minus);
        const LD b0 = std::fabs(pd.b[0]);
        funcs.push_back(functional(2, 0, split_scale * 2 * b0 / std::sqrt(1 + b0 * b0)));
        for (std::size_t p = 1; p < d; ++p) {
            funcs.push_back(functional(0, p, 1));
            funcs.push_back(functional(1, p, std::sqrt(std::fabs(pd.a[p]))));
            funcs.push_back(functional(2, p, std::sqrt(std::fabs(pd.b[p]))));
        }
    }
    // Gram in the coordinates c of w = kappa e_0 + c B.
    std::vector<std::vector<LD>> fb(funcs.size(), std::vector<LD>(n9, 0));
    for (std::size_t f = 0; f < funcs.size(); ++f) {
        for (std::size_t r = 0; r < n9; ++r) {
            for (std::size_t c = 0; c < n9; ++c) fb[f][r] += funcs[f][c] * static_cast<LD>(h[r][c]);
        }
    }
    std::vector<std::vector<LD>> gram(n9, std::vector<LD>(n9, 0));
    for (std::size_t r = 0; r < n9; ++r) {
        for (std::size_t c = 0; c < n9; ++c) {
            for (const auto& f : fb) gram[r][c] += f[r] * f[c];
        }
    }
    std::vector<LD> center(n9, 0);
    for (std::size_t r = 0; r < n9; ++r) {
        LD target = (r == 0) ? -static_cast<LD>(kappa) : 0;
        for (std::size_t q = 0; q < r; ++q) target -= center[q] * static_cast<LD>(h[q][r]);
        center[r] = target / static_cast<LD>(h[r][r]);
    }

    const QuatElement one = Q.algebra().one();
    const unsigned jobs = std::max(1u, params.jobs);
    std::vector<std::vector<Found>> found(jobs);
    std::vector<EllipsoidEnumeration> stats(jobs);
    std::vector<std::uint64_t> reached(jobs, 0), solved(jobs, 0);
    std::vector<std::exception_ptr> errors(jobs);

    auto worker = [&](unsigned job) {
        try {
            std::vector<long> w(n9), o3(d), w3(d);
            std::vector<LD> x0(d), x1(d), x2(d), r(d), target(d);
            std::set<std::vector<long>> seen;
            auto visit = [&](const std::vector<long>& c) {
                for (std::size_t k = 0; k < n9; ++k) w[k] = (k == 0) ? kappa : 0;
                std::fill(o3.begin(), o3.end(), 0);
                for (std::size_t q = 0; q < n9; ++q) {
                    if (c[q] == 0) continue;
                    for (std::size_t k = q; k < n9; ++k) w[k] += c[q] * h[q][k];
                    for (std::size_t m = 0; m < d; ++m) o3[m] += c[q] * h[q][n9 + m];
                }
                for (std::size_t p = 0; p < d; ++p) {
                    x0[p] = sigma(pd, &w[0], p);
                    x1[p] = sigma(pd, &w[d], p);
                    x2[p] = sigma(pd, &w[2 * d], p);
                }
                const LD slack = 1e-9L;
                if (2 * x0[0] * x0[0] + 2 * pd.a[0] * x1[0] * x1[0] > C * (1 + slack)) return true;
                for (std::size_t p = 1; p < d; ++p) {
                    const LD q = x0[p] * x0[p] - pd.a[p] * x1[p] * x1[p] - pd.b[p] * x2[p] * x2[p];
                    if (q > 1 + slack) return true;
                }
                ++reached[job];
                // x3^2 = (1 - x0^2 + a x1^2 + b x2^2) / (ab) at every place.
                for (std::size_t p = 0; p < d; ++p) {
                    const LD ab = pd.a[p] * pd.b[p];
                    r[p] = (1 - x0[p] * x0[p] + pd.a[p] * x1[p] * x1[p] + pd.b[p] * x2[p] * x2[p]) / ab;
                    if (r[p] < -1e-9L * (1 + std::fabs(x0[p] * x0[p]) / std::fabs(ab))) return true;
                    r[p] = std::sqrt(std::max(r[p], LD(0)));
                }
                seen.clear();
                for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << d); ++signs) {
                    for (std::size_t p = 0; p < d; ++p) target[p] = ((signs >> p) & 1) ? -r[p] : r[p];
                    bool integral = true;
                    for (std::size_t m = 0; m < d && integral; ++m) {
                        LD v = 0;
                        for (std::size_t p = 0; p < d; ++p) v += pd.vinv[m][p] * target[p];
                        v *= kappa;
                        const LD rv = std::round(v);
                        if (std::fabs(v - rv) > 1e-6L * (1 + std::fabs(v))) integral = false;
                        w3[m] = static_cast<long>(rv);
                    }
                    if (!integral || !seen.insert(w3).second) continue;
                    // w3 - o3 must lie in the span of the last d rows.
                    std::vector<long> u(d);
                    for (std::size_t m = 0; m < d; ++m) u[m] = w3[m] - o3[m];
                    bool member = true;
                    for (std::size_t m = 0; m < d && member; ++m) {
                        const long piv = h[n9 + m][n9 + m];
                        if (u[m] % piv != 0) {
                            member = false;
                            break;
                        }
                        const long t = u[m] / piv;
                        for (std::size_t k = m; k < d; ++k) u[k] -= t * h[n9 + m][n9 + k];
                    }
                    if (!member) continue;
                    IntVector coords(n);
                    for (std::size_t k = 0; k < n9; ++k) coords[k] = Integer(w[k]);
                    for (std::size_t m = 0; m < d; ++m) coords[n9 + m] = Integer(w3[m]);
                    const QuatElement x = Q.from_coordinates(coords);
                    if (x.reduced_norm() != Q.field().one()) continue;
                    if (!IQ.contains(x - one)) {
                        throw InvariantViolation("enumeration produced " + x.to_string() + " outside 1 + IQ");
                    }
                    ++solved[job];
                    found[job].push_back({coords, x});
                }
                return true;
            };
            stats[job] = enumerate_ellipsoid_reduced(gram, center, bound * (1 + 1e-9L) + 1e-9L, params.node_cap, visit,
                                             EnumerationSlice{jobs, job});
        } catch (...) {
            errors[job] = std::current_exception();
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned job = 0; job < jobs; ++job) threads.emplace_back(worker, job);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    EnumerationOutput out;
    out.radius = params.radius;
    std::vector<Found> all;
    for (unsigned job = 0; job < jobs; ++job) {
        out.nodes += stats[job].nodes;
        out.lattice_points += reached[job];
        out.solutions += solved[job];
        for (auto& f : found[job]) all.push_back(std::move(f));
    }
    std::sort(all.begin(), all.end(), [](const Found& p, const Found& q) { return p.coords < q.coords; });
    const NumberField& K = Q.field();
    for (const auto& f : all) {
        const QuatElement& x = f.x;
        if (x == one || x == -one) continue;
        const Interval disp = displacement(x);
        if (disp.lo > params.radius) continue;
        FieldElement tr = x.reduced_trace();
        if (tr.sign_at(0) < 0) tr = -tr;
        const Interval tv = sigma0_interval(tr);
        GeodesicCandidate g{x, tr, tv, std::nullopt, disp};
        // Trace exactly 2 would be parabolic; both go to the alarm list.
        const FieldElement two = K.from_integer(2);
        const bool hyperbolic = tr != two && (tv.lo > 2.0 || (tv.hi >= 2.0 && (tr - two).sign_at(0) > 0));
        if (hyperbolic) {
            g.length = length_of_trace(tv);
            out.hyperbolic.push_back(g);
        } else {
            out.elliptic.push_back(g);
        }
    }
    auto by_trace = [](const GeodesicCandidate& p, const GeodesicCandidate& q) {
        return p.trace_value.mid() < q.trace_value.mid();
    };
    std::stable_sort(out.hyperbolic.begin(), out.hyperbolic.end(), by_trace);
    std::stable_sort(out.elliptic.begin(), out.elliptic.end(), by_trace);
    return out;
}

bool completeness_certified(double radius, const Interval& length, double diameter) {
    const Interval lhs = cosh(Interval(radius) / 2.0);
    const Interval rhs = cosh(length / 2.0) * cosh(Interval(diameter));
    return lhs.lo >= rhs.hi;
}

EnumerationResult systole_search(const OrderLattice& Q, const Ideal& I, const RadiusSchedule& schedule,
                                 std::optional<double> diameter, const EnumerationParams& base,
                                 const std::function<void(const EnumerationOutput&)>& progress) {
    if (schedule.step <= 0 || schedule.initial <= 0) throw InputError("radius schedule needs positive start and step");
    std::optional<FieldElement> previous;
    EnumerationResult result{Q.field().zero(), Interval(0.0), 0, Completeness::stabilized, 0.0, diameter, 0, 0, {}};
    for (double L = schedule.initial; L <= schedule.max + 1e-12; L += schedule.step) {
        EnumerationParams params = base;
        params.radius = L;
        const EnumerationOutput out = enumerate_gamma(Q, I, params);
        if (progress) progress(out);
        result.visited += out.nodes;
        result.radius = L;
        result.elliptic = out.elliptic.size();
        if (out.hyperbolic.empty()) {
            result.history.emplace_back(L, "none");
            previous.reset();
            continue;
        }
        const GeodesicCandidate& best = out.hyperbolic.front();
        result.min_trace = best.trace;
        result.min_length = *best.length;
        std::set<std::string> traces;
        for (const auto& g : out.hyperbolic) traces.insert(g.trace.to_string());
        result.distinct_traces = traces.size();
        result.history.emplace_back(L, best.trace.to_string());
        if (diameter && completeness_certified(L, *best.length, *diameter)) {
            result.mode = Completeness::certified;
            return result;
        }
        if (!diameter && previous && *previous == best.trace) {
            result.mode = Completeness::stabilized;
            return result;
        }
        previous = best.trace;
    }
    throw CapExceeded("radius schedule exhausted before the minimal trace " +
                      std::string(diameter ? "was certified" : "stabilized"));
}

std::string EnumerationResult::to_record(const Ideal& I) const {
    std::ostringstream os;
    os << "record=systole ideal=\"" << I.to_string() << "\" norm=" << to_string(I.norm()) << " min_trace=\""
       << min_trace.to_string() << "\" min_length=[" << std::fixed;
    os.precision(6);
    os << min_length.lo << "," << min_length.hi << "] mode=" << (mode == Completeness::certified ? "certified" : "stabilized");
    os.precision(3);
    os << " radius=" << radius << " distinct_traces=" << distinct_traces << " elliptic=" << elliptic
       << " visited=" << visited;
    return os.str();
}

}  // namespace quatsys
