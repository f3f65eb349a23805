#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "quatsys/bounds.hpp"
#include "quatsys/errors.hpp"
#include "quatsys/geodesics.hpp"
#include "quatsys/problem.hpp"
#include "quatsys/quotient.hpp"
#include "quatsys/torsion.hpp"

using namespace quatsys;

namespace {

struct Options {
    std::string field_file;
    bool hurwitz = false;
    std::string ideal;
    std::int64_t prime = 0;
    std::size_t index = 0;
    std::int64_t norm_bound = 0;
    unsigned t = 1;
    std::string radius = "4:1:12";
    std::uint64_t cap = 0;
    unsigned precision = 64;
    unsigned jobs = 1;
    bool asymptotic = false;
    std::vector<long> genera;
    std::optional<double> diameter;
    std::string out;
};

std::string quote(const std::string& v) {
    if (v.find_first_of(" =\"") == std::string::npos && !v.empty()) return v;
    std::string q = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') q += '\\';
        q += c;
    }
    return q + "\"";
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string interval_text(const Interval& x, int digits = 6) {
    return "[" + fixed(x.lo, digits) + "," + fixed(x.hi, digits) + "]";
}

// key=value records, one per line.
class Report {
public:
    explicit Report(std::ostream& os) : os_(os) {}

    Report& begin(const std::string& kind) {
        line_ = "record=" + kind;
        return *this;
    }
    Report& kv(const std::string& key, const std::string& value) {
        line_ += " " + key + "=" + quote(value);
        return *this;
    }
    Report& kv(const std::string& key, const char* value) { return kv(key, std::string(value)); }
    Report& kv(const std::string& key, bool value) { return kv(key, std::string(value ? "true" : "false")); }
    template <typename T>
    Report& kv(const std::string& key, const T& value) {
        std::ostringstream s;
        s << value;
        return kv(key, s.str());
    }
    void end() { os_ << line_ << "\n"; }
    std::ostream& stream() { return os_; }

private:
    std::ostream& os_;
    std::string line_;
};

Problem load(const Options& o) {
    if (o.hurwitz && !o.field_file.empty()) throw InputError("--hurwitz and --field are exclusive");
    if (o.hurwitz) return Problem::hurwitz();
    if (o.field_file.empty()) throw InputError("one of --field FILE or --hurwitz is required");
    return load_problem(o.field_file);
}

std::vector<Ideal> selected_ideals(const Problem& p, const Options& o) {
    const int given = !o.ideal.empty() + (o.prime != 0) + (o.norm_bound != 0);
    if (given != 1) throw InputError("give exactly one of --ideal, --prime, --norm-bound");
    if (!o.ideal.empty()) return {parse_ideal(p.field, o.ideal)};
    if (o.prime != 0) {
        if (o.prime < 2 || !is_prime(o.prime)) throw InputError("--prime must be a rational prime");
        const auto primes = factor_rational_prime(p.field, o.prime);
        if (o.index >= primes.size()) {
            throw InputError("--index " + std::to_string(o.index) + " out of range: " + std::to_string(primes.size()) +
                             " primes above " + std::to_string(o.prime));
        }
        return {primes[o.index].ideal};
    }
    if (o.norm_bound < 2) throw InputError("--norm-bound must be at least 2");
    std::vector<Ideal> out;
    for (const auto& P : primes_up_to_norm(p.field, o.norm_bound)) out.push_back(P.ideal);
    return out;
}

RadiusSchedule parse_schedule(const std::string& text) {
    RadiusSchedule s;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> s.initial >> c1 >> s.step >> c2 >> s.max) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
        throw InputError("--radius expects L0:STEP:MAX, got '" + text + "'");
    }
    if (!(s.initial > 0) || !(s.step > 0) || s.max < s.initial) throw InputError("--radius needs 0 < L0 <= MAX and STEP > 0");
    return s;
}

// The SL-level and PSL-level index of Gamma(I) and the genus, when every
// local quotient fits under the cap.
struct GenusData {
    CompositeCount counts;
    TorsionCertificate torsion;
    Integer psl;
    std::optional<Integer> genus;
};

GenusData genus_data(const Problem& p, const Ideal& I, std::uint64_t cap) {
    const OrderLattice& Q = p.require_order();
    GenusData g{composite_counts(Q, I, cap), certify_torsion_free(Q, I), 0, std::nullopt};
    g.psl = psl_index(g.counts.norm_one, g.torsion.minus_one_in_gamma);
    if (g.torsion.torsion_free) g.genus = genus_from_index(p.geometry(I), g.psl);
    return g;
}

void cmd_field_info(const Problem& p, const Options& o, Report& r) {
    const NumberField& K = p.field;
    std::ostringstream mp;
    const IntPoly& m = K.minimal_polynomial();
    for (std::size_t k = m.size(); k-- > 0;) mp << to_string(m[k]) << (k ? " " : "");
    r.begin("field").kv("name", K.name()).kv("degree", K.degree()).kv("minpoly", mp.str())
        .kv("discriminant", to_string(K.discriminant())).end();
    const int digits = std::max(6, static_cast<int>(o.precision * 0.30103) - 1);
    for (std::size_t place = 0; place < K.degree(); ++place) {
        const RationalInterval root = K.embed(K.generator(), place, o.precision);
        mpf_class lo(root.lo, o.precision + 16), hi(root.hi, o.precision + 16);
        std::ostringstream lo_s, hi_s;
        lo_s << std::setprecision(digits) << lo;
        hi_s << std::setprecision(digits) << hi;
        r.begin("place").kv("index", place).kv("root_lo", lo_s.str()).kv("root_hi", hi_s.str());
        if (p.algebra) r.kv("status", to_string(p.algebra->real_place_status(place)));
        r.end();
    }
    if (p.algebra) r.begin("algebra").kv("a", p.algebra->a().to_string()).kv("b", p.algebra->b().to_string()).end();
    if (p.order) {
        r.begin("order").kv("name", p.order->name()).kv("kappa", to_string(p.order->kappa()))
            .kv("rank", p.order->basis().size());
        if (p.covolume_over_pi) r.kv("covolume_over_pi", to_string(*p.covolume_over_pi));
        r.end();
    }
}

void cmd_ideal_factor(const Problem& p, const Options& o, Report& r) {
    for (const Ideal& I : selected_ideals(p, o)) {
        const auto factors = factor_ideal(I);
        r.begin("ideal").kv("ideal", I.to_string()).kv("norm", to_string(I.norm())).kv("factors", factors.size());
        if (const auto g = I.known_generator() ? I.known_generator() : I.find_generator()) r.kv("generator", g->to_string());
        r.end();
        for (const auto& f : factors) {
            r.begin("factor").kv("prime", f.prime.ideal.to_string()).kv("p", f.prime.p)
                .kv("e", f.prime.ramification).kv("f", f.prime.residue_degree)
                .kv("norm", to_string(f.prime.norm())).kv("exponent", f.exponent).end();
        }
    }
}

void cmd_ramification(const Problem& p, const Options& o, Report& r) {
    const QuaternionAlgebra& D = p.require_algebra();
    const std::int64_t bound = o.norm_bound ? o.norm_bound : 50;
    const RamificationReport rep = o.cap ? D.ramification(bound, o.cap) : D.ramification(bound);
    std::ostringstream real;
    for (std::size_t k = 0; k < rep.ramified_real.size(); ++k) real << (k ? "," : "") << rep.ramified_real[k];
    r.begin("ramification").kv("norm_bound", bound).kv("primes_checked", rep.finite_primes_checked)
        .kv("ramified_real", real.str()).kv("ramified_real_count", rep.ramified_real.size())
        .kv("ramified_finite_count", rep.ramified_finite.size()).kv("undecided", rep.undecided_finite.size())
        .kv("parity_consistent", rep.parity_consistent).end();
    for (const auto& P : rep.ramified_finite) {
        r.begin("ramified_prime").kv("prime", P.ideal.to_string()).kv("p", P.p).kv("norm", to_string(P.norm())).end();
    }
    for (const auto& P : rep.undecided_finite) {
        r.begin("undecided_prime").kv("prime", P.ideal.to_string()).kv("p", P.p).kv("norm", to_string(P.norm())).end();
    }
}

void cmd_quotient_count(const Problem& p, const Options& o, Report& r) {
    const OrderLattice& Q = p.require_order();
    const std::uint64_t cap = o.cap ? o.cap : kDefaultQuotientCap;
    if (o.prime != 0) {
        if (o.t == 0) throw InputError("--t must be positive");
        const auto primes = factor_rational_prime(p.field, o.prime);
        if (o.index >= primes.size()) throw InputError("--index out of range");
        const PrimeIdeal& P = primes[o.index];
        const FiniteQuotRing R(Q, P, o.t, cap);
        const QuotientCounts c = count_quotient(R);
        const LambdaFactor lf = lambda_factor(Q, P.ideal);
        const bool division = !lf.ramified.empty();
        const Integer formula = norm_one_formula(Integer(P.norm()), o.t, division);
        r.begin("quotient").kv("prime", P.ideal.to_string()).kv("q", R.q()).kv("t", o.t)
            .kv("cardinality", c.cardinality).kv("units", c.units).kv("norm_one", c.norm_one)
            .kv("formula", to_string(formula)).kv("match", Integer(c.norm_one) == formula)
            .kv("lambda", to_string(lf.lambda)).end();
        return;
    }
    for (const Ideal& I : selected_ideals(p, o)) {
        const CompositeCount c = composite_counts(Q, I, cap);
        const Rational bound = index_bound(Q, I);
        r.begin("quotient").kv("ideal", I.to_string()).kv("norm", to_string(I.norm()))
            .kv("units", to_string(c.units)).kv("norm_one", to_string(c.norm_one))
            .kv("index_bound", to_string(bound)).kv("below_bound", Rational(c.norm_one) < bound).end();
    }
}

void cmd_torsion_check(const Problem& p, const Options& o, Report& r) {
    const OrderLattice& Q = p.require_order();
    std::size_t certified = 0, total = 0;
    for (const Ideal& I : selected_ideals(p, o)) {
        const TorsionCertificate c = certify_torsion_free(Q, I);
        ++total;
        certified += c.torsion_free;
        r.begin("torsion").kv("ideal", I.to_string()).kv("norm", to_string(I.norm()))
            .kv("torsion_free", c.torsion_free).kv("principal", c.principal)
            .kv("minus_one_in_gamma", c.minus_one_in_gamma);
        if (!c.torsion_free) r.kv("candidate", c.named_candidate);
        r.end();
        for (const auto& ob : c.obstructions) {
            r.begin("obstruction").kv("n", ob.n).kv("trace", ob.trace.to_string()).kv("norm", to_string(ob.norm))
                .kv("divides", ob.divides).end();
        }
    }
    r.begin("torsion_summary").kv("ideals", total).kv("certified", certified).end();
}

void cmd_bounds(const Problem& p, const Options& o, Report& r) {
    std::vector<long> genera = o.genera;
    const bool ideals_given = !o.ideal.empty() || o.prime != 0 || o.norm_bound != 0;
    if (genera.empty() && !ideals_given && !o.asymptotic) throw InputError("bounds needs --genus, an ideal, or --asymptotic");
    for (long g : genera) {
        if (g < 2) throw InputError("--genus must be at least 2");
        const Interval b = four_thirds_bound(Integer(g));
        r.begin("four_thirds").kv("genus", g).kv("bound", fixed(b.mid(), 3)).kv("interval", interval_text(b)).end();
        if (p.order && p.covolume_over_pi) {
            GeometryContext ctx;
            ctx.degree = static_cast<unsigned>(p.field.degree());
            ctx.kappa = p.order->kappa();
            ctx.covolume_over_pi = *p.covolume_over_pi;
            const SystoleBound s = sys_lower_bound_from_genus(ctx, Integer(g));
            r.begin("genus_chain").kv("genus", g).kv("vacuous", s.vacuous);
            if (!s.vacuous) r.kv("systole_lower", interval_text(s.value));
            if (p.field.minimal_polynomial() == NumberField::heptagonal().minimal_polynomial()) {
                r.kv("four_thirds_certified", hurwitz_43_check(Integer(g)));
            }
            r.end();
        }
    }
    if (ideals_given) {
        for (const Ideal& I : selected_ideals(p, o)) {
            const GeometryContext ctx = p.geometry(I);
            const TraceBound t = trace_lower_bound(ctx, I);
            const SystoleBound sharp = sys_lower_bound(ctx, I, true), coarse = sys_lower_bound(ctx, I, false);
            r.begin("bounds").kv("ideal", I.to_string()).kv("norm", to_string(I.norm()))
                .kv("lambda", to_string(ctx.lambda)).kv("trace_sharp", interval_text(t.sharp))
                .kv("trace_coarse", interval_text(t.coarse)).kv("systole_sharp", sharp.vacuous ? "vacuous" : interval_text(sharp.value))
                .kv("systole_coarse", coarse.vacuous ? "vacuous" : interval_text(coarse.value))
                .kv("index_bound", to_string(index_bound(p.require_order(), I))).end();
        }
    }
    if (o.asymptotic) {
        GeometryContext ctx = GeometryContext::hurwitz();
        if (!o.hurwitz) {
            if (!p.order || !p.covolume_over_pi) throw InputError("--asymptotic needs an order and covolume_over_pi");
            ctx.degree = static_cast<unsigned>(p.field.degree());
            ctx.kappa = p.order->kappa();
            ctx.covolume_over_pi = *p.covolume_over_pi;
        }
        r.begin("asymptotic").kv("fuchsian", fuchsian_asymptotic(ctx)).kv("constant", interval_text(fuchsian_constant(ctx)))
            .kv("r_invariant", interval_text(r_invariant(ctx))).end();
    }
}

EnumerationResult run_systole(const OrderLattice& Q, const Ideal& I, const Options& o, const RadiusSchedule& s) {
    EnumerationParams params;
    params.jobs = o.jobs;
    if (o.cap) params.node_cap = o.cap;
    auto progress = [&](const EnumerationOutput& out) {
        std::cerr << "record=progress radius=" << out.radius << " visited=" << out.nodes
                  << " lattice_points=" << out.lattice_points << " hyperbolic=" << out.hyperbolic.size();
        if (!out.hyperbolic.empty()) std::cerr << " min_trace=" << quote(out.hyperbolic.front().trace.to_string());
        std::cerr << "\n";
    };
    return systole_search(Q, I, s, o.diameter, params, progress);
}

void check_no_elliptic(const EnumerationResult& res, const Ideal& I) {
    if (res.elliptic != 0) {
        throw InvariantViolation("enumeration found " + std::to_string(res.elliptic) +
                                 " elliptic elements in certified torsion-free Gamma(" + I.to_string() + ")");
    }
}

void cmd_systole(const Problem& p, const Options& o, Report& r) {
    const OrderLattice& Q = p.require_order();
    const RadiusSchedule s = parse_schedule(o.radius);
    for (const Ideal& I : selected_ideals(p, o)) {
        const EnumerationResult res = run_systole(Q, I, o, s);
        if (!I.is_unit_ideal() && certify_torsion_free(Q, I).torsion_free) check_no_elliptic(res, I);
        r.stream() << res.to_record(I) << "\n";
    }
}

void cmd_table1(const Problem&, const Options& o, Report& r) {
    const Problem p = Problem::hurwitz();
    const OrderLattice& Q = *p.order;
    const NumberField& K = p.field;
    const RadiusSchedule s = parse_schedule(o.radius);
    struct Row {
        std::string label;
        Ideal ideal;
    };
    std::vector<Row> rows{{"<2-eta>", factor_rational_prime(K, 7).at(0).ideal},
                          {"<2>", Ideal::principal(K.from_integer(2))}};
    const auto thirteen = factor_rational_prime(K, 13);
    for (std::size_t k = 0; k < thirteen.size(); ++k) rows.push_back({"P13_" + std::to_string(k), thirteen[k].ideal});

    struct Computed {
        std::string label;
        Integer genus, order;
        double systole;
        std::string trace;
        Completeness mode;
    };
    std::vector<Computed> computed;
    for (const auto& row : rows) {
        const GenusData g = genus_data(p, row.ideal, o.cap ? o.cap : kDefaultQuotientCap);
        if (!g.genus) throw InvariantViolation("Gamma(" + row.ideal.to_string() + ") is not certified torsion-free");
        const EnumerationResult res = run_systole(Q, row.ideal, o, s);
        check_no_elliptic(res, row.ideal);
        computed.push_back({row.label, *g.genus, g.psl, res.min_length.mid(), res.min_trace.to_string(), res.mode});
    }
    // Rows with equal genus are matched to the reference values as a set.
    const std::vector<std::pair<long, std::vector<double>>> reference{{3, {3.936}}, {7, {5.796}}, {14, {5.903, 6.393, 6.887}}};
    std::vector<double> reference_value(computed.size(), 0.0);
    for (const auto& [genus, values] : reference) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < computed.size(); ++k) {
            if (computed[k].genus == genus) idx.push_back(k);
        }
        if (idx.size() != values.size()) {
            throw InvariantViolation("expected " + std::to_string(values.size()) + " surfaces of genus " + std::to_string(genus) +
                                     ", computed " + std::to_string(idx.size()));
        }
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return computed[a].systole < computed[b].systole; });
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < idx.size(); ++k) reference_value[idx[k]] = sorted[k];
    }
    bool all_pass = true;
    for (std::size_t k = 0; k < computed.size(); ++k) {
        const auto& c = computed[k];
        const Interval bound = four_thirds_bound(c.genus);
        const bool pass = std::fabs(c.systole - reference_value[k]) <= 1e-3 && c.systole > bound.hi;
        all_pass = all_pass && pass;
        r.begin("table1").kv("ideal", c.label).kv("genus", to_string(c.genus)).kv("group_order", to_string(c.order))
            .kv("systole", fixed(c.systole, 3)).kv("systole_reference", fixed(reference_value[k], 3))
            .kv("bound", fixed(bound.mid(), 3)).kv("min_trace", c.trace)
            .kv("mode", c.mode == Completeness::certified ? "certified" : "stabilized").kv("pass", pass).end();
    }
    r.begin("table1_reference").kv("genus", 17).kv("group_order", 1344).kv("systole_reference", "7.609")
        .kv("bound", fixed(four_thirds_bound(Integer(17)).mid(), 3)).kv("computed", false).end();

    std::ostream& os = r.stream();
    os << "\n"
       << std::setw(6) << "genus" << std::setw(8) << "order" << std::setw(11) << "systole" << std::setw(8) << "ref"
       << std::setw(8) << "bound" << std::setw(7) << "pass" << "\n";
    for (std::size_t k = 0; k < computed.size(); ++k) {
        const auto& c = computed[k];
        const Interval bound = four_thirds_bound(c.genus);
        const bool pass = std::fabs(c.systole - reference_value[k]) <= 1e-3 && c.systole > bound.hi;
        os << std::setw(6) << to_string(c.genus) << std::setw(8) << to_string(c.order) << std::setw(11) << fixed(c.systole, 3)
           << std::setw(8) << fixed(reference_value[k], 3) << std::setw(8) << fixed(bound.mid(), 3) << std::setw(7)
           << (pass ? "pass" : "FAIL") << "\n";
    }
    os << std::setw(6) << 17 << std::setw(8) << 1344 << std::setw(11) << "-" << std::setw(8) << "7.609" << std::setw(8)
       << fixed(four_thirds_bound(Integer(17)).mid(), 3) << std::setw(7) << "ref" << "\n";
    if (!all_pass) throw InvariantViolation("table rows failed to match the reference systoles");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic Fuchsian groups from quaternion orders: counts, bounds and systoles"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--field", o.field_file, "Field file (minpoly, quat, order, covolume_over_pi)");
        c->add_flag("--hurwitz", o.hurwitz, "Q(eta), (eta, eta), the Hurwitz order, nu = pi/21");
        c->add_option("--out", o.out, "Write records to FILE instead of stdout");
    };
    auto ideals = [&](CLI::App* c) {
        c->add_option("--ideal", o.ideal, "Ideal generators separated by ';', e.g. \"2 - eta\" or \"(2,-1,0);(7,0,0)\"");
        c->add_option("--prime", o.prime, "Rational prime P");
        c->add_option("--index", o.index, "Index of the prime above P (with --prime)");
        c->add_option("--norm-bound", o.norm_bound, "All prime ideals of norm <= B");
    };
    struct Command {
        const char* name;
        const char* help;
        void (*run)(const Problem&, const Options&, Report&);
    };
    const Command commands[] = {
        {"field-info", "Field degree, discriminant, real places and algebra data", cmd_field_info},
        {"ideal-factor", "Factor ideals into primes", cmd_ideal_factor},
        {"ramification", "Ramified places of the algebra", cmd_ramification},
        {"quotient-count", "Norm-one counts in Q / IQ", cmd_quotient_count},
        {"torsion-check", "Torsion-freeness certificates for Gamma(I)", cmd_torsion_check},
        {"bounds", "Trace, systole and 4/3 bounds", cmd_bounds},
        {"systole", "Enumerate short geodesics of Gamma(I)", cmd_systole},
        {"table1", "Reproduce the table of Hurwitz surfaces of small genus", cmd_table1},
    };
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& cmd : commands) {
        CLI::App* c = app.add_subcommand(cmd.name, cmd.help);
        common(c);
        subs.emplace_back(c, &cmd);
        const std::string name = cmd.name;
        if (name == "field-info") c->add_option("--precision", o.precision, "Bits for the real embeddings")->check(CLI::Range(1, 4096));
        if (name == "ideal-factor" || name == "quotient-count" || name == "torsion-check" || name == "bounds" || name == "systole") ideals(c);
        if (name == "ramification") {
            c->add_option("--norm-bound", o.norm_bound, "Check primes of norm <= B (default 50)");
            c->add_option("--cap", o.cap, "Node cap of each isotropy search");
        }
        if (name == "quotient-count") {
            c->add_option("--t", o.t, "Exponent t of P^t (with --prime)");
            c->add_option("--cap", o.cap, "Largest quotient ring to enumerate");
        }
        if (name == "bounds") {
            c->add_option("--genus", o.genera, "Genus values for the 4/3 bound");
            c->add_flag("--asymptotic", o.asymptotic, "Print the asymptotic statements");
        }
        if (name == "systole" || name == "table1") {
            c->add_option("--radius", o.radius, "Radius schedule L0:STEP:MAX");
            c->add_option("--cap", o.cap, "Node cap of each enumeration");
            c->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));
        }
        if (name == "systole") c->add_option("--diameter", o.diameter, "Diameter bound of X_I for certified mode");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    try {
        if (!o.out.empty()) {
            file = std::make_unique<std::ofstream>(o.out);
            if (!*file) throw InputError("cannot open output file '" + o.out + "'");
            os = file.get();
        }
        Report report(*os);
        for (const auto& [sub, cmd] : subs) {
            if (!sub->parsed()) continue;
            const Problem p = std::string(cmd->name) == "table1" ? Problem::hurwitz() : load(o);
            cmd->run(p, o, report);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.begin("timing").kv("seconds", fixed(seconds, 3)).end();
        os->flush();
        return 0;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    }
}
