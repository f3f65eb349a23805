#include "quatsys/problem.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "quatsys/errors.hpp"
#include "quatsys/quotient.hpp"

namespace quatsys {

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim_copy(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim_copy(cur));
    return out;
}

IntVector parse_integers(const std::string& s, const std::string& what) {
    std::istringstream in(s);
    IntVector out;
    std::string tok;
    while (in >> tok) {
        try {
            out.push_back(Integer(tok));
        } catch (const std::exception&) {
            throw InputError(what + ": '" + tok + "' is not an integer");
        }
    }
    return out;
}

FieldElement coefficient_vector(const NumberField& K, const IntVector& v, const std::string& what) {
    if (v.size() != K.degree()) {
        throw InputError(what + ": expected " + std::to_string(K.degree()) + " coefficients, got " +
                         std::to_string(v.size()));
    }
    RatVector r;
    for (const auto& c : v) r.push_back(Rational(c));
    return K.element(r);
}

Rational parse_rational_checked(const std::string& s, const std::string& what) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw InputError(what + ": '" + s + "' is not a rational number");
    }
}

// term := [coef] ['*'] [sym ['^' k]]
FieldElement parse_polynomial(const NumberField& K, const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw InputError("empty field element");
    FieldElement acc = K.zero();
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw InputError("cannot parse field element '" + text + "'");
        }
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        Rational coef = 1;
        const bool has_coef = pos > start;
        if (has_coef) coef = parse_rational_checked(s.substr(start, pos - start), "field element");
        if (pos < s.size() && s[pos] == '*') ++pos;
        unsigned power = 0;
        start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        const std::string sym = s.substr(start, pos - start);
        if (!sym.empty()) {
            if (sym != "eta" && sym != "t" && sym != "theta") {
                throw InputError("unknown symbol '" + sym + "' in field element '" + text + "'");
            }
            power = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == start) throw InputError("missing exponent in '" + text + "'");
                power = static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
            }
        } else if (!has_coef) {
            throw InputError("cannot parse field element '" + text + "'");
        }
        acc += Rational(sign) * coef * K.generator().pow(power);
    }
    return acc;
}

}  // namespace

Problem Problem::hurwitz() {
    const OrderLattice Q = OrderLattice::hurwitz();
    return Problem{Q.field(), Q.algebra(), Q, Rational(1, 21)};
}

const QuaternionAlgebra& Problem::require_algebra() const {
    if (!algebra) throw InputError("this command needs an algebra ('quat:' line or --hurwitz)");
    return *algebra;
}

const OrderLattice& Problem::require_order() const {
    if (!order) throw InputError("this command needs an order ('order:' line or --hurwitz)");
    return *order;
}

GeometryContext Problem::geometry(const Ideal& I) const {
    const OrderLattice& Q = require_order();
    if (!covolume_over_pi) throw InputError("this command needs 'covolume_over_pi:' in the field file");
    GeometryContext ctx;
    ctx.degree = static_cast<unsigned>(field.degree());
    ctx.kappa = Q.kappa();
    ctx.covolume_over_pi = *covolume_over_pi;
    ctx.lambda = lambda_factor(Q, I).lambda;
    return ctx;
}

Problem parse_problem(const std::string& text) {
    std::optional<std::string> name, minpoly, quat, order, covolume;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw InputError("line " + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = trim_copy(line.substr(0, colon));
        const std::string value = trim_copy(line.substr(colon + 1));
        std::optional<std::string>* slot = nullptr;
        if (key == "name") slot = &name;
        else if (key == "minpoly") slot = &minpoly;
        else if (key == "quat") slot = &quat;
        else if (key == "order") slot = &order;
        else if (key == "covolume_over_pi") slot = &covolume;
        else throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (*slot) throw InputError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        *slot = value;
    }
    if (!minpoly) throw InputError("field file has no 'minpoly:' line");
    IntVector high_first = parse_integers(*minpoly, "minpoly");
    if (high_first.size() < 2) throw InputError("minpoly: need a polynomial of degree >= 1");
    IntPoly poly(high_first.rbegin(), high_first.rend());
    Problem p{NumberField(poly, name.value_or("")), std::nullopt, std::nullopt, std::nullopt};
    const NumberField& K = p.field;

    if (quat) {
        const auto parts = split(*quat, '|');
        if (parts.size() != 2) throw InputError("quat: expected 'a_coeffs | b_coeffs'");
        const FieldElement a = coefficient_vector(K, parse_integers(parts[0], "quat a"), "quat a");
        const FieldElement b = coefficient_vector(K, parse_integers(parts[1], "quat b"), "quat b");
        p.algebra = QuaternionAlgebra(a, b);
    }
    if (order) {
        const QuaternionAlgebra& D = p.require_algebra();
        if (*order == "standard") {
            p.order = OrderLattice::standard(D);
        } else if (*order == "hurwitz") {
            if (K.minimal_polynomial() != NumberField::heptagonal().minimal_polynomial()) {
                throw InputError("order: the hurwitz order needs the field t^3 + t^2 - 2t - 1");
            }
            if (D.a() != K.generator() || D.b() != K.generator()) {
                throw InputError("order: the hurwitz order needs the algebra (eta, eta)");
            }
            p.order = OrderLattice::hurwitz(D);
        } else {
            const auto parts = split(*order, '|');
            if (parts.size() != 2) throw InputError("order: expected 'standard', 'hurwitz' or 'k | rows'");
            const IntVector k = parse_integers(parts[0], "order kappa");
            if (k.size() != 1 || k[0] <= 0) throw InputError("order: kappa must be one positive integer");
            IntMatrix hnf;
            for (const auto& row : split(parts[1], ';')) {
                if (row.empty()) continue;
                IntVector r = parse_integers(row, "order row");
                if (r.size() != 4 * K.degree()) {
                    throw InputError("order: each row needs " + std::to_string(4 * K.degree()) + " integers");
                }
                hnf.push_back(r);
            }
            p.order = OrderLattice::from_hnf(D, k[0], hnf, name.value_or(""));
        }
    }
    if (covolume) p.covolume_over_pi = parse_rational_checked(*covolume, "covolume_over_pi");
    return p;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open field file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

FieldElement parse_field_element(const NumberField& K, const std::string& text) {
    const std::string s = trim_copy(text);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw InputError("unbalanced parentheses in '" + text + "'");
        const auto parts = split(s.substr(1, s.size() - 2), ',');
        if (parts.size() != K.degree()) {
            throw InputError("'" + text + "' needs " + std::to_string(K.degree()) + " coordinates");
        }
        RatVector r;
        for (const auto& c : parts) r.push_back(parse_rational_checked(c, "field element"));
        return K.element(r);
    }
    return parse_polynomial(K, s);
}

Ideal parse_ideal(const NumberField& K, const std::string& text) {
    std::vector<FieldElement> gens;
    // Split on ';' outside parentheses; tuples use ','.
    for (const auto& g : split(text, ';')) {
        if (g.empty()) continue;
        const FieldElement x = parse_field_element(K, g);
        if (!x.is_integral()) throw InputError("ideal generator " + x.to_string() + " is not integral");
        gens.push_back(x);
    }
    if (gens.empty()) throw InputError("ideal needs at least one generator");
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && g.is_zero();
    if (all_zero) throw InputError("the zero ideal is not allowed");
    if (gens.size() == 1) return Ideal::principal(gens[0]);
    return Ideal::from_generators(K, gens);
}

}  // namespace quatsys
