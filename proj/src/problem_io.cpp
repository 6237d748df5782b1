#include "toricjk/problem_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace toricjk {

namespace {

Integer integer_field(const json& v, const std::string& field) {
    if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
    if (v.is_string()) {
        Integer z;
        if (z.set_str(v.get<std::string>(), 10) == 0) return z;
    }
    throw ValidationError(field + ": expected an integer");
}

Rational rational_field(const json& v, const std::string& field) {
    if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ValidationError& e) {
            throw ValidationError(field + ": " + e.what());
        }
    }
    throw ValidationError(field + ": expected a rational string \"p/q\" or an integer");
}

unsigned long count_field(const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ValidationError(field + ": expected a nonnegative integer");
    return static_cast<unsigned long>(v.get<long long>());
}

RationalVector rational_vector(const json& v, const std::string& field, std::size_t k) {
    if (!v.is_array()) throw ValidationError(field + ": expected an array");
    if (v.size() != k)
        throw ValidationError(field + ": expected " + std::to_string(k) + " entries, got " + std::to_string(v.size()));
    RationalVector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_field(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

IntegerVector integer_vector(const json& v, const std::string& field, std::size_t k) {
    if (!v.is_array()) throw ValidationError(field + ": expected an array");
    if (v.size() != k)
        throw ValidationError(field + ": expected " + std::to_string(k) + " entries, got " + std::to_string(v.size()));
    IntegerVector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer_field(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

MultiPoly parse_class(const json& value, std::size_t k) {
    if (value.is_string()) return MultiPoly::parse(value.get<std::string>(), k);
    if (value.is_number_integer()) return MultiPoly::constant(k, rational_field(value, "class"));
    if (!value.is_object() || !value.contains("monomials") || !value["monomials"].is_array())
        throw ValidationError("class: expected a polynomial string or {\"monomials\": [...]}");
    MultiPoly p(k);
    const json& monos = value["monomials"];
    for (std::size_t i = 0; i < monos.size(); ++i) {
        const std::string field = "class.monomials[" + std::to_string(i) + "]";
        const json& m = monos[i];
        if (!m.is_object() || !m.contains("exp")) throw ValidationError(field + ": expected {\"coeff\", \"exp\"}");
        const Rational c = m.contains("coeff") ? rational_field(m["coeff"], field + ".coeff") : Rational(1);
        const json& exp = m["exp"];
        if (!exp.is_array() || exp.size() != k)
            throw ValidationError(field + ".exp: expected " + std::to_string(k) + " exponents");
        Exponent e;
        for (std::size_t j = 0; j < k; ++j)
            e.push_back(static_cast<unsigned>(count_field(exp[j], field + ".exp[" + std::to_string(j) + "]")));
        p.add_term(e, c);
    }
    return p;
}

ProblemFile parse_problem(const json& doc) {
    if (!doc.is_object()) throw ValidationError("problem: expected a JSON object");
    if (!doc.contains("k")) throw ValidationError("k: missing");
    const std::size_t k = count_field(doc["k"], "k");
    if (!doc.contains("weights") || !doc["weights"].is_array()) throw ValidationError("weights: expected an array");

    std::vector<WeightEntry> entries;
    const json& ws = doc["weights"];
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::string field = "weights[" + std::to_string(i) + "]";
        if (!ws[i].is_object() || !ws[i].contains("w")) throw ValidationError(field + ": expected {\"w\", \"mult\"}");
        WeightEntry e;
        e.weight = integer_vector(ws[i]["w"], field + ".w", k);
        e.multiplicity = ws[i].contains("mult") ? count_field(ws[i]["mult"], field + ".mult") : 1;
        entries.push_back(std::move(e));
    }

    ProblemFile pf;
    pf.weights = WeightSystem(k, std::move(entries));
    if (doc.contains("tau")) pf.tau = rational_vector(doc["tau"], "tau", k);
    if (doc.contains("class")) pf.cls = parse_class(doc["class"], k);
    if (doc.contains("kappa")) pf.kappa = integer_vector(doc["kappa"], "kappa", k);
    if (doc.contains("genus")) pf.genus = static_cast<unsigned>(count_field(doc["genus"], "genus"));
    if (doc.contains("eta")) pf.eta = rational_vector(doc["eta"], "eta", k);
    if (doc.contains("wall")) {
        const json& w = doc["wall"];
        if (!w.is_array()) throw ValidationError("wall: expected an array of 1-based entry indices");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const unsigned long j = count_field(w[i], "wall[" + std::to_string(i) + "]");
            if (j < 1 || j > pf.weights.size())
                throw ValidationError("wall[" + std::to_string(i) + "]: index out of range");
            idx.push_back(j - 1);
        }
        std::sort(idx.begin(), idx.end());
        pf.wall = std::move(idx);
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("input: cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("input: ") + e.what());
    }
    return parse_problem(doc);
}

json rational_json(const Rational& q) { return to_string(q); }

json vector_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

json vector_json(const IntegerVector& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(to_string(z));
    return out;
}

json weights_json(const WeightSystem& ws) {
    json out = json::array();
    for (const auto& e : ws.entries()) out.push_back({{"w", vector_json(e.weight)}, {"mult", e.multiplicity}});
    return out;
}

static json one_based(const std::vector<std::size_t>& idx) {
    json out = json::array();
    for (auto i : idx) out.push_back(i + 1);
    return out;
}

json wall_json(const WeightSystem&, const Wall& wall) {
    return {{"index_set", one_based(wall.index_set)}, {"normal", vector_json(wall.normal)}};
}

json level_json(const LevelClass& level) {
    json out = {{"kind", to_string(level.kind)}};
    if (level.wall) out["wall"] = {{"index_set", one_based(level.wall->index_set)}, {"normal", vector_json(level.wall->normal)}};
    return out;
}

json report_json(const ModuliReport& r) {
    json d = json::array();
    for (const auto& z : r.degrees) d.push_back(to_string(z));
    json out = {{"degrees", d},
                {"n", r.n},
                {"m", r.m},
                {"genus", r.genus},
                {"moduli_real_dimension", r.moduli_real_dimension},
                {"index", to_string(r.index)},
                {"orbifold", r.orbifold},
                {"empty", r.empty}};
    if (r.genus >= 1) {
        out["jacobian_dimension"] = r.jacobian_dimension;
        out["window_ok"] = r.window_ok;
    }
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

json trace_json(const TraceNode& node) {
    json out = {{"rank", node.rank},
                {"weights", weights_json(node.weights)},
                {"tau", vector_json(node.tau)},
                {"class", node.selected_class.to_string()},
                {"value", rational_json(node.value)}};
    if (!node.note.empty()) out["note"] = node.note;
    if (!node.path_start.empty()) out["path_start"] = vector_json(node.path_start);
    json crossings = json::array();
    for (const auto& c : node.crossings) {
        crossings.push_back({{"index_set", one_based(c.index_set)},
                             {"parameter", rational_json(c.parameter)},
                             {"tau0", vector_json(c.tau0)},
                             {"e1", vector_json(c.e1)},
                             {"reduced_weights", weights_json(c.reduced_weights)},
                             {"reduced_tau", vector_json(c.reduced_tau)},
                             {"reduced_class", c.reduced_class.to_string()},
                             {"subtotal", rational_json(c.subtotal)},
                             {"child", c.child.empty() ? json() : trace_json(c.child.front())}});
    }
    if (node.rank > 0) out["crossings"] = std::move(crossings);
    return out;
}

template <typename V>
static std::string vec_text(const V& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << ')';
    return os.str();
}

std::string vector_text(const RationalVector& v) { return vec_text(v); }
std::string vector_text(const IntegerVector& v) { return vec_text(v); }

std::string index_set_text(const std::vector<std::size_t>& index_set) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < index_set.size(); ++i) os << (i ? "," : "") << index_set[i] + 1;
    os << '}';
    return os.str();
}

std::string level_text(const LevelClass& level) {
    std::string s = to_string(level.kind);
    if (level.wall) s += " I=" + index_set_text(level.wall->index_set);
    return s;
}

std::string report_text(const ModuliReport& r) {
    std::ostringstream os;
    auto list = [&os](const char* name, const auto& v) {
        os << name << " =";
        for (const auto& x : v) os << ' ' << x;
        os << '\n';
    };
    std::vector<std::string> d;
    for (const auto& z : r.degrees) d.push_back(to_string(z));
    list("degrees", d);
    list("n", r.n);
    list("m", r.m);
    os << "genus = " << r.genus << '\n';
    os << "moduli real dimension = " << r.moduli_real_dimension << '\n';
    os << "index = " << to_string(r.index) << '\n';
    os << "orbifold = " << (r.orbifold ? "yes" : "no") << '\n';
    os << "empty = " << (r.empty ? "yes" : "no") << '\n';
    if (r.genus >= 1) {
        os << "jacobian dimension = " << r.jacobian_dimension << '\n';
        os << "degree window = " << (r.window_ok ? "ok" : "violated") << '\n';
    }
    if (!r.note.empty()) os << "note = " << r.note << '\n';
    return os.str();
}

}  // namespace toricjk
