#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toricjk/euler.hpp"
#include "toricjk/problem_io.hpp"
#include "toricjk/selftest.hpp"
#include "toricjk/vortex.hpp"

using namespace toricjk;

namespace {

struct Flags {
    std::uint64_t seed = 0;
    std::string format = "text";
    unsigned retries = 64;
    std::string out;
    bool parallel = false;
    std::string input;
};

bool json_out(const Flags& f) { return f.format == "json"; }

const RationalVector& need_tau(const ProblemFile& pf) {
    if (!pf.tau) throw ValidationError("tau: missing");
    return *pf.tau;
}

const MultiPoly& need_class(const ProblemFile& pf) {
    if (!pf.cls) throw ValidationError("class: missing");
    return *pf.cls;
}

EulerEngine make_engine(const Flags& f) {
    EulerOptions o;
    o.seed = f.seed;
    o.retries = f.retries;
    o.parallel = f.parallel;
    return EulerEngine(o);
}

void cmd_check(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    const auto cert = check_proper(pf.weights);
    std::optional<LevelClass> level;
    if (pf.tau) level = classify_level(pf.weights, *pf.tau);
    const bool regular = level && (level->kind == LevelKind::regular || level->kind == LevelKind::super_regular);
    const bool super_regular = level && level->kind == LevelKind::super_regular;
    if (json_out(f)) {
        json j = {{"proper", bool(cert)}, {"spans", pf.weights.spans()}};
        if (cert) j["certificate"] = vector_json(*cert);
        if (level) {
            j["level"] = level_json(*level);
            j["regular"] = regular;
            j["super_regular"] = super_regular;
        }
        os << j.dump(2) << '\n';
        return;
    }
    os << "proper: " << (cert ? "yes " + vector_text(*cert) : std::string("no")) << '\n';
    os << "spans: " << (pf.weights.spans() ? "yes" : "no") << '\n';
    if (level) {
        os << "level: " << level_text(*level) << '\n';
        os << "regular: " << (regular ? "yes" : "no") << '\n';
        os << "super_regular: " << (super_regular ? "yes" : "no") << '\n';
    }
}

void cmd_walls(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    const auto walls = enumerate_walls(pf.weights);
    if (json_out(f)) {
        json j = json::array();
        for (const auto& w : walls) j.push_back(wall_json(pf.weights, w));
        os << j.dump(2) << '\n';
        return;
    }
    for (const auto& w : walls) os << "I=" << index_set_text(w.index_set) << " normal=" << vector_text(w.normal) << '\n';
}

void cmd_classify(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    const LevelClass level = classify_level(pf.weights, need_tau(pf));
    if (json_out(f))
        os << level_json(level).dump(2) << '\n';
    else
        os << level_text(level) << '\n';
}

void cmd_euler(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    EulerEngine engine = make_engine(f);
    const Rational v = engine.euler_class({pf.weights, need_tau(pf), 1}, need_class(pf));
    if (json_out(f)) {
        const EulerStats s = engine.stats();
        json j = {{"value", rational_json(v)},
                  {"seed", f.seed},
                  {"stats", {{"nodes", s.nodes}, {"crossings", s.crossings},
                             {"invariance_checks", s.invariance_checks}, {"memo_hits", s.memo_hits}}}};
        os << j.dump(2) << '\n';
    } else {
        os << to_string(v) << '\n';
    }
}

Wall select_wall(const ProblemFile& pf, const RationalVector& tau0) {
    const auto walls = enumerate_walls(pf.weights);
    if (pf.wall) {
        for (const auto& w : walls)
            if (w.index_set == *pf.wall) return w;
        throw ValidationError("wall: not the index set of an enumerated wall " + index_set_text(*pf.wall));
    }
    std::vector<Wall> hits;
    for (const auto& w : walls)
        if (wall_contains(pf.weights, w, tau0)) hits.push_back(w);
    if (hits.empty()) throw PreconditionError("tau: tau0 lies on no wall");
    if (hits.size() > 1) throw PreconditionError("tau: tau0 lies on two walls");
    return hits.front();
}

void cmd_crossing(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    const RationalVector& tau0 = need_tau(pf);
    if (!pf.eta) throw ValidationError("eta: missing");
    const Wall wall = select_wall(pf, tau0);
    EulerEngine engine = make_engine(f);
    const Rational v = engine.wall_crossing_difference(pf.weights, wall, tau0, *pf.eta, need_class(pf));
    if (json_out(f))
        os << json{{"value", rational_json(v)}, {"wall", wall_json(pf.weights, wall)}}.dump(2) << '\n';
    else
        os << to_string(v) << '\n';
}

void cmd_vortex(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    if (!pf.kappa) throw ValidationError("kappa: missing");
    VortexProblem vp{pf.weights, need_tau(pf), *pf.kappa, pf.cls ? *pf.cls : MultiPoly::constant(pf.weights.rank(), 1),
                     pf.genus};
    const ModuliData md = moduli_data(vp);
    std::optional<Rational> psi;
    if (vp.genus == 0) {
        if (!pf.cls) throw ValidationError("class: missing");
        EulerEngine engine = make_engine(f);
        psi = vortex_invariant(vp, engine);
    }
    if (json_out(f)) {
        json j = {{"report", report_json(md.report)}};
        j["psi"] = psi ? rational_json(*psi) : json();
        os << j.dump(2) << '\n';
        return;
    }
    os << (psi ? to_string(*psi) : std::string("no invariant")) << '\n' << report_text(md.report);
}

void print_trace(const TraceNode& node, std::ostream& os, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    os << pad << "rank " << node.rank << " tau=" << vector_text(node.tau) << " class=" << node.selected_class.to_string()
       << " value=" << to_string(node.value);
    if (!node.note.empty()) os << " (" << node.note << ")";
    os << '\n';
    for (const auto& c : node.crossings) {
        os << pad << "- cross I=" << index_set_text(c.index_set) << " at t=" << to_string(c.parameter)
           << " tau0=" << vector_text(c.tau0) << " e1=" << vector_text(c.e1) << " x0=" << c.reduced_class.to_string()
           << " subtotal=" << to_string(c.subtotal) << '\n';
        if (!c.child.empty()) print_trace(c.child.front(), os, depth + 2);
    }
}

void cmd_trace(const Flags& f, std::ostream& os) {
    const ProblemFile pf = load_problem(f.input);
    EulerEngine engine = make_engine(f);
    const TraceNode root = engine.trace({pf.weights, need_tau(pf), 1}, need_class(pf));
    if (json_out(f))
        os << trace_json(root).dump(2) << '\n';
    else
        print_trace(root, os, 0);
}

int cmd_selftest(const Flags& f, std::ostream& os) {
    const auto results = run_selftest(f.seed);
    bool ok = true;
    json j = json::array();
    for (const auto& r : results) {
        ok = ok && r.passed;
        if (json_out(f))
            j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        else
            os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
    if (json_out(f)) os << j.dump(2) << '\n';
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integrals over toric symplectic quotients by wall crossing"};
    app.require_subcommand(1);
    Flags flags;
    app.add_option("--seed", flags.seed, "path perturbation seed")->capture_default_str();
    app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--retries", flags.retries, "path planning retries")->capture_default_str();
    app.add_option("--out", flags.out, "write output to this file");
    app.add_flag("--parallel", flags.parallel, "evaluate sibling crossings in parallel");

    struct Command {
        const char* name;
        const char* help;
        bool takes_input;
    };
    const Command commands[] = {
        {"check", "properness and regularity report", true},
        {"walls", "list the walls", true},
        {"classify", "classify the level tau", true},
        {"euler", "integral of the class over the quotient at tau", true},
        {"crossing", "jump of the integral across the wall through tau", true},
        {"vortex", "genus-zero vortex invariant and moduli report", true},
        {"trace", "euler with the full crossing tree", true},
        {"selftest", "run the internal invariant suites", false},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        if (c.takes_input) sub->add_option("input", flags.input, "problem file (JSON)")->required();
        // Global flags are also accepted after the subcommand.
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    std::ostringstream buffer;
    int rc = 0;
    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "check") cmd_check(flags, buffer);
        else if (name == "walls") cmd_walls(flags, buffer);
        else if (name == "classify") cmd_classify(flags, buffer);
        else if (name == "euler") cmd_euler(flags, buffer);
        else if (name == "crossing") cmd_crossing(flags, buffer);
        else if (name == "vortex") cmd_vortex(flags, buffer);
        else if (name == "trace") cmd_trace(flags, buffer);
        else rc = cmd_selftest(flags, buffer);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }

    if (flags.out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream out(flags.out);
        if (!out) {
            std::cerr << "error: --out: cannot write " << flags.out << '\n';
            return 1;
        }
        out << buffer.str();
    }
    return rc;
}
