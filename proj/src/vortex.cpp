#include "toricjk/vortex.hpp"

#include <algorithm>

namespace toricjk {

namespace {

void validate_target(const VortexProblem& vp) {
    const std::size_t k = vp.target.rank();
    if (vp.kappa.size() != k)
        throw ValidationError("kappa: expected " + std::to_string(k) + " entries, got " +
                              std::to_string(vp.kappa.size()));
    if (vp.tau.size() != k)
        throw ValidationError("tau: expected " + std::to_string(k) + " entries, got " + std::to_string(vp.tau.size()));
    if (vp.alpha.nvars() != k)
        throw ValidationError("class: expected a polynomial in " + std::to_string(k) + " variables");
    for (std::size_t i = 0; i < vp.target.size(); ++i)
        if (vp.target.entry(i).multiplicity != 1)
            throw ValidationError("weights[" + std::to_string(i) +
                                  "].mult: a vortex target needs multiplicity 1 per entry");
    if (!check_proper(vp.target)) throw PreconditionError("weights: the target system is not proper");
}

unsigned long clamp_nonneg(const Integer& z) { return z > 0 ? z.get_ui() : 0UL; }

}  // namespace

ModuliData moduli_data(const VortexProblem& vp) {
    validate_target(vp);
    const std::size_t k = vp.target.rank();
    const std::size_t big_n = vp.target.size();
    const long g = static_cast<long>(vp.genus);

    ModuliData out;
    ModuliReport& r = out.report;
    r.genus = vp.genus;
    Integer sum_d = 0, sum_n = 0, sum_m = 0;
    for (const auto& e : vp.target.entries()) {
        const Integer d = dot(e.weight, vp.kappa);
        // Riemann-Roch: h0 - h1 = 1 - g + d.
        const Integer chi = Integer(1 - g) + d;
        const unsigned long n = clamp_nonneg(chi);
        const Integer m = Integer(n) - chi;
        if (m < 0) throw InvariantError("moduli_data: negative obstruction rank");
        r.degrees.push_back(d);
        r.n.push_back(n);
        r.m.push_back(m.get_ui());
        sum_d += d;
        sum_n += n;
        sum_m += m;
        if (g >= 1 && d >= 0 && d <= 2 * g - 2) r.window_ok = false;
    }
    if (sum_n - sum_m != Integer(static_cast<long>(big_n) * (1 - g)) + sum_d)
        throw InvariantError("moduli_data: Riemann-Roch bookkeeping failed");
    r.index = Integer(static_cast<long>(big_n) - static_cast<long>(k)) * (2 - 2 * g) + 2 * sum_d;
    r.moduli_real_dimension = 2 * (sum_n.get_si() - static_cast<long>(k));

    std::vector<unsigned long> mults(r.n.begin(), r.n.end());
    WeightSystem moduli = vp.target.with_multiplicities(mults);

    if (g >= 1) {
        r.jacobian_dimension = 2 * vp.genus * k;
        r.note = r.window_ok ? "fibre bundle over the Jacobian torus; no invariant computed"
                             : "fiber dimension jumps; out of scope";
        return out;
    }

    if (std::all_of(vp.tau.begin(), vp.tau.end(), [](const Rational& q) { return q == 0; }))
        throw PreconditionError("tau: non-regular tau (tau = 0)");
    const LevelClass level = classify_level(moduli, vp.tau);
    if (level.kind == LevelKind::on_wall) throw PreconditionError("tau: non-regular tau (lies on a wall)");
    r.empty = level.kind == LevelKind::outside_cone || !in_occupied_cone(moduli, vp.tau) || sum_n < k;
    r.orbifold = !r.empty && level.kind == LevelKind::regular;
    if (r.empty) {
        r.note = "empty moduli space";
        r.moduli_real_dimension = 0;
    }
    out.problem = ToricProblem{std::move(moduli), vp.tau, 1};
    return out;
}

Rational vortex_invariant(const VortexProblem& vp, EulerEngine& engine) {
    if (vp.genus != 0) throw PreconditionError("genus: vortex invariants are computed in genus 0 only");
    ModuliData md = moduli_data(vp);
    if (md.report.empty) return 0;
    MultiPoly x = vp.alpha;
    for (std::size_t i = 0; i < vp.target.size(); ++i)
        if (md.report.m[i] > 0) x = x * MultiPoly::linear_form(vp.target.weight(i)).pow(md.report.m[i]);
    return engine.euler_class(*md.problem, x);
}

Rational vortex_invariant(const VortexProblem& vp, std::uint64_t seed) {
    EulerOptions opts;
    opts.seed = seed;
    EulerEngine engine(opts);
    return vortex_invariant(vp, engine);
}

}  // namespace toricjk
