#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricjk/euler.hpp"

namespace toricjk {

/// Gauged sigma model data: a torus acting on C^N with one entry per line,
/// a degree kappa in the lattice, a class alpha and the genus of the surface.
struct VortexProblem {
    WeightSystem target;
    RationalVector tau;
    IntegerVector kappa;
    MultiPoly alpha;
    unsigned genus = 0;
};

struct ModuliReport {
    std::vector<Integer> degrees;             // d_nu = <w_nu, kappa>
    std::vector<unsigned long> n;             // holomorphic sections
    std::vector<unsigned long> m;             // obstruction rank
    long moduli_real_dimension = 0;           // 2(sum n - k); fibre dimension for genus >= 1
    Integer index;                            // real index of the problem
    bool orbifold = false;                    // tau regular but not super-regular for the moduli weights
    bool empty = false;                       // tau outside the moment image of the moduli weights
    unsigned genus = 0;
    unsigned long jacobian_dimension = 0;     // 2 g k, genus >= 1 only
    bool window_ok = true;                    // genus >= 1: every d_nu > 2g-2 or d_nu < 0
    std::string note;
};

struct ModuliData {
    ModuliReport report;
    std::optional<ToricProblem> problem;  // genus 0 only
};

ModuliData moduli_data(const VortexProblem& vp);

/// Psi(alpha) = chi(alpha * prod w_nu^{m_nu}) on the genus-0 moduli problem.
Rational vortex_invariant(const VortexProblem& vp, EulerEngine& engine);
Rational vortex_invariant(const VortexProblem& vp, std::uint64_t seed = 0);

}  // namespace toricjk
