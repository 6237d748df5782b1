#include "toricjk/selftest.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "toricjk/euler.hpp"
#include "toricjk/localization.hpp"
#include "toricjk/vortex.hpp"

namespace toricjk {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_rational(Rng& rng, long bound) {
    return make_rational(uniform(rng, -bound, bound), uniform(rng, 1, bound));
}

// Coefficient list of 1/(c + u)^m around u = 0, up to order `len`.
std::vector<Rational> inverse_power_series(const Rational& c, unsigned m, std::size_t len) {
    std::vector<Rational> out(len);
    Rational cm = 1;
    for (unsigned i = 0; i < m; ++i) cm *= c;
    Rational term = 1 / cm;  // s = 0
    for (std::size_t s = 0; s < len; ++s) {
        out[s] = term;
        term *= make_rational(-static_cast<long>(m + s), static_cast<long>(s + 1)) / c;
    }
    return out;
}

std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t len) {
    std::vector<Rational> out(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Sum of residues of num(z) / prod (z - p_i)^{m_i}, one pole at a time.
Rational partial_fraction_sum(const std::vector<Rational>& num, const std::vector<Rational>& poles,
                              const std::vector<unsigned>& mults) {
    Rational total = 0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const std::size_t len = mults[i];
        std::vector<Rational> local(len);
        for (std::size_t d = 0; d < num.size(); ++d) {
            // (p + u)^d = sum_j C(d, j) p^{d-j} u^j
            Integer c = 1;
            for (std::size_t j = 0; j <= d && j < len; ++j) {
                Rational pw = 1;
                for (std::size_t t = 0; t < d - j; ++t) pw *= poles[i];
                local[j] += num[d] * Rational(c) * pw;
                c = c * Integer(static_cast<unsigned long>(d - j)) / Integer(static_cast<unsigned long>(j + 1));
            }
        }
        for (std::size_t j = 0; j < poles.size(); ++j)
            if (j != i) local = series_mul(local, inverse_power_series(poles[i] - poles[j], mults[j], len), len);
        total += local[len - 1];
    }
    return total;
}

SelftestResult check_residues(Rng& rng) {
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t npoles = static_cast<std::size_t>(uniform(rng, 1, 4));
        std::vector<Rational> poles;
        std::vector<unsigned> mults;
        while (poles.size() < npoles) {
            Rational p = random_rational(rng, 5);
            if (std::find(poles.begin(), poles.end(), p) != poles.end()) continue;
            poles.push_back(p);
            mults.push_back(static_cast<unsigned>(uniform(rng, 1, 3)));
        }
        std::vector<Rational> num(static_cast<std::size_t>(uniform(rng, 1, 8)));
        for (auto& c : num) c = random_rational(rng, 6);

        std::vector<MultiPoly> zc;
        for (const auto& c : num) zc.push_back(MultiPoly::constant(0, c));
        std::vector<LinearFactor> factors;
        for (std::size_t i = 0; i < npoles; ++i)
            factors.push_back({ZPoly::linear(MultiPoly::constant(0, -poles[i]), MultiPoly::constant(0, 1)), mults[i]});
        const Rational got = total_residue(ZPoly(zc), factors).coefficient(Exponent{});
        const Rational want = partial_fraction_sum(num, poles, mults);
        if (got != want) return {"residues", false, "trial " + std::to_string(trial) + ": " + to_string(got) + " vs " + to_string(want)};
    }
    return {"residues", true, "40 random instances"};
}

SelftestResult check_colinear(Rng& rng) {
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 2));
        IntegerVector w(k);
        do {
            for (auto& z : w) z = uniform(rng, -2, 2);
        } while (gcd_of(w) == 0);
        w = make_primitive(w);
        std::vector<WeightEntry> entries;
        const long big_n = uniform(rng, 1, 3);
        for (long i = 0; i < big_n; ++i) {
            IntegerVector wi = w;
            const long l = uniform(rng, 1, 2);
            for (auto& z : wi) z *= l;
            entries.push_back({wi, static_cast<unsigned long>(uniform(rng, 1, 3))});
        }
        IntegerVector e1(k);
        do {
            for (auto& z : e1) z = uniform(rng, -2, 2);
        } while (dot(w, e1) == 0);
        MultiPoly x(k);
        const unsigned deg = static_cast<unsigned>(uniform(rng, 0, 4));
        for (int t = 0; t < 3; ++t) {
            Exponent e(k, 0);
            unsigned left = deg;
            for (std::size_t i = 0; i + 1 < k; ++i) {
                e[i] = static_cast<unsigned>(uniform(rng, 0, left));
                left -= e[i];
            }
            e[k - 1] = left;
            x.add_term(e, random_rational(rng, 4));
        }
        const WeightSystem ws(k, entries);
        const MultiPoly a = sphere_pushforward(ws, x, e1);
        const MultiPoly b = colinear_pushforward(ws, x, e1);
        if (a != b) return {"colinear pushforward", false, a.to_string() + " vs " + b.to_string()};
    }
    return {"colinear pushforward", true, "30 random colinear systems"};
}

SelftestResult check_projective() {
    for (unsigned n = 2; n <= 6; ++n) {
        ToricProblem p{WeightSystem(1, {{IntegerVector{1}, n}}), RationalVector{1}, 1};
        const Rational v = euler_class(p, MultiPoly::variable(1, 0).pow(n - 1));
        if (v != 1) return {"projective spaces", false, "n = " + std::to_string(n) + ": " + to_string(v)};
    }
    return {"projective spaces", true, "CP^1..CP^5"};
}

// Random proper system with a regular level and a class of the selection degree.
struct RandomProblem {
    ToricProblem problem;
    MultiPoly x;
};

std::optional<RandomProblem> random_problem(Rng& rng) {
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 2, 3));
    const std::size_t big_n = static_cast<std::size_t>(uniform(rng, static_cast<long>(k), 5));
    std::vector<WeightEntry> entries;
    for (std::size_t i = 0; i < big_n; ++i) {
        IntegerVector w(k);
        do {
            for (auto& z : w) z = uniform(rng, 0, 2);
        } while (gcd_of(w) == 0);
        entries.push_back({w, static_cast<unsigned long>(uniform(rng, 1, 3))});
    }
    WeightSystem ws(k, entries);
    if (!ws.spans()) return std::nullopt;
    RationalVector tau(k, 0);
    for (const auto& e : entries) {
        const Rational c(uniform(rng, 1, 5));
        for (std::size_t i = 0; i < k; ++i) tau[i] += c * Rational(e.weight[i]);
    }
    for (auto& t : tau) t += make_rational(uniform(rng, -3, 3), 7);
    const LevelKind kind = classify_level(ws, tau).kind;
    if (kind != LevelKind::regular && kind != LevelKind::super_regular) return std::nullopt;
    const unsigned deg = static_cast<unsigned>(ws.total_multiplicity() - k);
    MultiPoly x(k);
    for (int t = 0; t < 3; ++t) {
        Exponent e(k, 0);
        for (unsigned d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) - 1))];
        x.add_term(e, Rational(uniform(rng, 1, 5)));
    }
    return RandomProblem{ToricProblem{ws, tau, 1}, x};
}

SelftestResult check_path_independence(Rng& rng) {
    int systems = 0;
    while (systems < 3) {
        auto rp = random_problem(rng);
        if (!rp) continue;
        ++systems;
        const Rational ref = euler_class(rp->problem, rp->x, 0);
        for (std::uint64_t seed = 1; seed < 5; ++seed) {
            const Rational v = euler_class(rp->problem, rp->x, seed);
            if (v != ref) return {"path independence", false, "seed " + std::to_string(seed) + ": " + to_string(v) + " vs " + to_string(ref)};
        }
    }
    return {"path independence", true, "3 random systems, 5 seeds"};
}

SelftestResult check_crossing_identity() {
    const WeightSystem ws(2, {{IntegerVector{1, 0}, 1}, {IntegerVector{0, 1}, 1}, {IntegerVector{1, 1}, 1}});
    const RationalVector eta{make_rational(1, 3), make_rational(-1, 2)};
    const Rational eps = make_rational(1, 20);
    for (const auto& wall : enumerate_walls(ws)) {
        RationalVector tau0 = to_rational(ws.weight(wall.index_set.front()));
        for (auto& t : tau0) t *= 2;
        for (unsigned a = 0; a <= 1; ++a) {
            MultiPoly x = MultiPoly::monomial(Exponent{a, 1 - a});
            RationalVector plus = tau0, minus = tau0;
            const Rational s = dot(wall.normal, eta) > 0 ? eps : -eps;
            for (std::size_t i = 0; i < 2; ++i) {
                plus[i] += s * eta[i];
                minus[i] -= s * eta[i];
            }
            const Rational lhs = euler_class({ws, plus, 1}, x) - euler_class({ws, minus, 1}, x);
            const RationalVector dir = s > 0 ? eta : RationalVector{-eta[0], -eta[1]};
            const Rational rhs = wall_crossing_difference(ws, wall, tau0, dir, x);
            if (lhs != rhs)
                return {"crossing identity", false, "wall " + std::to_string(wall.index_set.front() + 1) + ": " +
                                                        to_string(lhs) + " vs " + to_string(rhs)};
        }
    }
    return {"crossing identity", true, "3 walls, full monomial basis"};
}

SelftestResult check_classification(Rng& rng) {
    const WeightSystem ws(2, {{IntegerVector{1, 0}, 1}, {IntegerVector{0, 1}, 1}, {IntegerVector{1, 1}, 1}});
    const auto walls = enumerate_walls(ws);
    for (int i = 0; i < 100; ++i) {
        RationalVector tau{Rational(uniform(rng, -3, 3)), Rational(uniform(rng, -3, 3))};
        const bool on = std::any_of(walls.begin(), walls.end(), [&](const Wall& w) { return wall_contains(ws, w, tau); });
        const LevelKind kind = classify_level(ws, tau, walls).kind;
        if (kind == LevelKind::outside_cone) {
            if (in_occupied_cone(ws, tau)) return {"classification", false, "outside_cone inside the cone"};
            continue;
        }
        if ((kind == LevelKind::on_wall) != on) return {"classification", false, "disagreement at " + to_string(tau[0]) + "," + to_string(tau[1])};
    }
    return {"classification", true, "100 grid points"};
}

SelftestResult check_vortex() {
    const WeightSystem target(1, {{IntegerVector{1}, 1}, {IntegerVector{1}, 1}});
    for (long d = 0; d <= 3; ++d) {
        VortexProblem vp{target, RationalVector{1}, IntegerVector{Integer(d)},
                         MultiPoly::variable(1, 0).pow(static_cast<unsigned>(2 * d + 1)), 0};
        const Rational v = vortex_invariant(vp);
        if (v != 1) return {"vortex CP^1", false, "d = " + std::to_string(d) + ": " + to_string(v)};
    }
    return {"vortex CP^1", true, "d = 0..3"};
}

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<std::pair<std::string, std::function<SelftestResult()>>> suites = {
        {"residues", [&] { return check_residues(rng); }},
        {"colinear pushforward", [&] { return check_colinear(rng); }},
        {"projective spaces", [] { return check_projective(); }},
        {"path independence", [&] { return check_path_independence(rng); }},
        {"crossing identity", [] { return check_crossing_identity(); }},
        {"classification", [&] { return check_classification(rng); }},
        {"vortex CP^1", [] { return check_vortex(); }},
    };
    std::vector<SelftestResult> out;
    for (const auto& [name, suite] : suites) {
        try {
            out.push_back(suite());
        } catch (const std::exception& e) {
            out.push_back({name, false, e.what()});
        }
    }
    return out;
}

}  // namespace toricjk
