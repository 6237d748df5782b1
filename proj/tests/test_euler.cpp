#include <doctest.h>

#include <future>

#include "oracles.hpp"

using namespace toricjk;
using oracle::frac;
using oracle::ivec;
using oracle::system;

namespace {

MultiPoly P(const char* s, std::size_t k) { return MultiPoly::parse(s, k); }

Rational chi(const WeightSystem& ws, const RationalVector& tau, const MultiPoly& x, std::uint64_t seed = 0) {
    return euler_class(ToricProblem{ws, tau, 1}, x, seed);
}

const WeightSystem tri = system(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});

}  // namespace

TEST_CASE("projective spaces") {
    for (unsigned n = 2; n <= 6; ++n) {
        const WeightSystem ws = system(1, {{{1}, n}});
        CHECK(chi(ws, {1}, MultiPoly::variable(1, 0).pow(n - 1)) == 1);
        CHECK(chi(ws, {frac(5, 3)}, MultiPoly::variable(1, 0).pow(n - 1)) == 1);
    }
}

TEST_CASE("weighted projective line and products") {
    CHECK(chi(system(1, {{{1}, 1}, {{2}, 1}}), {1}, P("x1", 1)) == frac(1, 2));
    const WeightSystem p1p1 = system(2, {{{1, 0}, 2}, {{0, 1}, 2}});
    CHECK(chi(p1p1, {1, 1}, P("x1*x2", 2)) == 1);
    CHECK(chi(p1p1, {1, 1}, P("x1^2", 2)) == 0);
}

TEST_CASE("degree selectivity and projection to the selection degree") {
    const WeightSystem cp2 = system(1, {{{1}, 3}});
    CHECK(chi(cp2, {1}, P("x1", 1)) == 0);
    CHECK(chi(cp2, {1}, P("x1^2 + 5*x1 + 7", 1)) == 1);
    CHECK(chi(cp2, {1}, P("x1^3", 1)) == 0);
}

TEST_CASE("degenerate levels and systems") {
    CHECK(chi(tri, {-1, 0}, P("x1", 2)) == 0);
    CHECK_THROWS_WITH_AS(chi(tri, {1, 1}, P("x1", 2)), doctest::Contains("non-regular tau"), PreconditionError);
    CHECK_THROWS_AS(chi(tri, {0, 0}, P("x1", 2)), PreconditionError);
    CHECK_THROWS_AS(chi(system(1, {{{1}, 1}, {{-1}, 1}}), {1}, P("1", 1)), PreconditionError);
    // Empty V: all multiplicities zero.
    CHECK(chi(system(1, {{{1}, 0}}), {1}, P("1", 1)) == 0);
    // tau in the cone of all weights but not of the occupied ones.
    CHECK(chi(system(2, {{{1, 0}, 2}, {{0, 1}, 0}, {{1, 1}, 0}}), {2, 1}, P("x1", 2)) == 0);
    // n < k.
    CHECK(chi(system(2, {{{1, 0}, 1}, {{0, 1}, 0}}), {1, frac(1, 2)}, P("1", 2)) == 0);
}

TEST_CASE("rank zero is a point") {
    const WeightSystem pt(0, {});
    CHECK(euler_class(ToricProblem{pt, {}, 1}, MultiPoly::constant(0, 7)) == 7);
}

TEST_CASE("matches fixed-point localization on fixed examples") {
    const WeightSystem hirzebruch = system(2, {{{1, 0}, 1}, {{1, 0}, 1}, {{2, 1}, 1}, {{0, 1}, 1}});
    for (const auto& e : oracle::monomials(2, 2)) {
        const MultiPoly x = MultiPoly::monomial(e);
        CHECK(chi(hirzebruch, {5, 1}, x) == oracle::fixed_point_euler(hirzebruch, {5, 1}, x));
        CHECK(chi(hirzebruch, {1, 3}, x) == oracle::fixed_point_euler(hirzebruch, {1, 3}, x));
    }
    const WeightSystem orbi = system(2, {{{1, 1}, 1}, {{1, -1}, 1}, {{1, 0}, 1}});
    for (const auto& e : oracle::monomials(2, 1)) {
        const MultiPoly x = MultiPoly::monomial(e);
        CHECK(chi(orbi, {3, 1}, x) == oracle::fixed_point_euler(orbi, {3, 1}, x));
    }
}

TEST_CASE("path independence and the fixed-point oracle on random systems") {
    oracle::Rng rng(101);
    int systems = 0;
    while (systems < 12) {
        auto rp = oracle::random_problem(rng);
        if (!rp) continue;
        ++systems;
        const auto& p = rp->problem;
        const Rational ref = chi(p.weights, p.tau, rp->x, 0);
        for (std::uint64_t seed = 1; seed < 20; ++seed) CHECK(chi(p.weights, p.tau, rp->x, seed) == ref);
        CHECK(ref == oracle::fixed_point_euler(p.weights, p.tau, rp->x));
    }
}

TEST_CASE("cone scaling") {
    oracle::Rng rng(77);
    int systems = 0;
    while (systems < 8) {
        auto rp = oracle::random_problem(rng);
        if (!rp) continue;
        ++systems;
        RationalVector scaled = rp->problem.tau;
        const Rational lambda = frac(oracle::uniform(rng, 1, 9), oracle::uniform(rng, 1, 9));
        for (auto& t : scaled) t *= lambda;
        CHECK(chi(rp->problem.weights, scaled, rp->x) == chi(rp->problem.weights, rp->problem.tau, rp->x));
    }
}

TEST_CASE("block multiplicativity on CP^a x CP^b") {
    for (unsigned a = 1; a <= 3; ++a)
        for (unsigned b = 1; b <= 3; ++b) {
            const WeightSystem ws = system(2, {{{1, 0}, a + 1}, {{0, 1}, b + 1}});
            for (unsigned i = 0; i <= a + b; ++i) {
                const unsigned j = a + b - i;
                const Rational lhs = chi(ws, {2, 3}, MultiPoly::monomial({i, j}));
                const Rational r1 = chi(system(1, {{{1}, a + 1}}), {2}, MultiPoly::variable(1, 0).pow(i));
                const Rational r2 = chi(system(1, {{{1}, b + 1}}), {3}, MultiPoly::variable(1, 0).pow(j));
                CHECK(lhs == r1 * r2);
            }
        }
}

TEST_CASE("wall_crossing_difference examples") {
    for (unsigned n = 2; n <= 5; ++n) {
        const WeightSystem ws = system(1, {{{1}, n}});
        const auto walls = enumerate_walls(ws);
        CHECK(wall_crossing_difference(ws, walls[0], {0}, {1}, MultiPoly::variable(1, 0).pow(n - 1)) == 1);
    }
    const WeightSystem p1p1 = system(2, {{{1, 0}, 2}, {{0, 1}, 2}});
    Wall ray10;
    for (const auto& w : enumerate_walls(p1p1))
        if (w.index_set == std::vector<std::size_t>{0}) ray10 = w;
    CHECK(wall_crossing_difference(p1p1, ray10, {1, 0}, {0, 1}, P("x1*x2", 2)) == 1);
    CHECK(chi(p1p1, {1, frac(1, 10)}, P("x1*x2", 2)) - chi(p1p1, {1, frac(-1, 10)}, P("x1*x2", 2)) == 1);
    CHECK(wall_crossing_difference(p1p1, ray10, {1, 0}, {0, 1}, P("x1", 2)) == 0);
    CHECK_THROWS_AS(wall_crossing_difference(p1p1, ray10, {1, 0}, {1, 0}, P("x1*x2", 2)), PreconditionError);
    CHECK_THROWS_AS(wall_crossing_difference(p1p1, ray10, {0, 0}, {0, 1}, P("x1*x2", 2)), PreconditionError);
    CHECK_THROWS_AS(wall_crossing_difference(p1p1, ray10, {-1, 0}, {0, 1}, P("x1*x2", 2)), PreconditionError);
}

TEST_CASE("crossing identity on random systems") {
    oracle::Rng rng(55);
    int checked = 0;
    int attempts = 0;
    while (checked < 40 && attempts < 4000) {
        ++attempts;
        auto rp = oracle::random_problem(rng, 2, 3);
        if (!rp) continue;
        const auto& ws = rp->problem.weights;
        const auto walls = enumerate_walls(ws);
        const Wall& wall = walls[static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<long>(walls.size()) - 1))];
        // A generic point of the wall cone.
        RationalVector tau0(ws.rank(), 0);
        for (auto i : wall.index_set) {
            const Rational c = frac(oracle::uniform(rng, 1, 7), 3);
            for (std::size_t j = 0; j < ws.rank(); ++j) tau0[j] += c * ws.weight(i)[j];
        }
        if (classify_level(ws, tau0, walls).kind != LevelKind::on_wall) continue;
        int containing = 0;
        for (const auto& w : walls) containing += wall_contains(ws, w, tau0);
        if (containing != 1) continue;
        RationalVector eta(ws.rank());
        for (auto& e : eta) e = frac(oracle::uniform(rng, -5, 5), oracle::uniform(rng, 1, 4));
        if (dot(wall.normal, eta) == 0) continue;
        const Rational eps = frac(1, 4096);
        RationalVector plus = tau0, minus = tau0;
        for (std::size_t j = 0; j < ws.rank(); ++j) {
            plus[j] += eps * eta[j];
            minus[j] -= eps * eta[j];
        }
        auto regular = [&](const RationalVector& t) {
            const auto kind = classify_level(ws, t, walls).kind;
            return kind != LevelKind::on_wall;
        };
        if (!regular(plus) || !regular(minus)) continue;
        ++checked;
        const unsigned deg = static_cast<unsigned>(ws.total_multiplicity() - ws.rank());
        for (const auto& e : oracle::monomials(ws.rank(), deg)) {
            const MultiPoly x = MultiPoly::monomial(e);
            CHECK(chi(ws, plus, x) - chi(ws, minus, x) == wall_crossing_difference(ws, wall, tau0, eta, x));
        }
    }
    CHECK(checked == 40);
}

TEST_CASE("engine options do not change results") {
    oracle::Rng rng(31);
    int systems = 0;
    while (systems < 6) {
        auto rp = oracle::random_problem(rng, 2, 3);
        if (!rp) continue;
        ++systems;
        EulerOptions serial;
        EulerOptions parallel;
        parallel.parallel = true;
        EulerOptions nomemo;
        nomemo.memoize = false;
        const Rational a = EulerEngine(serial).euler_class(rp->problem, rp->x);
        CHECK(EulerEngine(parallel).euler_class(rp->problem, rp->x) == a);
        CHECK(EulerEngine(nomemo).euler_class(rp->problem, rp->x) == a);
        EulerEngine tracer;
        const TraceNode t = tracer.trace(rp->problem, rp->x);
        CHECK(t.value == a);
        Rational sum = 0;
        for (const auto& c : t.crossings) sum += c.subtotal;
        if (!t.crossings.empty()) CHECK(sum == a);
        // Every crossing's reduced class was checked for e1-invariance.
        const EulerStats s = tracer.stats();
        CHECK(s.invariance_checks == s.crossings);
    }
}

TEST_CASE("orientation sign is applied once at the top") {
    const WeightSystem ws = system(1, {{{1}, 3}});
    CHECK(euler_class(ToricProblem{ws, {1}, -1}, P("x1^2", 1)) == -1);
}

TEST_CASE("chamber_key separates chambers and ignores scaling") {
    CHECK(chamber_key(tri, {2, 1}) == chamber_key(tri, {6, 3}));
    CHECK(chamber_key(tri, {2, 1}) != chamber_key(tri, {1, 2}));
}

TEST_CASE("one engine shared across threads gives the serial results") {
    oracle::Rng rng(61);
    std::vector<oracle::RandomProblem> problems;
    while (problems.size() < 8)
        if (auto rp = oracle::random_problem(rng, 2, 3)) problems.push_back(*rp);
    std::vector<Rational> serial;
    for (const auto& p : problems) serial.push_back(euler_class(p.problem, p.x));
    EulerEngine shared;
    std::vector<std::future<Rational>> parts;
    for (int round = 0; round < 3; ++round)
        for (const auto& p : problems)
            parts.push_back(std::async(std::launch::async, [&shared, &p] { return shared.euler_class(p.problem, p.x); }));
    for (std::size_t i = 0; i < parts.size(); ++i) CHECK(parts[i].get() == serial[i % problems.size()]);
    CHECK(shared.stats().memo_hits > 0);
}
