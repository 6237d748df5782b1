#include <doctest.h>

#include "oracles.hpp"

using namespace toricjk;
using oracle::frac;
using oracle::ivec;

namespace {

MultiPoly P(const char* s, std::size_t k) { return MultiPoly::parse(s, k); }

LinearFactor lin(std::size_t k, const MultiPoly& a, const Rational& b, unsigned m) {
    return {ZPoly::linear(a, MultiPoly::constant(k, b)), m};
}

ZPoly zconst(const std::vector<Rational>& c) {
    std::vector<MultiPoly> m;
    for (const auto& q : c) m.push_back(MultiPoly::constant(0, q));
    return ZPoly(m);
}

}  // namespace

TEST_CASE("parsing and rendering") {
    const MultiPoly p = P("3/2*x1^2*x2 - x3 + 4", 3);
    CHECK(p.coefficient({2, 1, 0}) == frac(3, 2));
    CHECK(p.coefficient({0, 0, 1}) == -1);
    CHECK(p.coefficient({0, 0, 0}) == 4);
    CHECK(p.to_string() == "3/2*x1^2*x2 - x3 + 4");
    CHECK(P(p.to_string().c_str(), 3) == p);
    CHECK(P("x1*x1 - x1^2", 1).is_zero());
    CHECK(P(" 2 * x1 ^ 2 ", 1) == P("2*x1^2", 1));
    CHECK_THROWS_AS(P("x4", 3), ValidationError);
    CHECK_THROWS_AS(P("x1^", 1), ValidationError);
    CHECK_THROWS_AS(P("x1 +", 1), ValidationError);
}

TEST_CASE("degree bookkeeping") {
    const MultiPoly p = P("x1^3 + x1*x2 + 2", 2);
    CHECK(p.degree() == 3);
    CHECK(p.min_degree() == 0);
    CHECK_FALSE(p.is_homogeneous());
    CHECK(p.homogeneous_part(2) == P("x1*x2", 2));
    CHECK(p.homogeneous_part(1).is_zero());
}

TEST_CASE("substitute_line examples") {
    const ZPoly a = substitute_line(P("x1", 2), ivec({1, 0}));
    CHECK(a.degree() == 1);
    CHECK(a.coeff(0) == P("x1", 2));
    CHECK(a.coeff(1) == P("1", 2));

    const ZPoly b = substitute_line(P("x1*x2", 2), ivec({1, 1}));
    CHECK(b.coeff(0) == P("x1*x2", 2));
    CHECK(b.coeff(1) == P("x1 + x2", 2));
    CHECK(b.coeff(2) == P("1", 2));

    const ZPoly c = substitute_line(P("5", 2), ivec({3, -1}));
    CHECK(c.degree() == 0);
    CHECK(c.coeff(0) == P("5", 2));
}

TEST_CASE("substitute_line: z^0 term is p, z^1 term is the directional derivative") {
    oracle::Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        MultiPoly p(2);
        for (int t = 0; t < 4; ++t)
            p.add_term({static_cast<unsigned>(oracle::uniform(rng, 0, 3)), static_cast<unsigned>(oracle::uniform(rng, 0, 3))},
                       frac(oracle::uniform(rng, -5, 5), 3));
        const IntegerVector e = ivec({oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2)});
        const ZPoly z = substitute_line(p, e);
        CHECK(z.coeff(0) == p);
        MultiPoly deriv(2);
        for (const auto& [exp, c] : p.terms())
            for (std::size_t i = 0; i < 2; ++i) {
                if (exp[i] == 0) continue;
                Exponent d = exp;
                --d[i];
                deriv.add_term(d, c * Rational(exp[i]) * Rational(e[i]));
            }
        CHECK(z.coeff(1) == deriv);
    }
}

TEST_CASE("total_residue examples") {
    const std::size_t k = 0;
    const LinearFactor zm1[] = {lin(k, MultiPoly::constant(k, -1), 1, 1)};
    CHECK(total_residue(zconst({1}), zm1) == MultiPoly::constant(k, 1));

    const LinearFactor z2[] = {lin(k, MultiPoly(k), 1, 2)};
    CHECK(total_residue(zconst({1}), z2).is_zero());

    const LinearFactor z3[] = {lin(k, MultiPoly(k), 2, 3)};
    CHECK(total_residue(zconst({0, 0, 1}), z3) == MultiPoly::constant(k, frac(1, 8)));

    // (x1 + z) / ((x1 + z)(x2 + z)) has residue sum 1.
    const ZPoly num = ZPoly::linear(P("x1", 2), P("1", 2));
    const LinearFactor f[] = {lin(2, P("x1", 2), 1, 1), lin(2, P("x2", 2), 1, 1)};
    CHECK(total_residue(num, f) == P("1", 2));
}

TEST_CASE("total_residue rejects a non-constant leading coefficient") {
    const ZPoly bad = ZPoly::linear(P("1", 1), P("x1", 1));
    const LinearFactor f[] = {{bad, 1}};
    CHECK_THROWS_AS(total_residue(ZPoly::linear(P("1", 1), MultiPoly(1)), f), InvariantError);
    const LinearFactor g[] = {{ZPoly::linear(P("x1", 1), MultiPoly(1)), 1}};
    CHECK_THROWS_AS(total_residue(ZPoly::linear(P("1", 1), MultiPoly(1)), g), InvariantError);
}

TEST_CASE("total_residue matches the partial-fraction oracle") {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t npoles = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
        std::vector<Rational> poles;
        std::vector<unsigned> mults;
        while (poles.size() < npoles) {
            const Rational p = frac(oracle::uniform(rng, -9, 9), oracle::uniform(rng, 1, 4));
            if (std::find(poles.begin(), poles.end(), p) != poles.end()) continue;
            poles.push_back(p);
            mults.push_back(static_cast<unsigned>(oracle::uniform(rng, 1, 3)));
        }
        std::vector<Rational> num(static_cast<std::size_t>(oracle::uniform(rng, 1, 10)));
        for (auto& c : num) c = frac(oracle::uniform(rng, -9, 9), oracle::uniform(rng, 1, 5));
        // Scale each factor by a random constant b: (b z - b p).
        std::vector<LinearFactor> factors;
        Rational scale = 1;
        for (std::size_t i = 0; i < npoles; ++i) {
            const Rational b = frac(oracle::uniform(rng, 1, 3) * (oracle::uniform(rng, 0, 1) ? 1 : -1), oracle::uniform(rng, 1, 2));
            factors.push_back(lin(0, MultiPoly::constant(0, -b * poles[i]), b, mults[i]));
            for (unsigned m = 0; m < mults[i]; ++m) scale *= b;
        }
        const Rational want = oracle::partial_fraction_residue_sum(num, poles, mults) / scale;
        CHECK(total_residue(zconst(num), factors).coefficient({}) == want);
    }
}

TEST_CASE("total_residue: degree drop, linearity and translation invariance") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<LinearFactor> factors;
        unsigned big_m = 0;
        const std::size_t npoles = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
        std::vector<Rational> poles;
        std::vector<unsigned> mults;
        for (std::size_t i = 0; i < npoles; ++i) {
            poles.push_back(frac(oracle::uniform(rng, -5, 5), oracle::uniform(rng, 1, 3)));
            mults.push_back(static_cast<unsigned>(oracle::uniform(rng, 1, 3)));
            big_m += mults.back();
        }
        auto build = [&](const Rational& shift) {
            std::vector<LinearFactor> fs;
            for (std::size_t i = 0; i < npoles; ++i) fs.push_back(lin(0, MultiPoly::constant(0, -(poles[i] - shift)), 1, mults[i]));
            return fs;
        };
        factors = build(0);
        std::vector<Rational> a(static_cast<std::size_t>(oracle::uniform(rng, 1, 7))), b(a.size());
        for (auto& c : a) c = frac(oracle::uniform(rng, -5, 5), 2);
        for (auto& c : b) c = frac(oracle::uniform(rng, -5, 5), 3);

        if (big_m >= 2) {
            std::vector<Rational> low(big_m - 1);
            for (auto& c : low) c = frac(oracle::uniform(rng, -5, 5), 7);
            CHECK(total_residue(zconst(low), factors).is_zero());
        }

        std::vector<Rational> sum(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) sum[i] = 2 * a[i] - b[i];
        CHECK(total_residue(zconst(sum), factors) ==
              2 * total_residue(zconst(a), factors) - total_residue(zconst(b), factors));

        // Translating z by s: num(z + s) over factors with shifted poles.
        const Rational s = oracle::uniform(rng, -3, 3);
        ZPoly shifted = zconst({});
        ZPoly power = zconst({1});
        const ZPoly zs = zconst({s, 1});
        for (const auto& c : a) {
            shifted += zconst({c}) * power;
            power = power * zs;
        }
        CHECK(total_residue(shifted, build(s)) == total_residue(zconst(a), factors));
    }
}

TEST_CASE("restrict_off_direction examples") {
    const MultiPoly a = restrict_off_direction(P("x2", 2), ivec({1, 0}));
    CHECK(a.nvars() == 1);
    CHECK(a.degree() == 1);
    CHECK(a.term_count() == 1);

    const MultiPoly b = restrict_off_direction(P("x1 - x2", 2), ivec({1, 1}));
    CHECK(b.nvars() == 1);
    CHECK_FALSE(b.is_zero());
    // In the coordinates xi = U eta the class depends on eta_1 only.
    const IntegerMatrix u = hermite_extend(ivec({1, 1}));
    IntegerMatrix lift(1, 2);
    lift(0, 0) = 1;
    CHECK(P("x1 - x2", 2).compose_linear(u) == b.compose_linear(lift));

    CHECK_THROWS_AS(restrict_off_direction(P("x1", 2), ivec({1, 0})), InvariantError);
}

TEST_CASE("is_shift_invariant") {
    CHECK(is_shift_invariant(P("x1 - x2", 2), ivec({1, 1})));
    CHECK_FALSE(is_shift_invariant(P("x1", 2), ivec({1, 1})));
    CHECK(is_shift_invariant(P("x2^3 + 4", 2), ivec({1, 0})));
}
