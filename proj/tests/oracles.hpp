#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the residue or wall-crossing code.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "toricjk/euler.hpp"

namespace oracle {

using namespace toricjk;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational frac(long p, long q) { return make_rational(p, q); }

// Solves A x = b by Gauss-Jordan elimination. A may be non-square; returns
// nullopt if inconsistent. Free variables are set to zero.
inline std::optional<RationalVector> gauss_solve(std::vector<RationalVector> a, RationalVector b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    RationalVector x(cols, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

// Univariate polynomial helpers, coefficient index = power.
using UPoly = std::vector<Rational>;

inline UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline UPoly upow_linear(const Rational& root, unsigned e) {
    UPoly out{1};
    for (unsigned i = 0; i < e; ++i) out = umul(out, UPoly{-root, 1});
    return out;
}

// Sum of residues of num / prod (z - p_i)^{m_i}: solve for the partial
// fraction decomposition num = Q D + sum_{i,r} A_ir D / (z - p_i)^r by
// linear algebra and add up the A_i1.
inline Rational partial_fraction_residue_sum(const UPoly& num, const std::vector<Rational>& poles,
                                             const std::vector<unsigned>& mults) {
    UPoly d{1};
    unsigned big_m = 0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        d = umul(d, upow_linear(poles[i], mults[i]));
        big_m += mults[i];
    }
    const long qdeg = static_cast<long>(num.size()) - 1 - static_cast<long>(big_m);
    std::vector<UPoly> columns;
    for (long j = 0; j <= qdeg; ++j) {
        UPoly zj(static_cast<std::size_t>(j) + 1, 0);
        zj.back() = 1;
        columns.push_back(umul(zj, d));
    }
    std::vector<std::pair<std::size_t, unsigned>> labels;
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (unsigned r = 1; r <= mults[i]; ++r) {
            UPoly col{1};
            for (std::size_t j = 0; j < poles.size(); ++j)
                col = umul(col, upow_linear(poles[j], j == i ? mults[j] - r : mults[j]));
            columns.push_back(col);
            labels.push_back({i, r});
        }
    std::size_t len = num.size();
    for (const auto& c : columns) len = std::max(len, c.size());
    std::vector<RationalVector> a(len, RationalVector(columns.size(), 0));
    RationalVector b(len, 0);
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t p = 0; p < columns[c].size(); ++p) a[p][c] = columns[c][p];
    for (std::size_t p = 0; p < num.size(); ++p) b[p] = num[p];
    const auto sol = gauss_solve(a, b);
    Rational total = 0;
    const std::size_t offset = qdeg >= 0 ? static_cast<std::size_t>(qdeg) + 1 : 0;
    for (std::size_t l = 0; l < labels.size(); ++l)
        if (labels[l].second == 1) total += (*sol)[offset + l];
    return total;
}

// gcd of all maximal minors; the vectors generate Z^k iff it is 1.
inline Integer minors_gcd(const std::vector<IntegerVector>& vectors, std::size_t k) {
    Integer g = 0;
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            IntegerMatrix m(k, k);
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t r = 0; r < k; ++r) m(r, c) = vectors[idx[c]][r];
            const Integer det = determinant(m);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
            return;
        }
        for (std::size_t i = start; i < vectors.size(); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (k == 0) return 1;
    rec(0, 0);
    return abs(g);
}

template <typename F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
    std::vector<std::size_t> idx(r);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == r) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

// Nonnegative coefficients on the given vectors reaching target, by trying
// every linearly independent subset (Caratheodory).
inline bool in_cone_bruteforce(const std::vector<IntegerVector>& vectors, const RationalVector& target) {
    const std::size_t k = target.size();
    if (std::all_of(target.begin(), target.end(), [](const Rational& q) { return q == 0; })) return true;
    bool found = false;
    for (std::size_t r = 1; r <= std::min(k, vectors.size()) && !found; ++r)
        for_each_subset(vectors.size(), r, [&](const std::vector<std::size_t>& idx) {
            if (found) return;
            std::vector<RationalVector> a(k, RationalVector(r));
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t i = 0; i < k; ++i) a[i][c] = vectors[idx[c]][i];
            auto sol = gauss_solve(a, target);
            if (!sol) return;
            // Reconstruct to make sure the free-variable choice did not matter.
            RationalVector back(k, 0);
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t i = 0; i < k; ++i) back[i] += (*sol)[c] * a[i][c];
            if (back == target && std::all_of(sol->begin(), sol->end(), [](const Rational& q) { return q >= 0; }))
                found = true;
        });
    return found;
}

// Direct reading of the definition: tau is non-regular iff it is a
// nonnegative combination of weights spanning a proper subspace.
inline bool nonregular_bruteforce(const WeightSystem& ws, const RationalVector& tau) {
    const std::size_t k = ws.rank();
    const auto all = ws.weights();
    bool hit = false;
    for (std::size_t r = 0; r < k && !hit; ++r)
        for_each_subset(all.size(), r, [&](const std::vector<std::size_t>& idx) {
            if (hit) return;
            std::vector<IntegerVector> sub;
            for (auto i : idx) sub.push_back(all[i]);
            if (rank_of(std::span<const IntegerVector>(sub)) != r) return;
            if (r == 0) {
                hit = std::all_of(tau.begin(), tau.end(), [](const Rational& q) { return q == 0; });
                return;
            }
            if (in_cone_bruteforce(sub, tau)) hit = true;
        });
    return hit;
}

// Fixed-point localization for the residual torus T^N / T. Each entry of
// multiplicity n contributes n coordinate lines with equivariant parameters
// u. A fixed point is a basis J of lines with tau in the open cone of w_J;
// there xi_J solves <w_j, xi> = u_j (j in J), the stabiliser has order
// |det w_J|, and the tangent weights are <w_nu, xi_J> - u_nu for nu not in J.
// The sum is independent of u; it is evaluated at a random rational point.
inline Rational fixed_point_euler(const WeightSystem& ws, const RationalVector& tau, const MultiPoly& x,
                                  std::uint64_t seed = 1) {
    const std::size_t k = ws.rank();
    std::vector<IntegerVector> lines;
    for (const auto& e : ws.entries())
        for (unsigned long i = 0; i < e.multiplicity; ++i) lines.push_back(e.weight);
    const MultiPoly selected = x.homogeneous_part(static_cast<unsigned>(lines.size() >= k ? lines.size() - k : 0));
    if (lines.size() < k) return 0;
    Rng rng(seed);
    for (int attempt = 0; attempt < 50; ++attempt) {
        RationalVector u;
        for (std::size_t i = 0; i < lines.size(); ++i) u.push_back(frac(uniform(rng, -1000, 1000), uniform(rng, 1, 97)));
        Rational total = 0;
        bool degenerate = false;
        for_each_subset(lines.size(), k, [&](const std::vector<std::size_t>& idx) {
            if (degenerate) return;
            IntegerMatrix m(k, k);
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t r = 0; r < k; ++r) m(r, c) = lines[idx[c]][r];
            const Integer det = determinant(m);
            if (det == 0) return;
            std::vector<RationalVector> cols(k, RationalVector(k));
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t r = 0; r < k; ++r) cols[r][c] = lines[idx[c]][r];
            const auto coeff = gauss_solve(cols, tau);
            if (!std::all_of(coeff->begin(), coeff->end(), [](const Rational& q) { return q > 0; })) return;
            std::vector<RationalVector> rows(k, RationalVector(k));
            RationalVector rhs(k);
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t i = 0; i < k; ++i) rows[j][i] = lines[idx[j]][i];
                rhs[j] = u[idx[j]];
            }
            const RationalVector xi = *gauss_solve(rows, rhs);
            Rational denom = abs(Rational(det));
            for (std::size_t nu = 0; nu < lines.size(); ++nu) {
                if (std::find(idx.begin(), idx.end(), nu) != idx.end()) continue;
                const Rational t = dot(lines[nu], xi) - u[nu];
                if (t == 0) degenerate = true;
                denom *= t;
            }
            if (!degenerate) total += selected.evaluate(xi) / denom;
        });
        if (!degenerate) return total;
    }
    throw std::runtime_error("fixed_point_euler: no generic parameter found");
}

// A proper system with k <= 3, N <= 5 entries, multiplicities <= 3, a
// regular level tau, and a random class of the selection degree.
struct RandomProblem {
    ToricProblem problem;
    MultiPoly x;
};

inline std::optional<RandomProblem> random_problem(Rng& rng, std::size_t kmin = 1, std::size_t kmax = 3) {
    const std::size_t k = static_cast<std::size_t>(uniform(rng, static_cast<long>(kmin), static_cast<long>(kmax)));
    const std::size_t big_n = static_cast<std::size_t>(uniform(rng, static_cast<long>(k), 5));
    std::vector<WeightEntry> entries;
    // Fix a random properness direction: all weights pair positively with c.
    IntegerVector c(k);
    for (auto& z : c) z = uniform(rng, 1, 2);
    while (entries.size() < big_n) {
        IntegerVector w(k);
        for (auto& z : w) z = uniform(rng, -1, 2);
        if (dot(w, c) <= 0) continue;
        entries.push_back({w, static_cast<unsigned long>(uniform(rng, 1, 3))});
    }
    WeightSystem ws(k, entries);
    if (!ws.spans()) return std::nullopt;
    RationalVector tau(k, 0);
    for (const auto& e : entries) {
        const Rational c(uniform(rng, 0, 4));
        for (std::size_t i = 0; i < k; ++i) tau[i] += c * Rational(e.weight[i]);
    }
    for (auto& t : tau) t += frac(uniform(rng, -5, 5), 11);
    const LevelKind kind = classify_level(ws, tau).kind;
    if (kind != LevelKind::regular && kind != LevelKind::super_regular) return std::nullopt;
    const unsigned deg = static_cast<unsigned>(ws.total_multiplicity() - k);
    MultiPoly x(k);
    for (int t = 0; t < 4; ++t) {
        Exponent e(k, 0);
        for (unsigned d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) - 1))];
        x.add_term(e, frac(uniform(rng, -5, 5), uniform(rng, 1, 3)));
    }
    return RandomProblem{ToricProblem{ws, tau, 1}, x};
}

// A regular level in the interior of the cone of all weights, found by
// trying increasingly generic positive combinations.
inline RationalVector regular_level(const WeightSystem& ws) {
    const std::size_t k = ws.rank();
    for (long attempt = 1; attempt < 100; ++attempt) {
        RationalVector tau(k, 0);
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const Rational c = 1 + frac(static_cast<long>(i) + 1, 7 * attempt + static_cast<long>(i));
            for (std::size_t j = 0; j < k; ++j) tau[j] += c * ws.weight(i)[j];
        }
        const auto kind = classify_level(ws, tau).kind;
        if (kind == LevelKind::regular || kind == LevelKind::super_regular) return tau;
    }
    throw std::runtime_error("regular_level: none found");
}

inline WeightSystem system(std::size_t k, std::vector<std::pair<std::vector<long>, unsigned long>> spec) {
    std::vector<WeightEntry> entries;
    for (auto& [w, m] : spec) {
        IntegerVector v;
        for (long z : w) v.push_back(z);
        entries.push_back({v, m});
    }
    return WeightSystem(k, entries);
}

inline RationalVector rvec(std::vector<Rational> v) { return v; }
inline IntegerVector ivec(std::vector<long> v) {
    IntegerVector out;
    for (long z : v) out.push_back(z);
    return out;
}

// All monomials of total degree d in k variables.
inline std::vector<Exponent> monomials(std::size_t k, unsigned d) {
    std::vector<Exponent> out;
    Exponent e(k, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == k) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (unsigned a = 0; a <= left; ++a) {
            e[i] = a;
            rec(i + 1, left - a);
        }
    };
    if (k == 0) {
        if (d == 0) out.push_back(e);
        return out;
    }
    rec(0, d);
    return out;
}

}  // namespace oracle
