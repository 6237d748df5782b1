#include "toricjk/weights.hpp"

#include <algorithm>
#include <random>

namespace toricjk {

WeightSystem::WeightSystem(std::size_t rank, std::vector<WeightEntry> entries) : rank_(rank), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& w = entries_[i].weight;
        if (w.size() != rank_)
            throw ValidationError("weights[" + std::to_string(i) + "].w: expected " + std::to_string(rank_) +
                                  " entries, got " + std::to_string(w.size()));
        if (std::all_of(w.begin(), w.end(), [](const Integer& z) { return z == 0; }))
            throw ValidationError("weights[" + std::to_string(i) + "].w: weight vectors must be nonzero");
    }
}

std::vector<IntegerVector> WeightSystem::weights() const {
    std::vector<IntegerVector> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.weight);
    return out;
}

std::vector<IntegerVector> WeightSystem::occupied_weights() const {
    std::vector<IntegerVector> out;
    for (const auto& e : entries_)
        if (e.multiplicity > 0) out.push_back(e.weight);
    return out;
}

unsigned long WeightSystem::total_multiplicity() const {
    unsigned long n = 0;
    for (const auto& e : entries_) n += e.multiplicity;
    return n;
}

bool WeightSystem::spans() const {
    auto w = weights();
    return rank_of(std::span<const IntegerVector>(w)) == rank_;
}

WeightSystem WeightSystem::with_multiplicities(const std::vector<unsigned long>& mults) const {
    if (mults.size() != entries_.size()) throw InvariantError("with_multiplicities: wrong number of multiplicities");
    auto entries = entries_;
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].multiplicity = mults[i];
    return WeightSystem(rank_, std::move(entries));
}

std::string to_string(LevelKind kind) {
    switch (kind) {
        case LevelKind::regular: return "regular";
        case LevelKind::super_regular: return "super_regular";
        case LevelKind::on_wall: return "on_wall";
        case LevelKind::outside_cone: return "outside_cone";
    }
    return "unknown";
}

std::optional<IntegerVector> check_proper(const WeightSystem& ws) {
    const std::size_t k = ws.rank();
    const auto occupied = ws.occupied_weights();
    if (occupied.empty()) return IntegerVector(k, Integer(0));

    // Variables: xi+ (k), xi- (k), s, one slack per weight, one slack for s <= 1.
    // <w, xi> + s + y_w = 0,  s + y_0 = 1,  maximize s.
    const std::size_t nw = occupied.size();
    const std::size_t nvars = 2 * k + 1 + nw + 1;
    const std::size_t s_col = 2 * k;
    LinearProgram lp;
    for (std::size_t r = 0; r < nw; ++r) {
        RationalVector row(nvars, Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = occupied[r][i];
            row[k + i] = -occupied[r][i];
        }
        row[s_col] = 1;
        row[s_col + 1 + r] = 1;
        lp.A.push_back(std::move(row));
        lp.b.push_back(0);
    }
    RationalVector cap(nvars, Rational(0));
    cap[s_col] = 1;
    cap[nvars - 1] = 1;
    lp.A.push_back(std::move(cap));
    lp.b.push_back(1);
    lp.cost.assign(nvars, Rational(0));
    lp.cost[s_col] = -1;

    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal || res.x[s_col] <= 0) return std::nullopt;
    RationalVector xi(k);
    for (std::size_t i = 0; i < k; ++i) xi[i] = res.x[i] - res.x[k + i];
    IntegerVector cert = make_primitive(clear_denominators(xi));
    for (const auto& w : occupied)
        if (dot(w, cert) >= 0) throw InvariantError("check_proper: certificate does not separate the weights");
    return cert;
}

namespace {

// Calls f on each size-r subset of {0..n-1} (as an index vector).
template <typename F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
    if (r > n) return;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<IntegerVector> select(const WeightSystem& ws, const std::vector<std::size_t>& idx) {
    std::vector<IntegerVector> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(ws.weight(i));
    return out;
}

}  // namespace

std::vector<Wall> enumerate_walls(const WeightSystem& ws) {
    const std::size_t k = ws.rank();
    std::vector<Wall> walls;
    if (k == 0) return walls;
    if (k == 1) {
        walls.push_back(Wall{{}, IntegerVector{Integer(1)}});
        return walls;
    }
    for_each_subset(ws.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
        auto vecs = select(ws, idx);
        if (rank_of(std::span<const IntegerVector>(vecs)) != k - 1) return;
        IntegerVector normal = primitive_normal(vecs, k);
        for (const auto& w : walls)
            if (w.normal == normal) return;
        Wall wall;
        wall.normal = std::move(normal);
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (dot(ws.weight(i), wall.normal) == 0) wall.index_set.push_back(i);
        walls.push_back(std::move(wall));
    });
    return walls;
}

bool wall_contains(const WeightSystem& ws, const Wall& wall, const RationalVector& tau) {
    if (dot(wall.normal, tau) != 0) return false;
    auto vecs = select(ws, wall.index_set);
    return solve_nonneg_combination(vecs, tau).has_value();
}

bool in_occupied_cone(const WeightSystem& ws, const RationalVector& tau) {
    auto occupied = ws.occupied_weights();
    return solve_nonneg_combination(occupied, tau).has_value();
}

LevelClass classify_level(const WeightSystem& ws, const RationalVector& tau) {
    return classify_level(ws, tau, enumerate_walls(ws));
}

LevelClass classify_level(const WeightSystem& ws, const RationalVector& tau, const std::vector<Wall>& walls) {
    const std::size_t k = ws.rank();
    if (tau.size() != k)
        throw ValidationError("tau: expected " + std::to_string(k) + " entries, got " + std::to_string(tau.size()));
    auto all = ws.weights();
    if (!solve_nonneg_combination(all, tau)) return {LevelKind::outside_cone, std::nullopt};
    for (const auto& wall : walls)
        if (wall_contains(ws, wall, tau)) return {LevelKind::on_wall, wall};

    // Regular. Super-regular iff every basis whose open cone contains tau
    // generates the lattice (any positive representation contains one).
    bool super = true;
    for_each_subset(ws.size(), k, [&](const std::vector<std::size_t>& idx) {
        if (!super) return;
        auto vecs = select(ws, idx);
        auto c = solve_basis(vecs, tau);
        if (!c) return;
        if (std::any_of(c->begin(), c->end(), [](const Rational& q) { return q <= 0; })) return;
        if (!lattice_generates(vecs, k)) super = false;
    });
    return {super ? LevelKind::super_regular : LevelKind::regular, std::nullopt};
}

PathPlan plan_path(const WeightSystem& ws, const RationalVector& tau, const PathOptions& options) {
    return plan_path(ws, tau, enumerate_walls(ws), options);
}

PathPlan plan_path(const WeightSystem& ws, const RationalVector& tau, const std::vector<Wall>& walls,
                   const PathOptions& options) {
    const std::size_t k = ws.rank();
    LevelClass level = classify_level(ws, tau, walls);
    if (level.kind == LevelKind::on_wall) throw PreconditionError("tau: non-regular tau (lies on a wall)");

    auto proper = check_proper(ws);
    if (!proper) throw PreconditionError("weights: the weight system is not proper");
    if (ws.occupied_weights().empty()) throw PreconditionError("weights: no entry has positive multiplicity");
    const IntegerVector& xi = *proper;

    RationalVector base(k, Rational(0));
    for (const auto& e : ws.entries())
        for (std::size_t i = 0; i < k; ++i) base[i] -= Rational(e.multiplicity) * e.weight[i];

    Integer xi_norm = 0;
    for (const auto& z : xi) xi_norm += abs(z);

    std::mt19937_64 rng(options.seed);
    for (unsigned attempt = 0; attempt < options.retries; ++attempt) {
        // Numerators in [-M, M] over a denominator that keeps the start point
        // strictly on the positive side of the properness certificate.
        const unsigned bits = std::min(attempt + 3u, 60u);
        const Integer range = Integer(1) << bits;
        const Integer denom = 4 * range * (xi_norm + 1);
        RationalVector start = base;
        for (std::size_t i = 0; i < k; ++i) {
            Integer r(std::to_string(rng()));
            r %= (2 * range + 1);
            r -= range;
            Rational p(r, denom);
            p.canonicalize();
            start[i] += p;
        }
        if (dot(xi, start) <= 0) continue;

        RationalVector dir(k);
        for (std::size_t i = 0; i < k; ++i) dir[i] = tau[i] - start[i];

        bool ok = true;
        std::vector<CrossingEvent> events;
        for (std::size_t w = 0; w < walls.size() && ok; ++w) {
            const Wall& wall = walls[w];
            const Rational along = dot(wall.normal, dir);
            const Rational offset = dot(wall.normal, start);
            if (along == 0) {
                if (offset == 0) ok = false;  // segment inside the hyperplane
                continue;
            }
            Rational t = -offset / along;
            if (t < 0 || t > 1) continue;
            RationalVector point(k);
            for (std::size_t i = 0; i < k; ++i) point[i] = start[i] + t * dir[i];
            if (!wall_contains(ws, wall, point)) continue;
            if (t == 0) {
                ok = false;
                continue;
            }
            if (t == 1) throw InvariantError("plan_path: regular tau lies on a wall");
            CrossingEvent ev;
            ev.parameter = t;
            ev.wall_id = w;
            ev.wall = wall;
            ev.point = std::move(point);
            ev.e1 = wall.normal;
            if (along < 0)
                for (auto& z : ev.e1) z = -z;
            ev.sign = 1;
            events.push_back(std::move(ev));
        }
        if (!ok) continue;

        std::sort(events.begin(), events.end(),
                  [](const CrossingEvent& a, const CrossingEvent& b) { return a.parameter < b.parameter; });
        for (std::size_t i = 0; ok && i + 1 < events.size(); ++i)
            if (events[i].parameter == events[i + 1].parameter) ok = false;
        for (std::size_t i = 0; ok && i < events.size(); ++i)
            for (std::size_t w = 0; ok && w < walls.size(); ++w)
                if (w != events[i].wall_id && wall_contains(ws, walls[w], events[i].point)) ok = false;
        if (!ok) continue;

        return PathPlan{std::move(start), tau, std::move(events), attempt + 1};
    }
    throw PreconditionError("path planning failed after " + std::to_string(options.retries) + " retries");
}

}  // namespace toricjk
