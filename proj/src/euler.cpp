#include "toricjk/euler.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace toricjk {

namespace {

bool is_zero_vector(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

MultiPoly selection_part(const WeightSystem& ws, const MultiPoly& x) {
    const long n = static_cast<long>(ws.total_multiplicity());
    const long k = static_cast<long>(ws.rank());
    if (n < k) return MultiPoly(x.nvars());
    return x.homogeneous_part(static_cast<unsigned>(n - k));
}

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

}  // namespace

std::string chamber_key(const WeightSystem& ws, const RationalVector& tau) {
    auto entries = ws.entries();
    std::sort(entries.begin(), entries.end(), [](const WeightEntry& a, const WeightEntry& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.multiplicity < b.multiplicity;
    });
    std::ostringstream os;
    os << ws.rank() << ';';
    for (const auto& e : entries) {
        os << '(';
        for (const auto& z : e.weight) os << z.get_str() << ',';
        os << ')' << e.multiplicity << ';';
    }
    os << '|';
    const std::size_t k = ws.rank();
    for_each_subset(entries.size(), k, [&](const std::vector<std::size_t>& idx) {
        std::vector<IntegerVector> vecs;
        for (auto i : idx) vecs.push_back(entries[i].weight);
        auto c = solve_basis(vecs, tau);
        const bool inside = c && std::all_of(c->begin(), c->end(), [](const Rational& q) { return q > 0; });
        os << (inside ? '1' : '0');
    });
    return os.str();
}

ReducedProblem reduce_crossing(const WeightSystem& ws, const Wall& wall, const RationalVector& tau0,
                               const IntegerVector& e1, const MultiPoly& x) {
    const std::size_t k = ws.rank();
    std::vector<bool> in_wall(ws.size(), false);
    for (auto i : wall.index_set) in_wall.at(i) = true;

    std::vector<WeightEntry> outside, inside;
    for (std::size_t i = 0; i < ws.size(); ++i) (in_wall[i] ? inside : outside).push_back(ws.entry(i));
    for (const auto& e : inside)
        if (dot(e.weight, e1) != 0) throw InvariantError("reduce_crossing: wall weight does not annihilate e1");

    ReducedProblem red;
    red.pushed_class = sphere_pushforward(WeightSystem(k, std::move(outside)), x, e1);
    red.basis = hermite_extend(e1);
    red.reduced_class = restrict_off_direction(red.pushed_class, red.basis);

    // Weights and tau0 live in the annihilator of e1; in the dual of the new
    // basis their last coordinate vanishes.
    const IntegerMatrix ut = red.basis.transpose();
    std::vector<WeightEntry> child_entries;
    for (const auto& e : inside) {
        IntegerVector w = ut * e.weight;
        if (w.back() != 0) throw InvariantError("reduce_crossing: reduced weight has a component along e1");
        w.pop_back();
        child_entries.push_back({std::move(w), e.multiplicity});
    }
    RationalVector t = ut * tau0;
    if (t.back() != 0) throw InvariantError("reduce_crossing: tau0 does not lie in the wall hyperplane");
    t.pop_back();
    red.child = ToricProblem{WeightSystem(k - 1, std::move(child_entries)), std::move(t), 1};
    return red;
}

Rational EulerEngine::euler_class(const ToricProblem& problem, const MultiPoly& x) {
    return Rational(problem.orientation_sign) * evaluate(problem.weights, problem.tau, x, nullptr, true);
}

TraceNode EulerEngine::trace(const ToricProblem& problem, const MultiPoly& x) {
    TraceNode node;
    Rational v = evaluate(problem.weights, problem.tau, x, &node, true);
    node.value = Rational(problem.orientation_sign) * v;
    return node;
}

EulerStats EulerEngine::stats() const {
    return EulerStats{nodes_.load(), crossings_.load(), invariance_checks_.load(), memo_hits_.load()};
}

Rational EulerEngine::evaluate(const WeightSystem& ws, const RationalVector& tau, const MultiPoly& x, TraceNode* trace,
                               bool top_level) {
    const std::size_t k = ws.rank();
    if (tau.size() != k)
        throw ValidationError("tau: expected " + std::to_string(k) + " entries, got " + std::to_string(tau.size()));
    if (x.nvars() != k)
        throw ValidationError("class: expected a polynomial in " + std::to_string(k) + " variables");
    ++nodes_;

    MultiPoly selected = selection_part(ws, x);
    if (trace) {
        trace->rank = k;
        trace->weights = ws;
        trace->tau = tau;
        trace->selected_class = selected;
    }
    auto finish = [&](Rational v, const char* note) {
        if (trace) {
            trace->value = v;
            trace->note = note;
        }
        return v;
    };

    // Rank zero: the quotient is a point and only constants survive.
    if (k == 0) return finish(x.coefficient(Exponent{}), "point");

    if (is_zero_vector(tau)) throw PreconditionError("tau: non-regular tau (tau = 0)");
    const auto walls = enumerate_walls(ws);
    const LevelClass level = classify_level(ws, tau, walls);
    if (level.kind == LevelKind::on_wall) throw PreconditionError("tau: non-regular tau (lies on a wall)");
    if (!check_proper(ws)) throw PreconditionError("weights: the weight system is not proper");
    if (level.kind == LevelKind::outside_cone) return finish(0, "outside cone");
    if (ws.total_multiplicity() < k) return finish(0, "n < k");
    if (selected.is_zero()) return finish(0, "degree mismatch");
    if (!in_occupied_cone(ws, tau)) return finish(0, "outside moment image");

    std::string key;
    if (options_.memoize && !trace) {
        key = chamber_key(ws, tau) + "#" + selected.to_string();
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++memo_hits_;
            return it->second;
        }
    }

    PathPlan plan = plan_path(ws, tau, walls, PathOptions{options_.seed, options_.retries});
    crossings_ += plan.events.size();
    if (trace) trace->path_start = plan.start;

    auto cross = [&](const CrossingEvent& ev, CrossingTrace* ct) -> Rational {
        ReducedProblem red = reduce_crossing(ws, ev.wall, ev.point, ev.e1, selected);
        ++invariance_checks_;
        if (auto child_proper = check_proper(red.child.weights); !child_proper)
            throw InvariantError("reduced problem is not proper at wall crossing");
        TraceNode* child_trace = nullptr;
        if (ct) {
            ct->index_set = ev.wall.index_set;
            ct->parameter = ev.parameter;
            ct->tau0 = ev.point;
            ct->e1 = ev.e1;
            ct->reduced_weights = red.child.weights;
            ct->reduced_tau = red.child.tau;
            ct->reduced_class = red.reduced_class;
            ct->child.resize(1);
            child_trace = &ct->child.front();
        }
        Rational sub;
        try {
            sub = Rational(ev.sign) * evaluate(red.child.weights, red.child.tau, red.reduced_class, child_trace, false);
        } catch (const PreconditionError& err) {
            // The child level is regular by construction; anything else is an
            // engine fault, not a user error.
            throw InvariantError(std::string("reduced problem rejected: ") + err.what());
        }
        if (ct) ct->subtotal = sub;
        return sub;
    };

    Rational total = 0;
    if (trace) {
        trace->crossings.resize(plan.events.size());
        for (std::size_t i = 0; i < plan.events.size(); ++i) total += cross(plan.events[i], &trace->crossings[i]);
    } else if (options_.parallel && top_level && plan.events.size() > 1) {
        std::vector<std::future<Rational>> parts;
        for (const auto& ev : plan.events)
            parts.push_back(std::async(std::launch::async, [&cross, &ev] { return cross(ev, nullptr); }));
        for (auto& f : parts) total += f.get();
    } else {
        for (const auto& ev : plan.events) total += cross(ev, nullptr);
    }

    if (!key.empty()) {
        std::lock_guard lock(memo_mutex_);
        memo_.emplace(key, total);
    }
    return finish(total, "");
}

Rational EulerEngine::wall_crossing_difference(const WeightSystem& ws, const Wall& wall, const RationalVector& tau0,
                                               const RationalVector& eta, const MultiPoly& x) {
    const std::size_t k = ws.rank();
    if (tau0.size() != k || eta.size() != k)
        throw ValidationError("crossing: tau0 and eta must have " + std::to_string(k) + " entries");
    if (x.nvars() != k) throw ValidationError("class: expected a polynomial in " + std::to_string(k) + " variables");
    if (!wall_contains(ws, wall, tau0)) throw PreconditionError("tau0 does not lie in the wall");
    for (const auto& other : enumerate_walls(ws))
        if (other.normal != wall.normal && wall_contains(ws, other, tau0))
            throw PreconditionError("tau0 lies on two walls");
    const Rational along = dot(wall.normal, eta);
    if (along == 0) throw PreconditionError("eta is tangent to the wall");
    IntegerVector e1 = wall.normal;
    if (along < 0)
        for (auto& z : e1) z = -z;

    MultiPoly selected = selection_part(ws, x);
    if (selected.is_zero()) return 0;
    ReducedProblem red = reduce_crossing(ws, wall, tau0, e1, selected);
    ++invariance_checks_;
    return evaluate(red.child.weights, red.child.tau, red.reduced_class, nullptr, true);
}

Rational euler_class(const ToricProblem& problem, const MultiPoly& x, std::uint64_t seed) {
    EulerOptions opts;
    opts.seed = seed;
    return EulerEngine(opts).euler_class(problem, x);
}

Rational wall_crossing_difference(const WeightSystem& ws, const Wall& wall, const RationalVector& tau0,
                                  const RationalVector& eta, const MultiPoly& x) {
    return EulerEngine().wall_crossing_difference(ws, wall, tau0, eta, x);
}

}  // namespace toricjk
