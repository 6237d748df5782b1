#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "toricjk/localization.hpp"
#include "toricjk/poly.hpp"
#include "toricjk/weights.hpp"

namespace toricjk {

/// Symplectic quotient of a linear torus action at level tau.
struct ToricProblem {
    WeightSystem weights;
    RationalVector tau;
    int orientation_sign = 1;
};

/// The (k-1)-dimensional problem attached to one wall crossing.
struct ReducedProblem {
    ToricProblem child;        // weights of the wall in quotient coordinates, tau_0
    MultiPoly pushed_class;    // pushforward in the full k variables (e1-invariant)
    MultiPoly reduced_class;   // the same class in the k-1 quotient variables
    IntegerMatrix basis;       // unimodular, last column e1
};

/// Builds the reduced problem for a crossing at tau0 in `wall` along e1.
/// x must already be the homogeneous part of the selection degree.
ReducedProblem reduce_crossing(const WeightSystem& ws, const Wall& wall, const RationalVector& tau0,
                               const IntegerVector& e1, const MultiPoly& x);

struct TraceNode;

struct CrossingTrace {
    std::vector<std::size_t> index_set;
    Rational parameter;
    RationalVector tau0;
    IntegerVector e1;
    WeightSystem reduced_weights;
    RationalVector reduced_tau;
    MultiPoly reduced_class;
    Rational subtotal;
    std::vector<TraceNode> child;  // exactly one element
};

struct TraceNode {
    std::size_t rank = 0;
    WeightSystem weights;
    RationalVector tau;
    MultiPoly selected_class;
    Rational value;
    std::string note;  // why a node short-circuits, empty otherwise
    RationalVector path_start;
    std::vector<CrossingTrace> crossings;
};

struct EulerOptions {
    std::uint64_t seed = 0;
    unsigned retries = 64;
    bool parallel = false;
    bool memoize = true;
};

struct EulerStats {
    std::size_t nodes = 0;
    std::size_t crossings = 0;
    std::size_t invariance_checks = 0;  // reduced classes verified e1-invariant
    std::size_t memo_hits = 0;
};

/// Computes chi^{V,tau} by telescoping wall crossings from outside the moment
/// cone. One engine owns one memo table; it is safe to share across threads.
class EulerEngine {
  public:
    explicit EulerEngine(EulerOptions options = {}) : options_(options) {}

    Rational euler_class(const ToricProblem& problem, const MultiPoly& x);
    /// Same value, plus the full crossing tree (memo is bypassed).
    TraceNode trace(const ToricProblem& problem, const MultiPoly& x);

    /// chi at tau0 + eps*eta minus chi at tau0 - eps*eta, computed on the
    /// reduced problem of the crossing.
    Rational wall_crossing_difference(const WeightSystem& ws, const Wall& wall, const RationalVector& tau0,
                                      const RationalVector& eta, const MultiPoly& x);

    EulerStats stats() const;
    const EulerOptions& options() const { return options_; }

  private:
    Rational evaluate(const WeightSystem& ws, const RationalVector& tau, const MultiPoly& x, TraceNode* trace,
                      bool top_level);

    EulerOptions options_;
    mutable std::mutex memo_mutex_;
    std::map<std::string, Rational> memo_;
    std::atomic<std::size_t> nodes_{0};
    std::atomic<std::size_t> crossings_{0};
    std::atomic<std::size_t> invariance_checks_{0};
    std::atomic<std::size_t> memo_hits_{0};
};

/// One-shot convenience wrappers with a fresh engine.
Rational euler_class(const ToricProblem& problem, const MultiPoly& x, std::uint64_t seed = 0);
Rational wall_crossing_difference(const WeightSystem& ws, const Wall& wall, const RationalVector& tau0,
                                  const RationalVector& eta, const MultiPoly& x);

/// Canonical key of the chamber containing a regular tau: the set of bases
/// (of the sorted entry list) whose open cone contains tau.
std::string chamber_key(const WeightSystem& ws, const RationalVector& tau);

}  // namespace toricjk
