#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toricjk/linalg.hpp"
#include "toricjk/rational.hpp"

namespace toricjk {

struct WeightEntry {
    IntegerVector weight;
    unsigned long multiplicity = 1;

    friend bool operator==(const WeightEntry&, const WeightEntry&) = default;
};

/// Weights of a linear torus action on a sum of complex vector spaces, one
/// entry per summand; multiplicity is the complex dimension of the summand.
class WeightSystem {
  public:
    WeightSystem() = default;
    /// Throws ValidationError on a zero weight or a length mismatch.
    WeightSystem(std::size_t rank, std::vector<WeightEntry> entries);

    std::size_t rank() const { return rank_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<WeightEntry>& entries() const { return entries_; }
    const WeightEntry& entry(std::size_t i) const { return entries_.at(i); }
    const IntegerVector& weight(std::size_t i) const { return entries_.at(i).weight; }

    std::vector<IntegerVector> weights() const;
    /// Weights of the entries with positive multiplicity.
    std::vector<IntegerVector> occupied_weights() const;
    unsigned long total_multiplicity() const;
    bool spans() const;

    WeightSystem with_multiplicities(const std::vector<unsigned long>& mults) const;

    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

  private:
    std::size_t rank_ = 0;
    std::vector<WeightEntry> entries_;
};

/// Cone of a complete index set of rank k-1. The index set holds every entry
/// whose weight lies on the hyperplane, so there is one wall per hyperplane.
struct Wall {
    std::vector<std::size_t> index_set;  // 0-based entry indices, sorted
    IntegerVector normal;                // primitive, first nonzero entry positive

    friend bool operator==(const Wall&, const Wall&) = default;
};

struct CrossingEvent {
    Rational parameter;  // in (0, 1) along the planned segment
    std::size_t wall_id = 0;
    Wall wall;
    RationalVector point;  // the crossing point tau_0
    IntegerVector e1;      // wall normal with <direction, e1> > 0
    int sign = 1;
};

enum class LevelKind { regular, super_regular, on_wall, outside_cone };

struct LevelClass {
    LevelKind kind = LevelKind::regular;
    std::optional<Wall> wall;  // set for on_wall
};

std::string to_string(LevelKind kind);

/// xi with <w, xi> < 0 for every occupied entry, or nullopt.
std::optional<IntegerVector> check_proper(const WeightSystem& ws);

std::vector<Wall> enumerate_walls(const WeightSystem& ws);

/// tau lies in the (closed) cone of the wall.
bool wall_contains(const WeightSystem& ws, const Wall& wall, const RationalVector& tau);

LevelClass classify_level(const WeightSystem& ws, const RationalVector& tau);
LevelClass classify_level(const WeightSystem& ws, const RationalVector& tau, const std::vector<Wall>& walls);

/// tau is in the cone spanned by the occupied weights.
bool in_occupied_cone(const WeightSystem& ws, const RationalVector& tau);

struct PathOptions {
    std::uint64_t seed = 0;
    unsigned retries = 64;
};

struct PathPlan {
    RationalVector start;  // outside the moment cone
    RationalVector end;    // the requested level
    std::vector<CrossingEvent> events;  // ordered by parameter
    unsigned attempts = 0;
};

/// Straight segment from a perturbed point outside the moment cone to tau,
/// with every wall crossing generic (single wall, transverse, interior).
PathPlan plan_path(const WeightSystem& ws, const RationalVector& tau, const PathOptions& options = {});
PathPlan plan_path(const WeightSystem& ws, const RationalVector& tau, const std::vector<Wall>& walls,
                   const PathOptions& options);

}  // namespace toricjk
