#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricjk/euler.hpp"
#include "toricjk/vortex.hpp"

namespace toricjk {

using nlohmann::json;

/// Everything a problem file may carry. Commands pick the fields they need.
struct ProblemFile {
    WeightSystem weights;
    std::optional<RationalVector> tau;
    std::optional<MultiPoly> cls;
    std::optional<IntegerVector> kappa;
    unsigned genus = 0;
    std::optional<RationalVector> eta;
    std::optional<std::vector<std::size_t>> wall;  // 0-based entry indices
};

/// Throws ValidationError naming the offending field.
ProblemFile parse_problem(const json& doc);
ProblemFile load_problem(const std::string& path);

MultiPoly parse_class(const json& value, std::size_t k);

json rational_json(const Rational& q);
json vector_json(const RationalVector& v);
json vector_json(const IntegerVector& v);
json weights_json(const WeightSystem& ws);
/// Index sets are rendered 1-based.
json wall_json(const WeightSystem& ws, const Wall& wall);
json level_json(const LevelClass& level);
json report_json(const ModuliReport& r);
json trace_json(const TraceNode& node);

std::string vector_text(const RationalVector& v);
std::string vector_text(const IntegerVector& v);
std::string index_set_text(const std::vector<std::size_t>& index_set);
std::string level_text(const LevelClass& level);
std::string report_text(const ModuliReport& r);

}  // namespace toricjk
