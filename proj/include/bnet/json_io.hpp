#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "bnet/boundary_search.hpp"
#include "bnet/bounds.hpp"
#include "bnet/network.hpp"
#include "bnet/sketch.hpp"
#include "bnet/strategy.hpp"
#include "bnet/verifier.hpp"

namespace bnet {

/// All documents carry "formatVersion": 1.  Rationals are written as exact
/// "p/q" strings; on input both strings (fractions and decimals, converted
/// exactly) and JSON numbers (taken at their exact binary value) parse.
inline constexpr int kFormatVersion = 1;

struct NetworkDoc {
  Network net{1};
  std::vector<std::string> labels;  // labels[i] is seller i's external id
  int index_of(const std::string& label) const;
};

Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& r);

NetworkDoc network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const NetworkDoc& doc);

/// Profiles are stored per seller as a segment table (lossless) plus the atom.
StrategyProfile profile_from_json(const nlohmann::json& j, const NetworkDoc& doc);
nlohmann::json profile_to_json(const StrategyProfile& prof, const NetworkDoc& doc);

Sketch sketch_from_json(const nlohmann::json& j, const NetworkDoc& doc);
nlohmann::json sketch_to_json(const Sketch& sketch, const NetworkDoc& doc);

/// Sketch shape: same schema with "intervals" (index sets, 1 = topmost)
/// instead of numeric "supports".
FreeBoundarySketch shape_from_json(const nlohmann::json& j, const NetworkDoc& doc);
nlohmann::json shape_to_json(const FreeBoundarySketch& fbs, const NetworkDoc& doc);

nlohmann::json sketch_solution_to_json(const SketchSolution& ss, const NetworkDoc& doc);
nlohmann::json report_to_json(const VerificationReport& rep, const NetworkDoc& doc);
nlohmann::json bounds_to_json(const NetworkDoc& doc,
                              const std::vector<std::pair<Rational, Rational>>& path,
                              const std::vector<BoundViolation>& neighbor_violations);

/// "seller,x,F" sampled on a uniform grid over [0,1] (endpoints included).
std::string profile_csv(const StrategyProfile& prof, const NetworkDoc& doc, int grid_points = 512);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace bnet
