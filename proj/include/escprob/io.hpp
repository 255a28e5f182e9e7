#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "escprob/distributions.hpp"
#include "escprob/errors.hpp"
#include "escprob/estimate.hpp"
#include "escprob/geometry.hpp"

namespace escprob {

/// Malformed input document; `field()` is the JSON path of the offending value.
class InputError : public Error {
 public:
  InputError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

nlohmann::json read_json_file(const std::filesystem::path& path);

/// {"kind": "triangle", "vertices": [[0,0],[2,0],[3,2]]}
MeshElement parse_geometry(const nlohmann::json& doc);
nlohmann::json geometry_to_json(const MeshElement& element);

/// {"law": "wiener", "dt": 1.0} or {"law": "velocity_jump", "lambda": 1.0};
/// the dimension comes from the geometry it is paired with.
std::unique_ptr<StepDistribution> parse_distribution(const nlohmann::json& doc, int dim);
nlohmann::json distribution_to_json(const StepDistribution& dist);

nlohmann::json estimate_to_json(const ProbabilityEstimate& e);
ProbabilityEstimate estimate_from_json(const nlohmann::json& doc);

struct RunProvenance {
  std::string tool = "escprob";
  std::string version;
  std::uint64_t seed = 0;
  std::string rng;
  std::string timestamp;

  friend bool operator==(const RunProvenance&, const RunProvenance&) = default;
};

struct McComparison {
  double difference = 0.0;  // mc - det
  double four_sigma = 0.0;  // 4 sqrt(p (1 - p) / N) at p = det
  bool within = false;

  friend bool operator==(const McComparison&, const McComparison&) = default;
};

struct RepeatedRuns {
  std::vector<double> values;
  double mean = 0.0;
  double empirical_error = 0.0;

  friend bool operator==(const RepeatedRuns&, const RepeatedRuns&) = default;
};

/// Output of the escape and transition commands; see schemas/report.json.
struct RunReport {
  std::string command;
  std::string status = "ok";  // "ok" | "solver_failure"
  std::string message;
  nlohmann::json request;
  std::optional<ProbabilityEstimate> deterministic;
  std::optional<ProbabilityEstimate> monte_carlo;
  std::optional<RepeatedRuns> runs;
  std::optional<McComparison> comparison;
  std::vector<std::string> warnings;
  RunProvenance provenance;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

/// UTC, ISO 8601.
std::string utc_timestamp();

}  // namespace escprob
