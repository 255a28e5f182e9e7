#include "escprob/io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

namespace escprob {

using nlohmann::json;

namespace {

const json& require(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.is_object()) throw InputError(path, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

double require_number(const json& doc, const std::string& key) {
  const json& v = require(doc, key, "");
  if (!v.is_number()) throw InputError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(key, "expected a finite number");
  return x;
}

Vec parse_point(const json& p, const std::string& path) {
  if (!p.is_array() || p.empty() || p.size() > 3)
    throw InputError(path, "expected an array of 1 to 3 coordinates");
  Vec v(static_cast<int>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_number()) throw InputError(path + "[" + std::to_string(i) + "]", "expected a number");
    v[static_cast<int>(i)] = p[i].get<double>();
  }
  return v;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("", path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

MeshElement parse_geometry(const json& doc) {
  const json& kind_field = require(doc, "kind", "");
  if (!kind_field.is_string()) throw InputError("kind", "expected a string");
  const auto kind = parse_element_kind(kind_field.get<std::string>());
  if (!kind) throw InputError("kind", "unknown element kind '" + kind_field.get<std::string>() + "'");

  const json& verts = require(doc, "vertices", "");
  if (!verts.is_array()) throw InputError("vertices", "expected an array of points");
  std::vector<Vec> points;
  for (std::size_t i = 0; i < verts.size(); ++i)
    points.push_back(parse_point(verts[i], "vertices[" + std::to_string(i) + "]"));
  try {
    return MeshElement(*kind, std::move(points));
  } catch (const Error& e) {
    throw InputError("vertices", e.what());
  }
}

json geometry_to_json(const MeshElement& element) {
  json verts = json::array();
  for (const Vec& v : element.vertices()) {
    json p = json::array();
    for (int i = 0; i < v.dim(); ++i) p.push_back(v[i]);
    verts.push_back(p);
  }
  return {{"kind", std::string(to_string(element.kind()))}, {"vertices", verts}};
}

std::unique_ptr<StepDistribution> parse_distribution(const json& doc, int dim) {
  const json& law = require(doc, "law", "");
  if (!law.is_string()) throw InputError("law", "expected a string");
  const std::string name = law.get<std::string>();
  if (name == "wiener") {
    const double dt = require_number(doc, "dt");
    if (!(dt > 0.0)) throw InputError("dt", "must be > 0");
    return std::make_unique<WienerStep>(dim, dt);
  }
  if (name == "velocity_jump") {
    const double lambda = require_number(doc, "lambda");
    if (!(lambda > 0.0)) throw InputError("lambda", "must be > 0");
    return std::make_unique<VelocityJumpStep>(dim, lambda);
  }
  throw InputError("law", "unknown law '" + name + "'");
}

json distribution_to_json(const StepDistribution& dist) {
  if (const auto* w = dynamic_cast<const WienerStep*>(&dist)) return {{"law", "wiener"}, {"dt", w->dt()}};
  if (const auto* v = dynamic_cast<const VelocityJumpStep*>(&dist))
    return {{"law", "velocity_jump"}, {"lambda", v->lambda()}};
  return {{"law", std::string(dist.name())}};
}

json estimate_to_json(const ProbabilityEstimate& e) {
  return {{"value", e.value},
          {"error_estimate", e.error_estimate},
          {"method", std::string(to_string(e.method))},
          {"cost", e.cost},
          {"wall_time", e.wall_time},
          {"hits", e.hits ? json(*e.hits) : json(nullptr)},
          {"one_sided_bound", optional_number(e.one_sided_bound)}};
}

ProbabilityEstimate estimate_from_json(const json& doc) {
  ProbabilityEstimate e;
  e.value = doc.at("value").get<double>();
  e.error_estimate = doc.at("error_estimate").get<double>();
  const std::string method = doc.at("method").get<std::string>();
  if (method == "deterministic")
    e.method = Method::deterministic;
  else if (method == "monte_carlo")
    e.method = Method::monte_carlo;
  else
    throw InputError("method", "unknown method '" + method + "'");
  e.cost = doc.at("cost").get<std::uint64_t>();
  e.wall_time = doc.at("wall_time").get<double>();
  if (doc.contains("hits") && !doc["hits"].is_null()) e.hits = doc["hits"].get<std::uint64_t>();
  if (doc.contains("one_sided_bound") && !doc["one_sided_bound"].is_null())
    e.one_sided_bound = doc["one_sided_bound"].get<double>();
  return e;
}

json report_to_json(const RunReport& r) {
  json results = json::object();
  if (r.deterministic) results["deterministic"] = estimate_to_json(*r.deterministic);
  if (r.monte_carlo) results["monte_carlo"] = estimate_to_json(*r.monte_carlo);
  if (r.runs)
    results["runs"] = {{"values", r.runs->values},
                       {"mean", r.runs->mean},
                       {"empirical_error", r.runs->empirical_error}};
  if (r.comparison)
    results["comparison"] = {{"difference", r.comparison->difference},
                             {"four_sigma", r.comparison->four_sigma},
                             {"within", r.comparison->within}};
  return {{"command", r.command},
          {"status", r.status},
          {"message", r.message},
          {"request", r.request},
          {"results", results},
          {"warnings", r.warnings},
          {"provenance",
           {{"tool", r.provenance.tool},
            {"version", r.provenance.version},
            {"seed", r.provenance.seed},
            {"rng", r.provenance.rng},
            {"timestamp", r.provenance.timestamp}}}};
}

RunReport report_from_json(const json& doc) {
  RunReport r;
  r.command = doc.at("command").get<std::string>();
  r.status = doc.at("status").get<std::string>();
  r.message = doc.at("message").get<std::string>();
  r.request = doc.at("request");
  const json& results = doc.at("results");
  if (results.contains("deterministic")) r.deterministic = estimate_from_json(results["deterministic"]);
  if (results.contains("monte_carlo")) r.monte_carlo = estimate_from_json(results["monte_carlo"]);
  if (results.contains("runs")) {
    const json& runs = results["runs"];
    r.runs = RepeatedRuns{runs.at("values").get<std::vector<double>>(), runs.at("mean").get<double>(),
                          runs.at("empirical_error").get<double>()};
  }
  if (results.contains("comparison")) {
    const json& c = results["comparison"];
    r.comparison = McComparison{c.at("difference").get<double>(), c.at("four_sigma").get<double>(),
                                c.at("within").get<bool>()};
  }
  r.warnings = doc.at("warnings").get<std::vector<std::string>>();
  const json& p = doc.at("provenance");
  r.provenance.tool = p.at("tool").get<std::string>();
  r.provenance.version = p.at("version").get<std::string>();
  r.provenance.seed = p.at("seed").get<std::uint64_t>();
  r.provenance.rng = p.at("rng").get<std::string>();
  r.provenance.timestamp = p.at("timestamp").get<std::string>();
  return r;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace escprob
