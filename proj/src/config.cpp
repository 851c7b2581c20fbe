#include "ntkms/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ntkms/errors.hpp"

namespace ntkms {

namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ConstructionError(std::string("config field '") + name + "' has the wrong type");
  }
}

std::uint64_t unsigned_field(const json& j, const char* name) {
  const auto& v = j.at(name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConstructionError(std::string("config field '") + name +
                            "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

int int_field(const json& j, const char* name) {
  const auto& v = j.at(name);
  if (!v.is_number_integer()) {
    throw ConstructionError(std::string("config field '") + name + "' must be an integer");
  }
  return v.get<int>();
}

double number_field(const json& j, const char* name) {
  const auto& v = j.at(name);
  if (!v.is_number()) throw ConstructionError(std::string("config field '") + name + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& j, const char* name) {
  const auto& v = j.at(name);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConstructionError(std::string("config field '") + name + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConstructionError(std::string("config field '") + name + "' must be a list of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConstructionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConstructionError("config must be a JSON object");
  static const std::set<std::string> known = {
      "system", "k",      "d",    "style",  "trace",   "theta",       "beta",
      "betas",  "B",      "seed", "format", "budget",  "samples",     "observables"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConstructionError("unknown config field '" + key + "'");
  }
  RunConfig c;
  if (j.contains("system")) c.system.name = field<std::string>(j, "system");
  if (j.contains("k")) c.system.k = int_field(j, "k");
  if (j.contains("d")) c.system.d = int_field(j, "d");
  if (j.contains("style")) c.system.style = field<std::string>(j, "style");
  if (j.contains("trace")) c.trace = field<std::string>(j, "trace");
  if (j.contains("theta")) c.theta = number_list(j, "theta");
  if (j.contains("beta")) c.beta = number_field(j, "beta");
  if (j.contains("betas")) c.betas = number_list(j, "betas");
  if (j.contains("B")) c.bound = unsigned_field(j, "B");
  if (j.contains("seed")) c.seed = unsigned_field(j, "seed");
  if (j.contains("format")) c.format = field<std::string>(j, "format");
  if (j.contains("budget")) c.budget = unsigned_field(j, "budget");
  if (j.contains("samples")) c.samples = unsigned_field(j, "samples");
  if (j.contains("observables")) c.observables = field<std::vector<std::string>>(j, "observables");
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConstructionError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["system"] = c.system.name;
  j["k"] = c.system.k;
  j["d"] = c.system.d;
  j["style"] = c.system.style;
  j["trace"] = c.trace;
  j["theta"] = c.theta;
  j["beta"] = c.beta;
  j["betas"] = c.betas;
  j["B"] = c.bound;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["budget"] = c.budget;
  j["samples"] = c.samples;
  j["observables"] = c.observables;
  return j.dump();
}

void validate(const RunConfig& c) {
  static const std::set<std::string> traces = {"auto", "haar", "point_mass", "vacuum", "identity"};
  static const std::set<std::string> formats = {"auto", "json", "csv"};
  static const std::set<std::string> styles = {"diagonal", "first-axis"};
  bool known = false;
  for (const auto& info : builtin_systems()) known = known || info.name == c.system.name;
  if (!known) throw ConstructionError("unknown system '" + c.system.name + "'");
  if (!traces.contains(c.trace)) throw ConstructionError("unknown trace '" + c.trace + "'");
  if (!formats.contains(c.format)) throw ConstructionError("unknown format '" + c.format + "'");
  if (!styles.contains(c.system.style)) {
    throw ConstructionError("unknown lattice-dilation style '" + c.system.style + "'");
  }
  if (!std::isfinite(c.beta)) throw ConstructionError("beta must be finite");
  for (double b : c.betas) {
    if (!std::isfinite(b)) throw ConstructionError("betas must be finite");
  }
  for (double t : c.theta) {
    if (!std::isfinite(t)) throw ConstructionError("theta must be finite");
  }
  if (c.budget == 0) throw ConstructionError("budget must be positive");
}

std::uint64_t default_bound(SemigroupKind kind) {
  return kind == SemigroupKind::NatMult ? 10000 : 48;
}

std::uint64_t resolved_bound(const RunConfig& c, SemigroupKind kind) {
  return c.bound == 0 ? default_bound(kind) : c.bound;
}

TraceSpec build_trace(const RunConfig& c, EngineSpec engine) {
  std::string name = c.trace;
  if (name == "auto") name = engine.kind == EngineKind::Scalar ? "identity" : "haar";
  if (name == "identity") {
    if (engine.kind != EngineKind::Scalar) {
      throw ConstructionError("trace 'identity' needs scalar coefficients");
    }
    return TraceSpec::identity();
  }
  if (engine.kind == EngineKind::Scalar) {
    throw ConstructionError("trace '" + name + "' is not defined on scalar coefficients");
  }
  if (name == "haar") return TraceSpec::haar(engine);
  if (name == "vacuum") {
    if (engine.kind != EngineKind::Toeplitz) {
      throw ConstructionError("trace 'vacuum' needs Toeplitz coefficients");
    }
    return TraceSpec::vacuum();
  }
  auto theta = c.theta;
  const std::size_t coords = engine.kind == EngineKind::Laurent ? engine.dim : 1;
  if (theta.empty()) theta.assign(coords, 0.0);
  if (theta.size() == 1 && coords > 1) theta.assign(coords, theta.front());
  if (theta.size() != coords) {
    throw ConstructionError("point_mass needs " + std::to_string(coords) + " angle(s)");
  }
  return TraceSpec::point_mass(engine, theta);
}

}  // namespace ntkms
