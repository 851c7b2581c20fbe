#pragma once

// Run configuration shared by the CLI subcommands. JSON parsing is strict:
// unknown fields and wrongly typed values are rejected with ConstructionError.
// Serialization writes every field, so parse(serialize(c)) == c.

#include <cstdint>
#include <string>
#include <vector>

#include "ntkms/builtin_systems.hpp"
#include "ntkms/trace_spec.hpp"

namespace ntkms {

struct RunConfig {
  SystemSpec system;
  std::string trace = "auto";        // auto | haar | point_mass | vacuum | identity
  std::vector<double> theta;         // point_mass angles; empty means 0
  double beta = 3.0;
  std::vector<double> betas;         // sweep grid
  std::uint64_t bound = 0;           // "B"; 0 picks the semigroup default
  std::uint64_t seed = 0;
  std::string format = "auto";       // auto | json | csv
  std::uint64_t budget = 1'000'000;  // NT term budget
  std::uint64_t samples = 200;       // random samples per check
  std::vector<std::string> observables;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& config);
// Range and vocabulary checks; throws ConstructionError.
void validate(const RunConfig& config);

// 10^4 on nat-mult, 48 on nat-add (N_n = k^n stays far from 64-bit overflow).
std::uint64_t default_bound(SemigroupKind kind);
std::uint64_t resolved_bound(const RunConfig& config, SemigroupKind kind);
TraceSpec build_trace(const RunConfig& config, EngineSpec engine);

}  // namespace ntkms
