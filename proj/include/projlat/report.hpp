#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projlat/element.hpp"
#include "projlat/serialization.hpp"
#include "projlat/tolerances.hpp"

namespace projlat {

struct RunConfig {
  std::string command;
  Shape shape{3};
  std::uint64_t seed = 0;
  std::size_t samples = 50;
  Tolerances tol;
  std::string input;
  std::string output;
};

enum class Status { pass, fail, skipped };

struct Check {
  std::string name;
  std::string anchor;  // the mathematical statement the check exercises
  Status status = Status::pass;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string reason;  // error name for SKIPPED and error-induced FAIL
  std::optional<io::json> counterexample;
};

std::string to_string(Status status, const std::string& reason = {});

/// Machine-readable run report. Everything except `timings` is a function of
/// the configuration and inputs, so reruns are byte-identical modulo timings.
class Report {
 public:
  explicit Report(RunConfig config) : config_(std::move(config)) {}

  const RunConfig& config() const { return config_; }
  const std::vector<Check>& checks() const { return checks_; }
  void add(Check check) { checks_.push_back(std::move(check)); }
  void add_timing(std::string phase, double seconds) { timings_.emplace_back(std::move(phase), seconds); }

  bool passed() const;
  /// The first failing check, if any.
  const Check* first_failure() const;
  /// Extra command-specific payload, emitted under "result".
  void set_result(io::json result) { result_ = std::move(result); }

  io::json to_json(bool include_timings = true) const;
  std::string summary() const;

 private:
  RunConfig config_;
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, double>> timings_;
  std::optional<io::json> result_;
};

/// Seeded instance of kind "projection-pair", "lattice-map" or "ring-iso".
/// Deterministic in (kind, shape, seed). Throws PreconditionViolated for an
/// unknown kind.
io::json generate(const std::string& kind, const Shape& shape, std::uint64_t seed);

/// Halmos decomposition of {"p": .., "q": ..}: reconstruction, a² + b² = e1,
/// ab = ba and the corner ranks.
Report run_halmos(const RunConfig& config, const io::json& pair);

/// Coordinatization of a serialized lattice map. The result payload holds ψ
/// on the probes (a JSON list of corner elements; seeded probes when absent),
/// the target frame, the normalizers and all residuals.
Report run_coordinatize(const RunConfig& config, const io::json& map, const std::optional<io::json>& probes);

/// Dye extension certificate of a serialized lattice map.
Report run_dye(const RunConfig& config, const io::json& map);

/// Inner factorization of a serialized ring isomorphism.
Report run_factor(const RunConfig& config, const io::json& ring_iso);

/// Every invariant family on fresh seeded instances of config.shape.
/// Order-3 families are SKIPPED(NotOrderThree) on shapes without a 3×3 frame.
Report verify_suite(const RunConfig& config);

}  // namespace projlat
