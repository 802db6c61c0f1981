#pragma once

#include <optional>
#include <set>
#include <string>

#include "curved_nbody/integrator.hpp"
#include "curved_nbody/solutions.hpp"
#include "curved_nbody/verify.hpp"
#include "json.hpp"

namespace curved_nbody::cli {

using nlohmann::json;

/// Bad configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Reads a JSON config file. Throws ConfigError when it cannot be read or
/// parsed or is not an object.
json load_config(const std::string& path);

/// Strict view of one JSON object: every key must be consumed before
/// finish(), otherwise it is reported as unknown.
class Section {
 public:
  Section(const json& j, std::string where);

  bool has(const std::string& key) const;
  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  long integer(const std::string& key, long fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  /// Raw access; marks the key as used.
  const json& raw(const std::string& key);
  Section child(const std::string& key);
  void finish() const;
  const std::string& where() const { return where_; }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

CandidateParams parse_family(Section s);
/// name -> built-in parameters used by --seed-family.
CandidateParams seed_family(const std::string& name);
json family_to_json(const CandidateParams& params);

SystemState parse_state(Section s);
json state_to_json(const SystemState& state);

IntegratorConfig parse_integrator(Section s, IntegratorConfig base = {});
json integrator_to_json(const IntegratorConfig& cfg);

// --- per-command configurations ---------------------------------------------

struct SimulateConfig {
  std::optional<CandidateParams> family;
  std::optional<SystemState> state;
  double t_end = 10.0;
  IntegratorConfig integrator;
  std::string out;
  json echo;
};

SimulateConfig parse_simulate(const json& doc, const std::optional<std::string>& seed);

struct VerifyConfig {
  TheoremId theorem = TheoremId::T1;
  ScanGrid grid;
  Tolerances tolerances;
  TheoremOptions options;
  std::string out;
  json echo;
};

/// Command-line overrides are applied after the config file.
VerifyConfig parse_verify(const json& doc, const std::optional<std::string>& theorem,
                          const std::vector<std::string>& grid_overrides,
                          const std::vector<std::string>& tol_overrides,
                          const std::optional<std::string>& reading);

enum class ScanExpr { DetA, Releq2dMismatch, PeIdentity, NeIdentity, NhIdentity, NehIdentity };
std::string to_string(ScanExpr e);
ScanExpr parse_scan_expr(const std::string& s);
ScanGrid default_scan_grid(ScanExpr e);

struct ScanConfig {
  ScanExpr expr = ScanExpr::DetA;
  ScanGrid grid;
  Reading reading = Reading::CoshInside;
  std::string out;
  json echo;
};

ScanConfig parse_scan(const json& doc, const std::optional<std::string>& expr,
                      const std::vector<std::string>& grid_overrides,
                      const std::optional<std::string>& reading);

struct ReducedConfig {
  ReducedFamily family = ReducedFamily::PositiveElliptic;
  CandidateParams params;
  double t_end = 10.0;
  IntegratorConfig integrator;
  std::string out;
  json echo;
};

ReducedConfig parse_reduced(const json& doc, const std::optional<std::string>& family);

/// Splits "a=1,b=2:3:4" on commas.
std::vector<std::string> split_overrides(const std::string& s);

}  // namespace curved_nbody::cli
