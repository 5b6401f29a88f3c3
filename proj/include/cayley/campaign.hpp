#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/tolerance.hpp"

namespace cayley {

enum class Command {
  identities,
  ineq_key,
  ineq_sum,
  lines,
  curvature,
  variation_complex,
  variation_quat,
  variation_octo,
  extremize,
  certify_odd,
  report_all,
};

/// Maps the CLI spelling (e.g. "ineq-key") to the enum. Throws ConfigError.
Command parse_command(const std::string& name);
std::string command_name(Command command);

enum class ReportFormat { json, csv };

/// One verification campaign: which property family to run, how many seeded
/// trials, and the dimensions involved. Unset dimension fields fall back to
/// per-command defaults (or per-trial sampling where a range is the point).
struct CampaignConfig {
  Command command = Command::report_all;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  std::optional<int> m1;
  std::optional<int> m2;
  std::optional<int> n;
  std::optional<int> d;
  double lambda_sq = 4.0;
  Tolerance tol{};
  std::string output_path;
  ReportFormat format = ReportFormat::json;
  int threads = 1;
};

struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  std::string witness;
};

/// Campaign outcome. Statistics are bit-stable for a fixed seed and do not
/// depend on the thread count; runtime_s is the only field that varies.
struct CampaignReport {
  CampaignConfig config;
  std::vector<PropertyResult> properties;
  double runtime_s = 0.0;

  bool all_pass() const;
};

/// Dispatches the campaign, writes the report to config.output_path when set.
/// Throws ConfigError for inconsistent dimensions or an unknown command.
CampaignReport run(const CampaignConfig& config);

std::string to_json(const CampaignReport& report);
std::string to_csv(const CampaignReport& report);

// Individual campaigns. `run` wires configuration and defaults into these;
// the acceptance suite calls them directly with pinned parameters.
std::vector<PropertyResult> campaign_identities(std::uint64_t seed, std::uint64_t trials,
                                                int threads);
std::vector<PropertyResult> campaign_ineq_key(std::uint64_t seed, std::uint64_t trials,
                                              std::optional<int> m, std::optional<int> n,
                                              int threads);
std::vector<PropertyResult> campaign_ineq_sum(std::uint64_t seed, std::uint64_t trials,
                                              std::optional<int> m, std::optional<int> n,
                                              int threads);
std::vector<PropertyResult> campaign_lines(std::uint64_t seed, std::uint64_t trials, int threads);
std::vector<PropertyResult> campaign_curvature(std::uint64_t seed, std::uint64_t trials,
                                               std::uint64_t sectional_trials, double lambda_sq,
                                               int threads);
std::vector<PropertyResult> campaign_variation_complex(std::uint64_t seed, std::uint64_t trials,
                                                       int m1, int m2, std::optional<int> n,
                                                       std::optional<int> d, int threads);
std::vector<PropertyResult> campaign_variation_quat(std::uint64_t seed, std::uint64_t trials,
                                                    int m1, int m2, std::optional<int> n,
                                                    std::optional<int> d, int threads);
std::vector<PropertyResult> campaign_variation_octo(std::uint64_t seed, std::uint64_t trials,
                                                    std::uint64_t complete_trials, int m2,
                                                    double lambda_sq, int threads);
std::vector<PropertyResult> campaign_extremize(std::uint64_t seed, std::uint64_t falsify_trials,
                                               std::uint64_t consistency_trials,
                                               std::uint64_t maximize_trials, int n_max,
                                               int threads);
std::vector<PropertyResult> campaign_certify_odd(std::uint64_t seed, std::uint64_t trials,
                                                 int m1, int m2, std::optional<int> n,
                                                 int threads);

}  // namespace cayley
