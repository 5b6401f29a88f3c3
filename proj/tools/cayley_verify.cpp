// Command-line front end for the verification campaigns.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "cayley/campaign.hpp"

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"cayley-verify: property-testing campaigns for the octonionic "
               "second-variation toolkit"};

  std::string command;
  std::uint64_t seed = 1;
  std::int64_t trials = -1;
  int m1 = -1, m2 = -1, n = -1, d = -1;
  double lambda_sq = 4.0;
  double tol = 1e-12;
  std::string out_path;
  std::string format = "json";
  int threads = 1;

  app.add_option("--command", command,
                 "identities | ineq-key | ineq-sum | lines | curvature | variation-complex | "
                 "variation-quat | variation-octo | extremize | certify-odd | report-all")
      ->required();
  app.add_option("--seed", seed, "campaign seed (overridden by CAYLEY_VARIATION_SEED)");
  app.add_option("--trials", trials, "trial count (per-command default when omitted)");
  app.add_option("--m1", m1, "factor-1 dimension");
  app.add_option("--m2", m2, "factor-2 dimension");
  app.add_option("--n", n, "tangent count / campaign size parameter");
  app.add_option("--d", d, "normal count");
  app.add_option("--lambda-sq", lambda_sq, "maximum sectional curvature");
  app.add_option("--tol", tol, "absolute tolerance");
  app.add_option("--out", out_path, "report output path");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads (statistics are schedule-invariant)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cayley::CampaignConfig config;
  config.command = cayley::parse_command(command);
  config.seed = seed;
  if (const char* env_seed = std::getenv("CAYLEY_VARIATION_SEED")) {
    config.seed = std::strtoull(env_seed, nullptr, 10);
  }
  if (trials >= 0) config.trials = static_cast<std::uint64_t>(trials);
  if (m1 > 0) config.m1 = m1;
  if (m2 > 0) config.m2 = m2;
  if (n > 0) config.n = n;
  if (d >= 0) config.d = d;
  config.lambda_sq = lambda_sq;
  config.tol.abs_tol = tol;
  config.output_path = out_path;
  config.format = format == "csv" ? cayley::ReportFormat::csv : cayley::ReportFormat::json;
  config.threads = threads;

  const cayley::CampaignReport report = cayley::run(config);
  for (const auto& p : report.properties) {
    std::printf("[%s] %-45s worst=%.3e%s%s\n", p.pass ? "PASS" : "FAIL", p.name.c_str(), p.worst,
                p.witness.empty() ? "" : "  ", p.witness.c_str());
  }
  std::printf("%s: %zu properties, %.2f s\n", cayley::command_name(config.command).c_str(),
              report.properties.size(), report.runtime_s);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const cayley::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
