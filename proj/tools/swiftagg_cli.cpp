#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "swiftagg/config.hpp"
#include "swiftagg/error.hpp"
#include "swiftagg/harness.hpp"
#include "swiftagg/verify.hpp"

namespace {

using namespace swiftagg;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooManyDropouts:
    case ErrorCode::kSearchSpaceTooLarge:
      return kExitFailure;
    default:
      return kExitConfig;
  }
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

// --seed beats SWIFTAGG_SEED beats the document.
void apply_seed(RunConfig& config, const std::optional<std::uint64_t>& flag) {
  if (flag) {
    config.seed = *flag;
    return;
  }
  if (auto s = env("SWIFTAGG_SEED")) {
    try {
      std::size_t used = 0;
      config.seed = std::stoull(*s, &used);
      if (used != s->size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfigInvalid, "SWIFTAGG_SEED: not an unsigned integer");
    }
  }
}

std::optional<std::string> out_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  return env("SWIFTAGG_OUT");
}

void print_summary(const RunReport& r) {
  const auto& p = r.params;
  std::printf("N=%zu T=%zu D=%zu K=%zu L=%zu ell=%llu\n", p.users, p.max_colluders,
              p.max_dropouts, p.partitions, p.model_length,
              static_cast<unsigned long long>(p.ell));
  std::printf("groups=%zu group_size=%zu prime=%u%s bits_per_symbol=%u\n", p.group_count,
              p.group_size, r.prime, r.conforming ? "" : " (non-conforming)", r.bits_per_symbol);
  std::printf("R_server=%.6f (%s)\n", r.loads.server.to_double(),
              r.loads.server.to_string().c_str());
  std::printf("R_user_max=%.6f (%s)\n", r.loads.user_max.to_double(),
              r.loads.user_max.to_string().c_str());
  std::printf("R_user_avg=%.6f (%s)\n", r.loads.user_avg.to_double(),
              r.loads.user_avg.to_string().c_str());
  std::printf("edges=%zu silent_edges=%zu\n", r.links.total, r.links.silent);
  std::printf("delay=%g\n", r.delay);
  std::printf("messages intra=%zu/%zu inter=%zu/%zu server=%zu/%zu (non-null/sent)\n",
              r.intra.non_null, r.intra.sent, r.inter.non_null, r.inter.sent, r.server.non_null,
              r.server.sent);
  std::printf("contributors=%zu\n", r.contributors.size());
}

int cmd_run(const std::string& file, const std::optional<std::uint64_t>& seed,
            const std::string& out_flag) {
  auto config = load_run_config(file);
  apply_seed(config, seed);
  const auto run = simulate_full(config);
  print_summary(run.report);
  if (auto dir = out_path(out_flag)) {
    std::filesystem::create_directories(*dir);
    const std::filesystem::path base(*dir);
    std::ofstream(base / "report.json") << to_json(run.report).dump(2) << '\n';
    std::ofstream csv(base / "transcript.csv");
    run.protocol.transcript.write_csv(csv);
    std::printf("wrote %s and %s\n", (base / "report.json").c_str(),
                (base / "transcript.csv").c_str());
  }
  return kExitOk;
}

int cmd_sweep(const std::string& file, const std::optional<std::uint64_t>& seed,
              const std::string& out_flag, std::size_t jobs) {
  auto spec = load_sweep_spec(file);
  apply_seed(spec.base, seed);
  if (auto out = out_path(out_flag)) spec.output = *out;
  const auto result = run_sweep(spec, jobs);
  for (const auto& msg : result.skipped) std::cerr << "skipped " << msg << '\n';
  const auto csv = sweep_csv(result);
  if (spec.output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream(spec.output) << csv;
    std::printf("wrote %zu rows to %s\n", result.rows.size(), spec.output.c_str());
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite_name) {
  const auto suite = run_suite(suite_name);
  if (!suite) {
    std::cerr << "error: unknown suite '" << suite_name
              << "' (expected examples, formulas, correctness or privacy)\n";
    return kExitConfig;
  }
  std::size_t passed = 0;
  for (const auto& c : suite->checks) {
    std::printf("%s  %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : "  ", c.detail.c_str());
    passed += c.passed ? 1 : 0;
  }
  std::printf("%s: %zu/%zu checks passed\n", suite->suite.c_str(), passed, suite->checks.size());
  return suite->passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swiftagg: secure aggregation simulator"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string file;
  std::string suite;

  auto* run = app.add_subcommand("run", "Run one aggregation round from a JSON config");
  run->add_option("file", file, "Run config (JSON)")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out, "Directory for report.json and transcript.csv");

  auto* sweep = app.add_subcommand("sweep", "Sweep K and emit CSV");
  sweep->add_option("file", file, "Sweep description (JSON)")->required();
  sweep->add_option("--seed", seed, "Override the base seed");
  sweep->add_option("--out", out, "CSV output path (default: the file's output key, else stdout)");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run an oracle suite");
  verify->add_option("suite", suite, "examples | formulas | correctness | privacy")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(file, seed, out);
    if (*sweep) return cmd_sweep(file, seed, out, jobs);
    return cmd_verify(suite);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
