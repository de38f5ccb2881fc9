#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swiftagg/harness.hpp"
#include "swiftagg/privacy.hpp"

namespace swiftagg {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

// N=12, T=2, D=1, K=9: one group of twelve, user 2 dropped before sharing.
RunConfig example1_config(std::uint64_t seed = 1);
// Same users and dropout with K=3: two groups of six on a chain.
RunConfig example2_config(std::uint64_t seed = 1);

// The tiny-instance privacy matrix: N=4 (K=1, p=5) with the adversary at
// every user, N=6 (K=2, p=7) likewise, a T=0 server-only case and a
// correlated-model case. Each entry is expected to leak nothing.
std::vector<std::pair<std::string, PrivacyConfig>> privacy_matrix();
// Same N=4 instance with noise pinned to zero; expected to leak.
PrivacyConfig privacy_negative_control();

SuiteResult verify_examples();
SuiteResult verify_formulas();
SuiteResult verify_correctness();
SuiteResult verify_privacy();

// "examples" | "formulas" | "correctness" | "privacy"; nullopt if unknown.
std::optional<SuiteResult> run_suite(std::string_view name);

}  // namespace swiftagg
