#pragma once

// Exhaustive privacy check on tiny instances. For every value of the
// conditioning data (the honest aggregate and the adversaries' own models
// and noise) it compares, across all honest model assignments consistent
// with that aggregate, the distribution of the colluders' view taken over
// every honest noise assignment. The mutual information is zero exactly
// when all of those distributions coincide.

#include <cstdint>
#include <vector>

#include "swiftagg/harness.hpp"

namespace swiftagg {

enum class NoiseMode {
  kUniform,     // noise ranges over the whole field
  kDegenerate,  // every noise value pinned to zero (broken generator)
};

enum class ModelPrior {
  kIndependent,  // honest models independent and uniform over the alphabet
  kDuplicated,   // first two honest users always hold the same model
};

struct PrivacyConfig {
  RunConfig run;  // params, tree, dropouts, adversaries, optional prime override
  // Model entries range over [0, alphabet); 0 means ell.
  std::uint64_t model_alphabet = 0;
  NoiseMode noise = NoiseMode::kUniform;
  ModelPrior prior = ModelPrior::kIndependent;
  // Lets the colluding set exceed T; only for checking that the oracle
  // does report leakage when the threshold is broken.
  bool allow_excess_colluders = false;
  // Upper bound on the number of enumeration steps.
  std::uint64_t budget = 2'000'000'000ULL;
};

struct PrivacyResult {
  bool exactly_zero = false;
  // Computed from exact counts; exactly 0.0 whenever exactly_zero holds.
  long double mutual_information_bits = 0.0L;
  std::uint64_t model_assignments = 0;
  std::uint64_t noise_assignments = 0;
  std::uint64_t adversary_assignments = 0;
  std::uint64_t conditioning_classes = 0;
  std::size_t view_dimension = 0;
};

// Flattened non-null values of a view, in collection order, followed by
// nothing else. Own data is excluded: it is conditioned on.
std::vector<Element> flatten_view(const AdversaryView& view);

// Throws SearchSpaceTooLarge when the estimate exceeds the budget.
PrivacyResult privacy_bruteforce(const PrivacyConfig& config);

}  // namespace swiftagg
