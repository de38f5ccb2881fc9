#pragma once

// Deterministic simulation driver. Every metric in a RunReport is counted
// from the transcript of an actual run, never taken from a closed form.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swiftagg/field.hpp"
#include "swiftagg/protocol.hpp"
#include "swiftagg/rational.hpp"
#include "swiftagg/topology.hpp"
#include "swiftagg/transcript.hpp"

namespace swiftagg {

inline constexpr int kSchemaVersion = 1;

struct TreeSpec {
  enum class Shape { kChain, kStar, kExplicit };
  Shape shape = Shape::kChain;
  std::vector<std::optional<std::size_t>> parents;  // kExplicit only

  AggregationTree build(std::size_t group_count) const;
};

struct RunConfig {
  std::size_t users = 0;
  std::size_t max_colluders = 0;
  std::size_t max_dropouts = 0;
  std::size_t partitions = 1;
  std::size_t model_length = 1;
  std::uint64_t ell = 2;
  TreeSpec tree;
  std::vector<std::size_t> dropouts;
  DropTiming timing = DropTiming::kBeforeIntra;
  std::vector<std::size_t> adversaries;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> prime_override;
  // When absent, models are drawn uniformly from [0, ell) using the seed.
  std::optional<std::vector<std::vector<Element>>> models;
  DelayModel delays;
  // Requests load/bit reporting that is only meaningful over a conforming
  // prime; combined with prime_override the run is refused.
  bool assert_loads = false;
};

struct Loads {
  Rational server;    // symbols the server received (at most K + T messages) / L
  Rational user_max;  // max over users of sent symbols / L
  Rational user_avg;  // all sent symbols / (N L)
  std::vector<Rational> per_user;
  std::size_t server_symbols = 0;
  std::size_t max_user_symbols = 0;
};

Loads measure_loads(const Transcript& transcript, const ProtocolParams& params);

struct PhaseCounts {
  std::size_t sent = 0;      // non-self entries, null included
  std::size_t non_null = 0;
};

struct RunReport {
  int schema_version = kSchemaVersion;
  ProtocolParams params;
  std::uint32_t prime = 0;
  bool conforming = true;
  unsigned bits_per_symbol = 0;
  std::vector<Element> aggregate;
  std::vector<std::size_t> contributors;
  Loads loads;
  LinkStats links;
  double delay = 0.0;
  PhaseCounts intra, inter, server;
  std::uint64_t server_bits = 0;
  std::uint64_t max_user_bits = 0;
  // Cut-set reference values per model entry, for inspection only.
  double cutset_server_bits_per_entry = 0.0;  // log2((ell-1)N + 1)
  double cutset_user_bits_per_entry = 0.0;    // log2(ell)
};

struct SimulationRun {
  ProtocolSetup setup;
  ProtocolResult protocol;
  RunReport report;
};

// Throws ConfigInvalid, NonConformingField, and protocol errors.
SimulationRun simulate_full(const RunConfig& config);
RunReport simulate(const RunConfig& config);

// Checks everything but protocol feasibility; throws ConfigInvalid /
// NonConformingField / parameter errors.
void validate_config(const RunConfig& config);
ProtocolSetup make_setup(const RunConfig& config);

// Models and per-user noise for a config, derived from its seed.
std::vector<Model> models_for(const RunConfig& config, const FieldContext& ctx);
std::vector<NoiseBlock> noise_for(const RunConfig& config, const ProtocolParams& params,
                                  const FieldContext& ctx);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

struct ReceivedMessage {
  Phase phase = Phase::kIntra;
  Node sender = Node::server();
  bool null = false;
  std::vector<Element> values;
};

struct AdversaryMember {
  std::size_t user = 0;
  Model model;
  NoiseBlock noise;
  std::vector<ReceivedMessage> intra;  // shares from peers
  std::vector<ReceivedMessage> inter;  // messages from child groups
};

struct AdversaryView {
  std::vector<AdversaryMember> members;
  std::vector<ReceivedMessage> server;  // every server-bound message received or null
};

// What colluding users plus the server hold after a run: messages received
// by each adversary (nothing that reached a dropped adversary after its
// drop), all server-bound messages, and the adversaries' own model and noise.
AdversaryView collect_adversary_view(const Transcript& transcript,
                                     const std::vector<UserState>& users,
                                     const std::vector<std::size_t>& adversaries);

struct CorrectnessSummary {
  std::size_t trials = 0;
  std::size_t matches = 0;
  std::vector<std::string> failures;

  bool passed() const { return trials == matches; }
};

// Random models and random dropout sets of size <= D; each recovered
// aggregate is compared with the plain integer sum of the contributing
// models. Requires a conforming prime.
CorrectnessSummary correctness_oracle(const RunConfig& base, std::size_t trials,
                                      std::uint64_t seed,
                                      std::optional<std::size_t> exact_dropouts = std::nullopt);

struct SweepSpec {
  RunConfig base;
  std::vector<std::size_t> k_values;
  std::size_t repetitions = 1;
  std::string output;
};

struct SweepRow {
  std::size_t k = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  Rational r_server;
  Rational r_user_max;
  std::size_t edges = 0;
  std::size_t silent_edges = 0;
  double delay = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> skipped;  // one diagnostic per rejected K
};

// Rows ordered by (K as listed, repetition) regardless of `jobs`.
SweepResult run_sweep(const SweepSpec& spec, std::size_t jobs);

inline constexpr std::string_view kSweepCsvHeader =
    "k,repetition,seed,r_server,r_server_exact,r_user_max,r_user_max_exact,edges,silent_edges,delay";
std::string sweep_csv(const SweepResult& result);

}  // namespace swiftagg
