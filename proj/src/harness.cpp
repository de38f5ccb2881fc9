#include "swiftagg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "swiftagg/error.hpp"

namespace swiftagg {
namespace {

constexpr std::uint64_t kModelStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kTrialStream = 3;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_ids(const std::vector<std::size_t>& ids, std::size_t users, const char* field) {
  std::set<std::size_t> seen;
  for (const std::size_t id : ids) {
    if (id >= users) {
      throw Error(ErrorCode::kConfigInvalid, std::string(field) + ": user " + std::to_string(id) +
                                                 " out of range");
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kConfigInvalid,
                  std::string(field) + ": duplicate user " + std::to_string(id));
    }
  }
}

FieldContext make_field(const RunConfig& config) {
  if (config.prime_override) {
    return FieldContext::with_override(*config.prime_override, config.ell, config.users);
  }
  return FieldContext::select_prime(config.users, config.ell);
}

PhaseCounts count_phase(const Transcript& transcript, Phase phase) {
  PhaseCounts c;
  for (const auto& m : transcript.messages()) {
    if (m.phase != phase || m.self_addressed()) continue;
    ++c.sent;
    if (!m.null) ++c.non_null;
  }
  return c;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

AggregationTree TreeSpec::build(std::size_t group_count) const {
  switch (shape) {
    case Shape::kChain: return AggregationTree::chain(group_count);
    case Shape::kStar: return AggregationTree::star(group_count);
    case Shape::kExplicit:
      if (parents.size() != group_count) {
        throw Error(ErrorCode::kConfigInvalid,
                    "tree: explicit parent map has " + std::to_string(parents.size()) +
                        " entries, expected " + std::to_string(group_count));
      }
      return AggregationTree::from_parents(parents);
  }
  throw Error(ErrorCode::kConfigInvalid, "tree: unknown shape");
}

void validate_config(const RunConfig& config) {
  if (config.prime_override && config.assert_loads) {
    throw Error(ErrorCode::kNonConformingField,
                "prime_override yields a non-conforming field; load assertions refused");
  }
  const auto params = make_params(config.users, config.max_colluders, config.max_dropouts,
                                  config.partitions, config.model_length, config.ell);
  if (config.dropouts.size() > params.max_dropouts) {
    throw Error(ErrorCode::kConfigInvalid, "dropouts: " + std::to_string(config.dropouts.size()) +
                                               " users exceed D=" +
                                               std::to_string(params.max_dropouts));
  }
  if (config.adversaries.size() > params.max_colluders) {
    throw Error(ErrorCode::kConfigInvalid,
                "adversaries: " + std::to_string(config.adversaries.size()) +
                    " users exceed T=" + std::to_string(params.max_colluders));
  }
  check_ids(config.dropouts, config.users, "dropouts");
  check_ids(config.adversaries, config.users, "adversaries");
  if (config.delays.inter < 0 || config.delays.intra < 0) {
    throw Error(ErrorCode::kConfigInvalid, "delay: values must be non-negative");
  }
  if (config.models) {
    if (config.models->size() != config.users) {
      throw Error(ErrorCode::kConfigInvalid, "models: expected one model per user");
    }
    for (std::size_t n = 0; n < config.users; ++n) {
      const auto& m = (*config.models)[n];
      if (m.size() != config.model_length) {
        throw Error(ErrorCode::kConfigInvalid,
                    "models: user " + std::to_string(n) + " has length " + std::to_string(m.size()));
      }
      for (const Element e : m) {
        if (e >= config.ell) {
          throw Error(ErrorCode::kConfigInvalid,
                      "models: user " + std::to_string(n) + " has entry >= ell");
        }
      }
    }
  }
}

ProtocolSetup make_setup(const RunConfig& config) {
  auto params = make_params(config.users, config.max_colluders, config.max_dropouts,
                            config.partitions, config.model_length, config.ell);
  auto field = make_field(config);
  auto tree = config.tree.build(params.group_count);
  return {params, field, std::move(tree)};
}

std::vector<Model> models_for(const RunConfig& config, const FieldContext& ctx) {
  std::vector<Model> models;
  models.reserve(config.users);
  if (config.models) {
    for (const auto& m : *config.models) models.push_back(Model::bounded(ctx, m));
    return models;
  }
  for (std::size_t n = 0; n < config.users; ++n) {
    Rng rng(derive_seed(config.seed, kModelStream, n));
    std::uniform_int_distribution<std::uint64_t> dist(0, config.ell - 1);
    std::vector<Element> e(config.model_length);
    for (auto& v : e) v = static_cast<Element>(dist(rng));
    models.push_back(Model::bounded(ctx, std::move(e)));
  }
  return models;
}

std::vector<NoiseBlock> noise_for(const RunConfig& config, const ProtocolParams& params,
                                  const FieldContext& ctx) {
  std::vector<NoiseBlock> noise;
  noise.reserve(params.users);
  for (std::size_t n = 0; n < params.users; ++n) {
    noise.push_back(sample_noise(ctx, params.max_colluders, params.segment_length(),
                                 derive_seed(config.seed, kNoiseStream, n)));
  }
  return noise;
}

Loads measure_loads(const Transcript& transcript, const ProtocolParams& params) {
  std::vector<std::size_t> sent(params.users, 0);
  std::size_t server_symbols = 0;
  for (const auto& m : transcript.messages()) {
    if (m.null || m.self_addressed()) continue;
    if (!m.sender.is_server()) sent[m.sender.index()] += m.symbols;
    if (m.receiver.is_server() && m.delivered) server_symbols += m.symbols;
  }
  const auto len = static_cast<std::int64_t>(params.model_length);
  Loads loads;
  loads.server_symbols = server_symbols;
  loads.server = Rational(static_cast<std::int64_t>(server_symbols), len);
  std::size_t total = 0;
  for (const std::size_t s : sent) {
    loads.per_user.emplace_back(static_cast<std::int64_t>(s), len);
    loads.max_user_symbols = std::max(loads.max_user_symbols, s);
    total += s;
  }
  loads.user_max = Rational(static_cast<std::int64_t>(loads.max_user_symbols), len);
  loads.user_avg =
      Rational(static_cast<std::int64_t>(total), len * static_cast<std::int64_t>(params.users));
  return loads;
}

SimulationRun simulate_full(const RunConfig& config) {
  validate_config(config);
  SimulationRun run{make_setup(config), {}, {}};
  const auto& params = run.setup.params;
  const auto& ctx = run.setup.field;
  run.protocol = run_protocol(run.setup, models_for(config, ctx), noise_for(config, params, ctx),
                              DropoutPlan{config.dropouts, config.timing});

  RunReport& r = run.report;
  const auto& transcript = run.protocol.transcript;
  r.params = params;
  r.prime = ctx.modulus();
  r.conforming = ctx.conforming();
  r.bits_per_symbol = ctx.bits_per_symbol();
  r.aggregate = run.protocol.aggregate;
  r.contributors = run.protocol.contributors;
  r.loads = measure_loads(transcript, params);
  r.links = link_stats(transcript);
  r.delay = total_delay(run.setup.tree, config.delays);
  r.intra = count_phase(transcript, Phase::kIntra);
  r.inter = count_phase(transcript, Phase::kInter);
  r.server = count_phase(transcript, Phase::kServer);
  r.server_bits = static_cast<std::uint64_t>(r.loads.server_symbols) * r.bits_per_symbol;
  r.max_user_bits = static_cast<std::uint64_t>(r.loads.max_user_symbols) * r.bits_per_symbol;
  r.cutset_server_bits_per_entry =
      std::log2(static_cast<double>((config.ell - 1) * config.users + 1));
  r.cutset_user_bits_per_entry = std::log2(static_cast<double>(config.ell));
  return run;
}

RunReport simulate(const RunConfig& config) { return simulate_full(config).report; }

AdversaryView collect_adversary_view(const Transcript& transcript,
                                     const std::vector<UserState>& users,
                                     const std::vector<std::size_t>& adversaries) {
  AdversaryView view;
  for (const std::size_t a : adversaries) {
    AdversaryMember member;
    member.user = a;
    member.model = users.at(a).model;
    member.noise = users.at(a).noise;
    view.members.push_back(std::move(member));
  }
  for (const auto& m : transcript.messages()) {
    if (m.receiver.is_server()) {
      if (!m.delivered && !m.null) continue;
      view.server.push_back({m.phase, m.sender, m.null, m.values});
      continue;
    }
    if (m.self_addressed()) continue;
    for (auto& member : view.members) {
      if (m.receiver.index() != member.user) continue;
      const bool dropped = users[member.user].status == UserStatus::kDropped;
      if (!(m.delivered || (m.null && !dropped))) continue;
      auto& bucket = m.phase == Phase::kIntra ? member.intra : member.inter;
      bucket.push_back({m.phase, m.sender, m.null, m.values});
    }
  }
  return view;
}

CorrectnessSummary correctness_oracle(const RunConfig& base, std::size_t trials,
                                      std::uint64_t seed,
                                      std::optional<std::size_t> exact_dropouts) {
  if (base.prime_override) {
    throw Error(ErrorCode::kNonConformingField, "correctness oracle needs a conforming prime");
  }
  CorrectnessSummary summary;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, kTrialStream, trial));
    RunConfig cfg = base;
    cfg.seed = rng();
    cfg.models.reset();
    cfg.adversaries.clear();

    std::vector<std::size_t> users(cfg.users);
    for (std::size_t n = 0; n < cfg.users; ++n) users[n] = n;
    std::shuffle(users.begin(), users.end(), rng);
    const std::size_t count =
        exact_dropouts ? *exact_dropouts
                       : std::uniform_int_distribution<std::size_t>(0, cfg.max_dropouts)(rng);
    cfg.dropouts.assign(users.begin(), users.begin() + static_cast<std::ptrdiff_t>(count));

    ++summary.trials;
    try {
      const auto run = simulate_full(cfg);
      const auto models = models_for(cfg, run.setup.field);
      std::vector<std::uint64_t> expected(cfg.model_length, 0);
      for (std::size_t n = 0; n < cfg.users; ++n) {
        const bool dropped =
            std::find(cfg.dropouts.begin(), cfg.dropouts.end(), n) != cfg.dropouts.end();
        if (dropped && cfg.timing == DropTiming::kBeforeIntra) continue;
        for (std::size_t i = 0; i < cfg.model_length; ++i) expected[i] += models[n].entries()[i];
      }
      const bool match = std::equal(expected.begin(), expected.end(), run.report.aggregate.begin(),
                                    run.report.aggregate.end(),
                                    [](std::uint64_t a, Element b) { return a == b; });
      if (match) {
        ++summary.matches;
      } else {
        summary.failures.push_back("trial " + std::to_string(trial) + ": aggregate mismatch");
      }
    } catch (const Error& e) {
      summary.failures.push_back("trial " + std::to_string(trial) + ": " + e.what());
    }
  }
  return summary;
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t jobs) {
  SweepResult result;
  std::vector<SweepRow> pending;
  for (const std::size_t k : spec.k_values) {
    try {
      make_params(spec.base.users, spec.base.max_colluders, spec.base.max_dropouts, k,
                  spec.base.model_length, spec.base.ell);
    } catch (const Error& e) {
      result.skipped.push_back("K=" + std::to_string(k) + ": " + e.what());
      continue;
    }
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
      SweepRow row;
      row.k = k;
      row.repetition = rep;
      row.seed = spec.repetitions == 1 ? spec.base.seed : derive_seed(spec.base.seed, k, rep);
      pending.push_back(row);
    }
  }

  std::vector<std::optional<std::string>> errors(pending.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pending.size(); i = next++) {
      RunConfig cfg = spec.base;
      cfg.partitions = pending[i].k;
      cfg.seed = pending[i].seed;
      try {
        const auto report = simulate(cfg);
        pending[i].r_server = report.loads.server;
        pending[i].r_user_max = report.loads.user_max;
        pending[i].edges = report.links.total;
        pending[i].silent_edges = report.links.silent;
        pending[i].delay = report.delay;
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, pending.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < threads; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (errors[i]) {
      result.skipped.push_back("K=" + std::to_string(pending[i].k) + " repetition " +
                               std::to_string(pending[i].repetition) + ": " + *errors[i]);
    } else {
      result.rows.push_back(pending[i]);
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  out << std::setprecision(10);
  for (const auto& r : result.rows) {
    out << r.k << ',' << r.repetition << ',' << r.seed << ',' << r.r_server.to_double() << ','
        << r.r_server.to_string() << ',' << r.r_user_max.to_double() << ','
        << r.r_user_max.to_string() << ',' << r.edges << ',' << r.silent_edges << ',' << r.delay
        << '\n';
  }
  return out.str();
}

}  // namespace swiftagg
