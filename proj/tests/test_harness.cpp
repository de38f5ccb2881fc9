#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "swiftagg/error.hpp"
#include "swiftagg/harness.hpp"
#include "swiftagg/verify.hpp"

namespace swiftagg {
namespace {

TEST(Harness, ExampleOneMetrics) {
  const auto r = simulate(example1_config());
  EXPECT_EQ(r.loads.server, Rational(11, 9));
  EXPECT_EQ(r.loads.user_max, Rational(4, 3));
  EXPECT_EQ(r.links.total, 78u);
  EXPECT_EQ(r.links.silent, 12u);
  EXPECT_EQ(r.params.group_count, 1u);
  EXPECT_EQ(r.server.sent, 12u);
  EXPECT_EQ(r.server.non_null, 11u);
}

TEST(Harness, ExampleTwoMetrics) {
  const auto r = simulate(example2_config());
  EXPECT_EQ(r.loads.server, Rational(5, 3));
  EXPECT_EQ(r.loads.user_max, Rational(2));
  EXPECT_EQ(r.links.total, 42u);
  EXPECT_EQ(r.links.silent, 7u);
  EXPECT_DOUBLE_EQ(r.delay, 2.0);
}

TEST(Harness, NoDropoutLoads) {
  RunConfig c = example1_config();
  c.dropouts.clear();
  const auto r = simulate(c);
  EXPECT_EQ(r.loads.server, Rational(11, 9));  // server keeps K + T evaluations
  EXPECT_EQ(r.loads.user_max, Rational(4, 3));
  EXPECT_EQ(r.loads.user_avg, Rational(4, 3));
  EXPECT_EQ(r.links.silent, 1u);  // the unused server link
}

TEST(Harness, TrivialSingleGroupNoNoise) {
  RunConfig c;
  c.users = 4;
  c.partitions = 4;
  c.model_length = 4;
  c.ell = 8;
  const auto r = simulate(c);
  EXPECT_EQ(r.loads.server, Rational(1));
  EXPECT_EQ(r.loads.server_symbols, 4u);
}

TEST(Harness, SweepLoadsFollowK) {
  for (std::size_t k : {1, 3, 9}) {
    RunConfig c = example1_config();
    c.partitions = k;
    const auto r = simulate(c);
    const auto kk = static_cast<std::int64_t>(k);
    EXPECT_EQ(r.loads.server, Rational(kk + 2, kk)) << k;
    EXPECT_EQ(r.links.total, 12 * (k + 4) / 2) << k;
  }
}

TEST(Harness, DeterministicForSeed) {
  const auto a = simulate_full(example2_config(3));
  const auto b = simulate_full(example2_config(3));
  const auto c = simulate_full(example2_config(4));
  EXPECT_EQ(a.protocol.transcript.to_csv(), b.protocol.transcript.to_csv());
  EXPECT_EQ(a.report.aggregate, b.report.aggregate);
  EXPECT_NE(a.report.aggregate, c.report.aggregate);
}

TEST(Harness, TranscriptCsv) {
  const auto run = simulate_full(example1_config());
  std::istringstream in(run.protocol.transcript.to_csv());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "phase,sender,receiver,symbols,null,delivered");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, run.protocol.transcript.messages().size());
  // 11 senders to all 12 positions, the dropped user's 11 null entries, and
  // 12 server-bound entries
  EXPECT_EQ(rows, 11u * 12u + 11u + 12u);
}

TEST(Harness, ValidationErrors) {
  auto expect_code = [](RunConfig c, ErrorCode code) {
    try {
      simulate(c);
      ADD_FAILURE() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  };
  RunConfig c = example1_config();
  c.dropouts = {1, 2};
  expect_code(c, ErrorCode::kConfigInvalid);
  c = example1_config();
  c.dropouts = {12};
  expect_code(c, ErrorCode::kConfigInvalid);
  c = example1_config();
  c.adversaries = {0, 1, 3};
  expect_code(c, ErrorCode::kConfigInvalid);
  c = example1_config();
  c.prime_override = 3067;
  c.assert_loads = true;
  expect_code(c, ErrorCode::kNonConformingField);
  c = example1_config();
  c.models = std::vector<std::vector<Element>>(12, std::vector<Element>(18, 256));
  expect_code(c, ErrorCode::kConfigInvalid);
  c = example1_config();
  c.partitions = 4;
  expect_code(c, ErrorCode::kIndivisibleGroups);
}

TEST(Harness, ExplicitModels) {
  RunConfig c = example2_config();
  std::vector<std::vector<Element>> models(12, std::vector<Element>(18, 0));
  for (std::size_t n = 0; n < 12; ++n) models[n][0] = static_cast<Element>(n);
  c.models = models;
  const auto r = simulate(c);
  EXPECT_EQ(r.aggregate[0], 66u - 2u);
  EXPECT_EQ(r.aggregate[1], 0u);
}

TEST(AdversaryView, ContainsWhatColludersReceive) {
  RunConfig c = example2_config();
  const auto run = simulate_full(c);
  // user 7 is in the last group; user 1 sits in the first
  const auto view = collect_adversary_view(run.protocol.transcript, run.protocol.users, {1, 7});
  ASSERT_EQ(view.members.size(), 2u);
  const auto& a = view.members[0];
  EXPECT_EQ(a.user, 1u);
  ASSERT_EQ(a.intra.size(), 5u);  // peers 0,3,4,5 plus the dropped user's null
  EXPECT_EQ(std::count_if(a.intra.begin(), a.intra.end(), [](const auto& m) { return m.null; }),
            1);
  EXPECT_TRUE(a.inter.empty());   // leaf group
  const auto& b = view.members[1];
  EXPECT_EQ(b.intra.size(), 5u);  // includes the null from user 2
  ASSERT_EQ(b.inter.size(), 1u);
  EXPECT_EQ(b.inter[0].sender, Node::user(1));
  EXPECT_EQ(view.server.size(), 6u);  // five values and one null
  EXPECT_EQ(a.model.entries(), run.protocol.users[1].model.entries());
}

TEST(AdversaryView, DroppedAdversarySeesNothingAfterDropping) {
  RunConfig c = example2_config();
  const auto run = simulate_full(c);
  const auto view = collect_adversary_view(run.protocol.transcript, run.protocol.users, {2});
  EXPECT_TRUE(view.members[0].intra.empty());
  EXPECT_TRUE(view.members[0].inter.empty());
}

TEST(Correctness, OracleAgrees) {
  RunConfig c = example2_config();
  c.dropouts.clear();
  const auto s = correctness_oracle(c, 50, 9);
  EXPECT_TRUE(s.passed()) << (s.failures.empty() ? "" : s.failures.front());
  EXPECT_EQ(s.trials, 50u);
}

TEST(Sweep, RowsAndSkips) {
  SweepSpec spec;
  spec.base = example1_config();
  spec.k_values = {1, 3, 4, 9};
  spec.repetitions = 2;
  const auto one = run_sweep(spec, 1);
  const auto many = run_sweep(spec, 4);
  ASSERT_EQ(one.rows.size(), 6u);
  ASSERT_EQ(one.skipped.size(), 1u);
  EXPECT_EQ(sweep_csv(one), sweep_csv(many));
  EXPECT_EQ(one.rows[0].r_server, Rational(3));
  EXPECT_EQ(one.rows[2].r_server, Rational(5, 3));
  EXPECT_EQ(one.rows[4].edges, 78u);
  for (std::size_t i = 2; i < one.rows.size(); i += 2) {
    EXPECT_LE(one.rows[i].r_server, one.rows[i - 2].r_server);
    EXPECT_GT(one.rows[i].edges, one.rows[i - 2].edges);
  }
}

TEST(Sweep, SingleKMatchesRun) {
  SweepSpec spec;
  spec.base = example2_config();
  spec.k_values = {3};
  const auto rows = run_sweep(spec, 1).rows;
  const auto r = simulate(example2_config());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].r_server, r.loads.server);
  EXPECT_EQ(rows[0].r_user_max, r.loads.user_max);
  EXPECT_EQ(rows[0].edges, r.links.total);
  EXPECT_EQ(rows[0].silent_edges, r.links.silent);
}

}  // namespace
}  // namespace swiftagg
