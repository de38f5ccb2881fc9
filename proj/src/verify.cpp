#include "swiftagg/verify.hpp"

#include <algorithm>
#include <sstream>

#include "swiftagg/error.hpp"

namespace swiftagg {
namespace {

void check(SuiteResult& suite, std::string name, bool ok, std::string detail = {}) {
  suite.checks.push_back({std::move(name), ok, std::move(detail)});
}

std::string got(const Rational& r) { return "got " + r.to_string(); }

std::vector<std::uint64_t> plain_sum(const std::vector<UserState>& users,
                                     const std::vector<std::size_t>& excluded, std::size_t len) {
  std::vector<std::uint64_t> sum(len, 0);
  for (const auto& u : users) {
    if (std::find(excluded.begin(), excluded.end(), u.id.index) != excluded.end()) continue;
    for (std::size_t i = 0; i < len; ++i) sum[i] += u.model.entries()[i];
  }
  return sum;
}

bool equals(const std::vector<std::uint64_t>& a, const std::vector<Element>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](std::uint64_t x, Element y) { return x == y; });
}

// The server-facing message of every surviving position equals the global
// aggregate polynomial evaluated at that position's point.
bool server_sees_aggregate_polynomial(const SimulationRun& run, std::size_t dropped) {
  const auto& ctx = run.setup.field;
  const auto& params = run.setup.params;
  SharePolynomial total(params.recovery_threshold(), params.segment_length());
  for (const auto& u : run.protocol.users) {
    if (u.id.index == dropped) continue;
    const auto poly = make_share_poly(partition_model(u.model, params.partitions), u.noise);
    for (std::size_t j = 0; j < poly.num_coeffs(); ++j) {
      auto dst = total.coefficient(j);
      const auto src = poly.coefficient(j);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ctx.add(dst[i], src[i]);
    }
  }
  for (const auto& m : run.protocol.server_messages) {
    if (m.null_flag) continue;
    if (share_at(ctx, total, evaluation_point(m.sender.position)).values != m.values) return false;
  }
  return true;
}

void example_checks(SuiteResult& suite, const std::string& tag, const RunConfig& cfg,
                    Rational r_server, Rational r_user, std::size_t edges, std::size_t silent) {
  const auto run = simulate_full(cfg);
  const auto& r = run.report;
  check(suite, tag + " R_server = " + r_server.to_string(), r.loads.server == r_server,
        got(r.loads.server));
  check(suite, tag + " R_user_max = " + r_user.to_string(), r.loads.user_max == r_user,
        got(r.loads.user_max));
  check(suite, tag + " edges = " + std::to_string(edges), r.links.total == edges,
        "got " + std::to_string(r.links.total));
  check(suite, tag + " silent edges = " + std::to_string(silent), r.links.silent == silent,
        "got " + std::to_string(r.links.silent));
  check(suite, tag + " aggregate = sum of survivors",
        equals(plain_sum(run.protocol.users, cfg.dropouts, cfg.model_length), r.aggregate));
  check(suite, tag + " server messages = F(alpha_t)",
        server_sees_aggregate_polynomial(run, cfg.dropouts.front()));
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RunConfig example1_config(std::uint64_t seed) {
  RunConfig c;
  c.users = 12;
  c.max_colluders = 2;
  c.max_dropouts = 1;
  c.partitions = 9;
  c.model_length = 18;
  c.ell = 256;
  c.dropouts = {2};
  c.seed = seed;
  return c;
}

RunConfig example2_config(std::uint64_t seed) {
  RunConfig c = example1_config(seed);
  c.partitions = 3;
  c.tree.shape = TreeSpec::Shape::kChain;
  return c;
}

std::vector<std::pair<std::string, PrivacyConfig>> privacy_matrix() {
  std::vector<std::pair<std::string, PrivacyConfig>> out;

  PrivacyConfig four;
  four.run.users = 4;
  four.run.max_colluders = 1;
  four.run.partitions = 1;
  four.run.model_length = 1;
  four.run.ell = 2;
  four.run.prime_override = 5;
  four.model_alphabet = 5;  // whole field
  for (std::size_t a = 0; a < 4; ++a) {
    PrivacyConfig c = four;
    c.run.adversaries = {a};
    out.emplace_back("N=4 K=1 p=5 chain, adversary user " + std::to_string(a), c);
  }

  PrivacyConfig six;
  six.run.users = 6;
  six.run.max_colluders = 1;
  six.run.partitions = 2;
  six.run.model_length = 2;
  six.run.ell = 2;
  six.run.prime_override = 7;
  for (std::size_t a = 0; a < 6; ++a) {
    PrivacyConfig c = six;
    c.run.adversaries = {a};
    out.emplace_back("N=6 K=2 p=7 chain, adversary user " + std::to_string(a), c);
  }

  PrivacyConfig server_only;
  server_only.run.users = 2;
  server_only.run.partitions = 2;
  server_only.run.model_length = 2;
  server_only.run.ell = 2;
  server_only.model_alphabet = 3;
  out.emplace_back("N=2 T=0 K=2 p=3, server only", server_only);

  PrivacyConfig star = four;
  star.run.tree.shape = TreeSpec::Shape::kStar;
  star.run.adversaries = {2};
  star.prior = ModelPrior::kDuplicated;
  out.emplace_back("N=4 K=1 p=5, duplicated honest models, adversary user 2", star);
  return out;
}

PrivacyConfig privacy_negative_control() {
  auto c = privacy_matrix().front().second;
  c.noise = NoiseMode::kDegenerate;
  return c;
}

SuiteResult verify_examples() {
  SuiteResult suite{"examples", {}};
  example_checks(suite, "example 1:", example1_config(), Rational(11, 9), Rational(4, 3), 78, 12);
  example_checks(suite, "example 2:", example2_config(), Rational(5, 3), Rational(2), 42, 7);
  return suite;
}

SuiteResult verify_formulas() {
  SuiteResult suite{"formulas", {}};
  std::size_t runs = 0;
  std::size_t bad = 0;
  std::ostringstream failures;
  for (const std::size_t t : {1, 2}) {
    for (const std::size_t d : {0, 1}) {
      for (std::size_t k = 1; k + t + d <= 24; ++k) {
        if (24 % (k + t + d) != 0) continue;
        for (const auto shape : {TreeSpec::Shape::kChain, TreeSpec::Shape::kStar}) {
          RunConfig c;
          c.users = 24;
          c.max_colluders = t;
          c.max_dropouts = d;
          c.partitions = k;
          c.model_length = 2 * k;
          c.ell = 16;
          c.tree.shape = shape;
          c.seed = 7;
          const auto r = simulate(c);
          const auto kk = static_cast<std::int64_t>(k);
          const bool ok = r.loads.server == Rational(1) + Rational(static_cast<std::int64_t>(t), kk) &&
                          r.loads.user_max ==
                              Rational(1) + Rational(static_cast<std::int64_t>(t + d), kk) &&
                          r.links.total == count_edges(r.params) &&
                          r.links.total == 24 * (k + t + d + 1) / 2;
          ++runs;
          if (!ok) {
            ++bad;
            failures << " T=" << t << ",D=" << d << ",K=" << k;
          }
        }
      }
    }
  }
  check(suite, "N=24 sweep: R_server = 1+T/K, R_user = 1+(T+D)/K, |E| = N(K+T+D+1)/2", bad == 0,
        std::to_string(runs) + " runs" + failures.str());

  for (const std::size_t n : {12, 24, 60}) {
    RunConfig c;
    c.users = n;
    c.max_colluders = 2;
    c.max_dropouts = 1;
    c.partitions = n - 3;
    c.model_length = n - 3;
    c.ell = 256;
    c.assert_loads = true;
    const auto r = simulate(c);
    const Rational want = Rational(1) + Rational(2, static_cast<std::int64_t>(n - 3));
    const std::uint64_t lo = n * 255;
    const bool prime_ok = r.prime > lo && r.prime <= 2 * lo && is_prime(r.prime);
    check(suite, "K=N-T-D, N=" + std::to_string(n) + ": R_server = " + want.to_string(),
          r.loads.server == want && prime_ok && r.conforming,
          got(r.loads.server) + ", p=" + std::to_string(r.prime) + ", " +
              std::to_string(r.bits_per_symbol) + " bits/symbol");
  }

  const DelayModel delays{1.0, 0.5};
  const double star = total_delay(AggregationTree::star(7), delays);
  const double chain = total_delay(AggregationTree::chain(7), delays);
  check(suite, "star of 7 groups: delay = 2 inter + intra", star == 2.5,
        "got " + std::to_string(star));
  check(suite, "chain of 7 groups: delay = 7 inter + intra", chain == 7.5,
        "got " + std::to_string(chain));
  return suite;
}

SuiteResult verify_correctness() {
  SuiteResult suite{"correctness", {}};
  const std::size_t param_sets[][4] = {{12, 2, 1, 3}, {12, 2, 1, 9}, {24, 3, 1, 4}};
  std::uint64_t seed = 1000;
  for (const auto& ps : param_sets) {
    for (const auto shape : {TreeSpec::Shape::kChain, TreeSpec::Shape::kStar}) {
      RunConfig base;
      base.users = ps[0];
      base.max_colluders = ps[1];
      base.max_dropouts = ps[2];
      base.partitions = ps[3];
      base.model_length = 2 * ps[3] + 1;  // exercises zero padding
      base.ell = 1000;
      base.tree.shape = shape;
      std::ostringstream name;
      name << "(N,T,D,K)=(" << ps[0] << ',' << ps[1] << ',' << ps[2] << ',' << ps[3] << ") "
           << (shape == TreeSpec::Shape::kChain ? "chain" : "star");
      const auto random = correctness_oracle(base, 200, seed++);
      check(suite, name.str() + ", |dropouts| <= D", random.passed(),
            std::to_string(random.matches) + "/" + std::to_string(random.trials));
      const auto boundary = correctness_oracle(base, 50, seed++, base.max_dropouts);
      check(suite, name.str() + ", |dropouts| = D", boundary.passed(),
            std::to_string(boundary.matches) + "/" + std::to_string(boundary.trials));
    }
  }
  return suite;
}

SuiteResult verify_privacy() {
  SuiteResult suite{"privacy", {}};
  for (const auto& [name, cfg] : privacy_matrix()) {
    const auto r = privacy_bruteforce(cfg);
    check(suite, name + ": I = 0", r.exactly_zero,
          std::to_string(r.model_assignments) + " model x " +
              std::to_string(r.noise_assignments) + " noise assignments");
  }
  const auto neg = privacy_bruteforce(privacy_negative_control());
  check(suite, "degenerate noise control: I > 0",
        !neg.exactly_zero && neg.mutual_information_bits > 0.0L,
        "I = " + std::to_string(static_cast<double>(neg.mutual_information_bits)) + " bits");
  return suite;
}

std::optional<SuiteResult> run_suite(std::string_view name) {
  if (name == "examples") return verify_examples();
  if (name == "formulas") return verify_formulas();
  if (name == "correctness") return verify_correctness();
  if (name == "privacy") return verify_privacy();
  return std::nullopt;
}

}  // namespace swiftagg
