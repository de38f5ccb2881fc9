#include <gtest/gtest.h>

#include "swiftagg/error.hpp"
#include "swiftagg/privacy.hpp"
#include "swiftagg/verify.hpp"

namespace swiftagg {
namespace {

PrivacyConfig tiny(std::vector<std::size_t> adversaries) {
  PrivacyConfig c = privacy_matrix().front().second;
  c.run.adversaries = std::move(adversaries);
  return c;
}

TEST(Privacy, TinyChainLeaksNothing) {
  for (std::size_t a = 0; a < 4; ++a) {
    const auto r = privacy_bruteforce(tiny({a}));
    EXPECT_TRUE(r.exactly_zero) << a;
    EXPECT_EQ(r.mutual_information_bits, 0.0L);
    EXPECT_EQ(r.noise_assignments, 125u);  // three honest users, one noise symbol each
  }
}

TEST(Privacy, ServerAloneLeaksNothing) {
  const auto r = privacy_bruteforce(tiny({}));
  EXPECT_TRUE(r.exactly_zero);
}

TEST(Privacy, DegenerateNoiseLeaks) {
  const auto r = privacy_bruteforce(privacy_negative_control());
  EXPECT_FALSE(r.exactly_zero);
  EXPECT_GT(r.mutual_information_bits, 0.0L);
}

TEST(Privacy, StarRootGroupAdversaryLearnsNothing) {
  // Three groups of two on a star; the adversary sits in the root group and
  // receives both leaf groups' partial sums.
  PrivacyConfig c = tiny({4});
  c.run.users = 6;
  c.run.tree.shape = TreeSpec::Shape::kStar;
  c.model_alphabet = 2;
  const auto r = privacy_bruteforce(c);
  EXPECT_TRUE(r.exactly_zero);
  EXPECT_EQ(r.model_assignments, 32u);
}

// Two colluders in a group of three with T = 1 hold two evaluations of the
// third member's degree-1 share polynomial.
TEST(Privacy, ColludersBeyondThresholdLeak) {
  PrivacyConfig c = tiny({0, 1});
  c.run.users = 6;
  c.run.max_dropouts = 1;
  c.model_alphabet = 2;
  c.allow_excess_colluders = true;
  const auto r = privacy_bruteforce(c);
  EXPECT_FALSE(r.exactly_zero);
  EXPECT_GT(r.mutual_information_bits, 0.0L);

  c.allow_excess_colluders = false;
  EXPECT_THROW(privacy_bruteforce(c), Error);
}

TEST(Privacy, DroppedHonestUserAfterIntraStillHidden) {
  PrivacyConfig c = tiny({0});
  c.run.users = 6;
  c.run.max_dropouts = 1;  // groups of three
  c.model_alphabet = 2;
  c.run.dropouts = {4};
  c.run.timing = DropTiming::kAfterIntra;
  const auto r = privacy_bruteforce(c);
  EXPECT_TRUE(r.exactly_zero);
}

TEST(Privacy, BudgetEnforced) {
  PrivacyConfig c = tiny({0});
  c.budget = 10;
  try {
    privacy_bruteforce(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchSpaceTooLarge);
  }
}

TEST(Privacy, ViewFlattening) {
  AdversaryView v;
  AdversaryMember m;
  m.intra.push_back({Phase::kIntra, Node::user(1), false, {3, 4}});
  m.intra.push_back({Phase::kIntra, Node::user(2), true, {}});
  m.inter.push_back({Phase::kInter, Node::user(5), false, {6}});
  v.members.push_back(m);
  v.server.push_back({Phase::kServer, Node::user(9), false, {1}});
  EXPECT_EQ(flatten_view(v), (std::vector<Element>{3, 4, 6, 1}));
}

}  // namespace
}  // namespace swiftagg
