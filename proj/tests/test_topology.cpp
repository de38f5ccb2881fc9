#include <gtest/gtest.h>

#include "swiftagg/error.hpp"
#include "swiftagg/topology.hpp"

namespace swiftagg {
namespace {

using Groups = std::vector<std::size_t>;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kConfigInvalid;
}

TEST(Params, Derived) {
  const auto p = make_params(12, 2, 1, 3, 6, 256);
  EXPECT_EQ(p.group_size, 6u);
  EXPECT_EQ(p.group_count, 2u);
  EXPECT_EQ(p.segment_length(), 2u);
  EXPECT_EQ(p.recovery_threshold(), 5u);
}

TEST(Params, Rejections) {
  EXPECT_EQ(code_of([] { make_params(12, 2, 1, 4, 4, 2); }), ErrorCode::kIndivisibleGroups);
  EXPECT_EQ(code_of([] { make_params(12, 11, 1, 1, 1, 2); }), ErrorCode::kThresholdViolation);
  EXPECT_EQ(code_of([] { make_params(4, 0, 4, 1, 1, 2); }), ErrorCode::kThresholdViolation);
  EXPECT_EQ(code_of([] { make_params(12, 2, 1, 0, 1, 2); }), ErrorCode::kBadK);
}

TEST(Groups, Assignment) {
  const auto p = make_params(12, 2, 1, 3, 3, 256);
  const auto g = assign_groups(p);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1], (Groups{6, 7, 8, 9, 10, 11}));
  const auto id = user_id(p, 8);
  EXPECT_EQ(id.group, 1u);
  EXPECT_EQ(id.position, 2u);
  EXPECT_EQ(user_index(p, 1, 2), 8u);
}

TEST(Tree, ChainAndStar) {
  const auto chain = AggregationTree::chain(4);
  EXPECT_EQ(chain.parent(0), 1u);
  EXPECT_EQ(chain.parent(3), std::nullopt);
  EXPECT_EQ(chain.hops_to_server(0), 4u);
  EXPECT_EQ(chain.descendants(3), (Groups{0, 1, 2}));
  EXPECT_EQ(chain.ancestors(0), (Groups{1, 2, 3}));

  const auto star = AggregationTree::star(4);
  EXPECT_EQ(star.children(3), (Groups{0, 1, 2}));
  EXPECT_EQ(star.hops_to_server(1), 2u);
  EXPECT_EQ(star.ancestors(1), (Groups{3}));
}

// Seven groups: 0,1,2 -> 4; 3 -> 5; 4,5 -> 6; 6 -> server.
TEST(Tree, IrregularQueries) {
  const auto tree = AggregationTree::from_parents({4, 4, 4, 5, 6, 6, std::nullopt});
  EXPECT_EQ(tree.descendants(6), (Groups{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(tree.descendants(4), (Groups{0, 1, 2}));
  EXPECT_EQ(tree.ancestors(0), (Groups{4, 6}));
  EXPECT_EQ(tree.ancestors(3), (Groups{5, 6}));
  EXPECT_EQ(tree.children(4), (Groups{0, 1, 2}));
  EXPECT_EQ(tree.hops_to_server(3), 3u);
  const auto order = tree.bottom_up_order();
  std::vector<std::size_t> pos(7);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (std::size_t g = 0; g < 6; ++g) EXPECT_LT(pos[g], pos[*tree.parent(g)]);
  EXPECT_EQ(code_of([&] { tree.parent(7); }), ErrorCode::kUnknownGroup);
}

TEST(Tree, Rejections) {
  EXPECT_EQ(code_of([] { AggregationTree::from_parents({1, 0, std::nullopt}); }),
            ErrorCode::kNotATree);
  EXPECT_EQ(code_of([] { AggregationTree::from_parents({std::nullopt, 0}); }),
            ErrorCode::kBadRoot);
  EXPECT_EQ(code_of([] { AggregationTree::from_parents({std::nullopt, std::nullopt}); }),
            ErrorCode::kBadRoot);
  EXPECT_EQ(code_of([] { AggregationTree::from_parents({5, std::nullopt}); }),
            ErrorCode::kNotATree);
}

TEST(Edges, ClosedForm) {
  EXPECT_EQ(count_edges(make_params(12, 2, 1, 9, 9, 2)), 78u);
  EXPECT_EQ(count_edges(make_params(12, 2, 1, 3, 3, 2)), 42u);
  EXPECT_EQ(count_edges(make_params(12, 2, 1, 1, 1, 2)), 30u);
}

TEST(Delay, Shapes) {
  const DelayModel d{2.0, 0.25};
  EXPECT_DOUBLE_EQ(total_delay(AggregationTree::star(7), d), 4.25);
  EXPECT_DOUBLE_EQ(total_delay(AggregationTree::chain(7), d), 14.25);
  EXPECT_DOUBLE_EQ(total_delay(AggregationTree::chain(1), d), 2.25);
  EXPECT_DOUBLE_EQ(
      total_delay(AggregationTree::from_parents({4, 4, 4, 5, 6, 6, std::nullopt}), d), 6.25);
}

}  // namespace
}  // namespace swiftagg
