#include "swiftagg/topology.hpp"

#include <algorithm>
#include <string>

#include "swiftagg/error.hpp"

namespace swiftagg {

ProtocolParams make_params(std::size_t n, std::size_t t, std::size_t d, std::size_t k,
                           std::size_t l, std::uint64_t ell) {
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "N must be at least 1");
  if (l < 1) throw Error(ErrorCode::kInvalidParams, "L must be at least 1");
  if (ell < 2) throw Error(ErrorCode::kInvalidParams, "ell must be at least 2");
  if (d >= n || t >= n - d) {
    throw Error(ErrorCode::kThresholdViolation,
                "need T < N - D (T=" + std::to_string(t) + ", N=" + std::to_string(n) +
                    ", D=" + std::to_string(d) + ")");
  }
  if (k < 1 || k > n - t - d) {
    throw Error(ErrorCode::kBadK, "K=" + std::to_string(k) + " outside [1, " +
                                      std::to_string(n - t - d) + "]");
  }
  const std::size_t nu = k + t + d;
  if (n % nu != 0) {
    throw Error(ErrorCode::kIndivisibleGroups,
                "group size " + std::to_string(nu) + " does not divide N=" + std::to_string(n));
  }
  ProtocolParams p;
  p.users = n;
  p.max_colluders = t;
  p.max_dropouts = d;
  p.partitions = k;
  p.model_length = l;
  p.ell = ell;
  p.group_size = nu;
  p.group_count = n / nu;
  return p;
}

UserId user_id(const ProtocolParams& params, std::size_t index) {
  return {index, index / params.group_size, index % params.group_size};
}

std::size_t user_index(const ProtocolParams& params, std::size_t group, std::size_t position) {
  return group * params.group_size + position;
}

std::vector<std::vector<std::size_t>> assign_groups(const ProtocolParams& params) {
  std::vector<std::vector<std::size_t>> groups(params.group_count);
  for (std::size_t n = 0; n < params.users; ++n) groups[n / params.group_size].push_back(n);
  return groups;
}

AggregationTree::AggregationTree(std::vector<std::optional<std::size_t>> parents)
    : parents_(std::move(parents)), children_(parents_.size()) {
  for (std::size_t g = 0; g < parents_.size(); ++g) {
    if (parents_[g]) children_[*parents_[g]].push_back(g);
  }
}

AggregationTree AggregationTree::chain(std::size_t group_count) {
  if (group_count == 0) throw Error(ErrorCode::kNotATree, "tree needs at least one group");
  std::vector<std::optional<std::size_t>> parents(group_count);
  for (std::size_t g = 0; g + 1 < group_count; ++g) parents[g] = g + 1;
  return AggregationTree(std::move(parents));
}

AggregationTree AggregationTree::star(std::size_t group_count) {
  if (group_count == 0) throw Error(ErrorCode::kNotATree, "tree needs at least one group");
  std::vector<std::optional<std::size_t>> parents(group_count);
  for (std::size_t g = 0; g + 1 < group_count; ++g) parents[g] = group_count - 1;
  return AggregationTree(std::move(parents));
}

AggregationTree AggregationTree::from_parents(
    const std::vector<std::optional<std::size_t>>& parents) {
  const std::size_t n = parents.size();
  if (n == 0) throw Error(ErrorCode::kNotATree, "tree needs at least one group");
  std::size_t server_children = 0;
  for (std::size_t g = 0; g < n; ++g) {
    if (!parents[g]) {
      ++server_children;
      if (g != n - 1) {
        throw Error(ErrorCode::kBadRoot, "group " + std::to_string(g) +
                                             " is attached to the server; only the last group " +
                                             std::to_string(n - 1) + " may be");
      }
    } else if (*parents[g] >= n) {
      throw Error(ErrorCode::kNotATree, "group " + std::to_string(g) + " has unknown parent " +
                                            std::to_string(*parents[g]));
    } else if (*parents[g] == g) {
      throw Error(ErrorCode::kNotATree, "group " + std::to_string(g) + " is its own parent");
    }
  }
  if (server_children != 1) {
    throw Error(ErrorCode::kBadRoot, "the server must have exactly one child, the last group");
  }
  // every group must reach the root group without revisiting a vertex
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t cur = g;
    for (std::size_t steps = 0; parents[cur]; ++steps) {
      if (steps > n) {
        throw Error(ErrorCode::kNotATree, "cycle through group " + std::to_string(g));
      }
      cur = *parents[cur];
    }
  }
  return AggregationTree(parents);
}

void AggregationTree::check_group(std::size_t g) const {
  if (g >= parents_.size()) {
    throw Error(ErrorCode::kUnknownGroup, "group " + std::to_string(g) + " not in tree");
  }
}

std::optional<std::size_t> AggregationTree::parent(std::size_t g) const {
  check_group(g);
  return parents_[g];
}

const std::vector<std::size_t>& AggregationTree::children(std::size_t g) const {
  check_group(g);
  return children_[g];
}

std::vector<std::size_t> AggregationTree::descendants(std::size_t g) const {
  check_group(g);
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack(children_[g].begin(), children_[g].end());
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    out.push_back(c);
    stack.insert(stack.end(), children_[c].begin(), children_[c].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> AggregationTree::ancestors(std::size_t g) const {
  check_group(g);
  std::vector<std::size_t> out;
  for (auto p = parents_[g]; p; p = parents_[*p]) out.push_back(*p);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t AggregationTree::hops_to_server(std::size_t g) const {
  check_group(g);
  std::size_t hops = 1;
  for (auto p = parents_[g]; p; p = parents_[*p]) ++hops;
  return hops;
}

std::vector<std::size_t> AggregationTree::bottom_up_order() const {
  // reverse of a pre-order walk from the root group
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{root_group()};
  while (!stack.empty()) {
    const std::size_t g = stack.back();
    stack.pop_back();
    order.push_back(g);
    stack.insert(stack.end(), children_[g].begin(), children_[g].end());
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::size_t count_edges(const ProtocolParams& params) {
  return params.users * (params.group_size + 1) / 2;
}

double total_delay(const AggregationTree& tree, const DelayModel& delays) {
  std::size_t deepest = 0;
  for (std::size_t g = 0; g < tree.group_count(); ++g) {
    deepest = std::max(deepest, tree.hops_to_server(g));
  }
  return static_cast<double>(deepest) * delays.inter + delays.intra;
}

}  // namespace swiftagg
