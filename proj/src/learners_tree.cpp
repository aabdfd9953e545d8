#include <algorithm>
#include <tuple>

#include "learners_internal.hpp"

namespace cpnet {

namespace {

SwapInstance swap_in(const Outcome& context, int v, int a, int b) {
  SwapInstance x{context, context, v};
  x.first[static_cast<std::size_t>(v)] = a;
  x.second[static_cast<std::size_t>(v)] = b;
  return x;
}

// Merge sort over the values of v under one context; every comparison is a query.
class OrderSorter {
 public:
  OrderSorter(detail::Channel& channel, Outcome context, int v)
      : channel_(channel), context_(std::move(context)), v_(v) {}

  Order sort(int m) {
    Order values(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) values[static_cast<std::size_t>(i)] = i;
    merge_sort(values);
    for (const auto& [a, b, a_first] : record_) {
      const bool consistent = (rank_in(values, a) < rank_in(values, b)) == a_first;
      if (!consistent) throw OracleContradiction("comparisons within a test set are cyclic");
    }
    return values;
  }

 private:
  bool prefers(int a, int b) {
    const bool a_first = channel_.observe(swap_in(context_, v_, a, b)) == 1;
    record_.emplace_back(a, b, a_first);
    return a_first;
  }

  void merge_sort(Order& values) {
    if (values.size() < 2) return;
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    Order left(values.begin(), mid), right(mid, values.end());
    merge_sort(left);
    merge_sort(right);
    std::size_t i = 0, j = 0, out = 0;
    while (i < left.size() && j < right.size())
      values[out++] = prefers(left[i], right[j]) ? left[i++] : right[j++];
    while (i < left.size()) values[out++] = left[i++];
    while (j < right.size()) values[out++] = right[j++];
  }

  detail::Channel& channel_;
  Outcome context_;
  int v_;
  std::vector<std::tuple<int, int, bool>> record_;
};

void require_tree_spec(const OracleSession& oracle, const ClassSpec& spec) {
  spec.validate();
  if (spec.k > 1) throw ValidationError("the tree learner needs k <= 1");
  if (oracle.spec().n != spec.n || oracle.spec().m != spec.m ||
      oracle.spec().completeness != spec.completeness)
    throw ValidationError("oracle session does not match the class parameters");
}

std::vector<int> others(int n, int v) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (i != v) out.push_back(i);
  return out;
}

Cpt tree_cpt(int v, const std::optional<int>& parent, const std::vector<Order>& orders) {
  if (!parent) return {v, {}, {orders.front()}};
  return {v, {*parent}, orders};
}

LearnResult finish(OracleSession& oracle, std::size_t start, const ClassSpec& spec,
                   std::vector<Cpt> cpts) {
  CpNet net = detail::build_net(spec, std::move(cpts));
  return {std::move(net), oracle.distinct() - start, oracle.log()};
}

}  // namespace

LearnResult learn_tree_complete(OracleSession& oracle, const ClassSpec& spec, Strategy strategy) {
  require_tree_spec(oracle, spec);
  if (!spec.complete()) throw ValidationError("learn_tree_complete needs a complete class");
  const std::size_t start = oracle.distinct();
  detail::Channel channel(oracle, strategy);
  std::vector<Cpt> cpts;
  for (int v = 0; v < spec.n; ++v) {
    const TestSetFamily family = test_sets(v, spec);
    std::vector<Order> orders;
    for (const auto& set : family.sets)
      orders.push_back(OrderSorter(channel, set.front(), v).sort(spec.m));
    std::optional<int> parent;
    const auto differs = std::find_if(orders.begin() + 1, orders.end(),
                                      [&](const Order& o) { return o != orders.front(); });
    if (differs != orders.end()) {
      if (spec.k == 0) throw OracleContradiction("a parent was detected in a separable class");
      const Order& o1 = orders.front();
      const Order& o2 = *differs;
      const auto j2 = static_cast<std::size_t>(differs - orders.begin());
      // Some adjacent pair of the first order is inverted in the other.
      std::size_t at = 0;
      while (rank_in(o2, o1[at]) < rank_in(o2, o1[at + 1])) ++at;
      const SwapInstance x = swap_in(family.sets[0].front(), v, o1[at], o1[at + 1]);
      const SwapInstance x2 = swap_in(family.sets[j2].front(), v, o1[at], o1[at + 1]);
      const int ox = channel.observe(x), ox2 = channel.observe(x2);
      parent = detail::search_parent(channel, x, ox, x2, ox2, others(spec.n, v),
                                     Elimination::RevertToFirst);
    }
    cpts.push_back(tree_cpt(v, parent, orders));
  }
  return finish(oracle, start, spec, std::move(cpts));
}

LearnResult learn_tree_incomplete(OracleSession& oracle, const ClassSpec& spec) {
  require_tree_spec(oracle, spec);
  if (spec.complete()) throw ValidationError("learn_tree_incomplete needs an AllowIncomplete class");
  if (spec.m != 2) throw DomainError("the incomplete tree learner is defined for m = 2");
  const std::size_t start = oracle.distinct();
  detail::Channel channel(oracle, Strategy::None);
  std::vector<Cpt> cpts;
  for (int v = 0; v < spec.n; ++v) {
    const TestSetFamily family = test_sets(v, spec);
    std::vector<SwapInstance> probes;
    std::vector<int> observed;
    for (const auto& set : family.sets) {
      probes.push_back(swap_in(set.front(), v, 0, 1));
      observed.push_back(channel.observe(probes.back()));
    }
    std::optional<int> parent;
    if (observed[0] != observed[1]) {
      if (spec.k == 0) throw OracleContradiction("a parent was detected in a separable class");
      parent = detail::search_parent(channel, probes[0], observed[0], probes[1], observed[1],
                                     others(spec.n, v), Elimination::RevertToFirst);
    }
    std::vector<Order> orders;
    for (int o : observed) orders.push_back(detail::order_from_observation(o));
    cpts.push_back(tree_cpt(v, parent, orders));
  }
  return finish(oracle, start, spec, std::move(cpts));
}

}  // namespace cpnet
