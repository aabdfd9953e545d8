#include "cpnet/teaching.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cpnet {

namespace {

void require_same_shape(const CpNet& net, const ClassSpec& spec) {
  spec.validate();
  if (net.n() != spec.n || net.m() != spec.m)
    throw ValidationError("net does not match the class parameters");
  for (const Cpt& cpt : net.cpts())
    if (cpt.parents.size() > static_cast<std::size_t>(spec.k))
      throw ValidationError("net exceeds the indegree bound of the class");
}

void require_strength(const UniversalSet& u, const ClassSpec& spec) {
  if (u.z != spec.n - 1 || u.m != spec.m)
    throw UniversalSetTooWeak("universal set must have z = n-1 and the class alphabet");
  UniversalSet at_k = u;
  at_k.k = spec.k;
  if (spec.k > u.z || !is_universal(at_k))
    throw UniversalSetTooWeak("vectors are not universal at the class indegree bound");
}

const Order& row_for(const CpNet& net, int v, const Outcome& o) {
  const Cpt& cpt = net.cpt(v);
  return cpt.rows[cpt.context_index(o, net.m())];
}

class ExampleCollector {
 public:
  explicit ExampleCollector(const CpNet& net) : net_(net) {}

  void add(const SwapInstance& x) {
    if (seen_.insert(x).second) examples_.push_back({x, evaluate_swap(net_, x)});
  }

  std::vector<LabeledExample> take() { return std::move(examples_); }

 private:
  const CpNet& net_;
  std::set<SwapInstance> seen_;
  std::vector<LabeledExample> examples_;
};

Order identity_order(int m) {
  Order order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace

LabeledExample preference_example(const Outcome& better, const Outcome& worse, bool complete) {
  const SwapInstance canon = canonical_swap(better, worse);
  if (!complete) return {{better, worse, canon.swapped}, 1};
  return {canon, canon.first == better ? 1 : 0};
}

bool is_maximal(const CpNet& net, const ClassSpec& spec) {
  require_same_shape(net, spec);
  return net.complete() && net.size() == max_size(spec);
}

TeachingSet teaching_set_maximal(const CpNet& net, const ClassSpec& spec) {
  if (!is_maximal(net, spec)) throw NotMaximal("net is not maximal in its class");
  ExampleCollector out(net);
  for (const Cpt& cpt : net.cpts()) {
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      Outcome base(static_cast<std::size_t>(net.n()), 0);
      const Outcome ctx = cpt.context(r, net.m());
      for (std::size_t i = 0; i < ctx.size(); ++i) base[static_cast<std::size_t>(cpt.parents[i])] = ctx[i];
      const Order& order = cpt.rows[r];
      for (std::size_t j = 0; j + 1 < order.size(); ++j) {
        Outcome a = base, b = base;
        a[static_cast<std::size_t>(cpt.variable)] = order[j];
        b[static_cast<std::size_t>(cpt.variable)] = order[j + 1];
        out.add(canonical_swap(a, b));
      }
    }
  }
  return {out.take(), net};
}

std::optional<ConflictPair> conflict_pair_from(const CpNet& net, std::vector<SwapInstance> xs,
                                               int parent) {
  std::sort(xs.begin(), xs.end());
  const auto p = static_cast<std::size_t>(parent);
  for (const SwapInstance& x : xs) {
    if (x.swapped == parent) continue;
    const int label = evaluate_swap(net, x);
    for (int value = 0; value < net.m(); ++value) {
      if (value == x.first[p]) continue;
      SwapInstance x2 = x;
      x2.first[p] = value;
      x2.second[p] = value;
      if (evaluate_swap(net, x2) != label) return ConflictPair{x, x2, x.swapped, parent};
    }
  }
  return std::nullopt;
}

std::optional<ConflictPair> find_conflict_pair(const CpNet& net, int child, int parent) {
  if (child == parent) return std::nullopt;
  std::vector<SwapInstance> xs;
  for (SwapInstance& x : instance_space(net.spec(), !net.spec().complete()))
    if (x.swapped == child) xs.push_back(std::move(x));
  return conflict_pair_from(net, std::move(xs), parent);
}

TeachingSet teaching_set_universal(const CpNet& net, const ClassSpec& spec, const UniversalSet& u) {
  require_same_shape(net, spec);
  if (!net.complete()) throw ValidationError("net must be complete");
  require_strength(u, spec);
  ExampleCollector out(net);
  for (int v = 0; v < spec.n; ++v) {
    const std::vector<Outcome> contexts = context_set(u, v, spec);
    std::vector<Order> orders;
    for (const Outcome& ctx : contexts) orders.push_back(row_for(net, v, ctx));
    const SwapExpression expr = swap_expression(contexts, v, orders);
    for (const SwapInstance& x : expr.swaps) out.add(x);
    for (int p : net.cpt(v).parents) {
      const auto pair = conflict_pair_from(net, expr.swaps, p);
      if (!pair) throw UniversalSetTooWeak("no conflict pair inside the swap expression");
      out.add(pair->x2);
    }
  }
  return {out.take(), net};
}

TeachingSet teaching_set_incomplete(const CpNet& net, const ClassSpec& spec,
                                    const UniversalSet& u) {
  require_same_shape(net, spec);
  if (spec.complete()) throw ValidationError("incomplete teaching sets need an AllowIncomplete class");
  require_strength(u, spec);
  ExampleCollector out(net);
  for (int v = 0; v < spec.n; ++v) {
    const std::vector<Outcome> contexts = context_set(u, v, spec);
    std::vector<Order> orders;
    for (const Outcome& ctx : contexts) {
      const Order& row = row_for(net, v, ctx);
      orders.push_back(row.empty() ? identity_order(spec.m) : row);
    }
    std::vector<SwapInstance> closed;
    for (const SwapInstance& x : swap_expression(contexts, v, orders).swaps) {
      closed.push_back(x);
      closed.push_back(x.reversed());
    }
    for (const SwapInstance& x : closed) out.add(x);
    for (int p : net.cpt(v).parents) {
      const auto pair = conflict_pair_from(net, closed, p);
      if (!pair) throw UniversalSetTooWeak("no conflict pair inside the swap expression");
      out.add(pair->x2);
    }
  }
  return {out.take(), net};
}

bool verify_teaching_set(const TeachingSet& t, const ConceptClass& cls) {
  std::map<SwapInstance, std::size_t> index;
  for (std::size_t i = 0; i < cls.instances.size(); ++i) index.emplace(cls.instances[i], i);
  Labels mask = 0, values = 0;
  for (const LabeledExample& e : t.examples) {
    const auto it = index.find(e.x);
    if (it == index.end()) return false;
    if (evaluate_swap(t.target, e.x) != e.label) return false;
    mask |= Labels{1} << it->second;
    if (e.label) values |= Labels{1} << it->second;
  }
  const Labels target = label_vector(t.target, cls.instances);
  std::size_t consistent = 0;
  bool target_found = false;
  for (const Concept& c : cls.concepts) {
    if ((c.labels & mask) != values) continue;
    ++consistent;
    if (c.labels == target) target_found = true;
  }
  return consistent == 1 && target_found;
}

json teaching_set_to_json(const TeachingSet& t) {
  json out = json::array();
  for (const LabeledExample& e : t.examples) {
    json item = swap_to_json(e.x);
    item["label"] = e.label;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace cpnet
