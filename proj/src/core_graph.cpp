#include <queue>

#include "cpnet/core.hpp"

namespace cpnet {

std::size_t outcome_index(const Outcome& o, int m) {
  std::size_t idx = 0;
  for (int value : o) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(value);
  return idx;
}

Outcome outcome_at(std::size_t index, int n, int m) {
  Outcome o(static_cast<std::size_t>(n));
  for (std::size_t i = o.size(); i-- > 0;) {
    o[i] = static_cast<int>(index % static_cast<std::size_t>(m));
    index /= static_cast<std::size_t>(m);
  }
  return o;
}

namespace {

void check_outcome(const CpNet& net, const Outcome& o) {
  if (o.size() != static_cast<std::size_t>(net.n()))
    throw ValidationError("outcome has the wrong number of variables");
  for (int value : o)
    if (value < 0 || value >= net.m()) throw ValidationError("outcome value out of range");
}

}  // namespace

PreferenceGraph induced_preference_graph(const CpNet& net, std::size_t vertex_limit) {
  const std::uint64_t vertices = ipow(static_cast<std::uint64_t>(net.m()),
                                      static_cast<unsigned>(net.n()));
  if (vertices > vertex_limit)
    throw BudgetExceeded("induced preference graph exceeds the vertex limit");
  PreferenceGraph g;
  g.n = net.n();
  g.m = net.m();
  g.adjacency.resize(static_cast<std::size_t>(vertices));
  for (std::size_t idx = 0; idx < vertices; ++idx) {
    const Outcome o = outcome_at(idx, net.n(), net.m());
    for (int v = 0; v < net.n(); ++v) {
      const Cpt& cpt = net.cpt(v);
      const Order& row = cpt.rows[cpt.context_index(o, net.m())];
      if (row.empty()) continue;
      const int here = rank_in(row, o[static_cast<std::size_t>(v)]);
      for (int b = 0; b < net.m(); ++b) {
        if (b == o[static_cast<std::size_t>(v)] || rank_in(row, b) < here) continue;
        Outcome worse = o;
        worse[static_cast<std::size_t>(v)] = b;
        g.adjacency[outcome_index(worse, net.m())].push_back(idx);
        ++g.edge_count;
      }
    }
  }
  return g;
}

bool is_consistent(const CpNet& net, std::size_t vertex_limit) {
  const PreferenceGraph g = induced_preference_graph(net, vertex_limit);
  std::vector<std::size_t> indegree(g.vertex_count(), 0);
  for (const auto& out : g.adjacency)
    for (std::size_t w : out) ++indegree[w];
  std::queue<std::size_t> ready;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (indegree[v] == 0) ready.push(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.front();
    ready.pop();
    ++seen;
    for (std::size_t w : g.adjacency[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  return seen == g.vertex_count();
}

bool dominates(const CpNet& net, const Outcome& o, const Outcome& o2, std::size_t vertex_limit) {
  check_outcome(net, o);
  check_outcome(net, o2);
  const PreferenceGraph g = induced_preference_graph(net, vertex_limit);
  const std::size_t target = outcome_index(o, net.m());
  const std::size_t start = outcome_index(o2, net.m());
  std::vector<bool> visited(g.vertex_count(), false);
  std::queue<std::size_t> frontier;
  for (std::size_t w : g.adjacency[start]) {
    if (!visited[w]) {
      visited[w] = true;
      frontier.push(w);
    }
  }
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    if (v == target) return true;
    for (std::size_t w : g.adjacency[v]) {
      if (!visited[w]) {
        visited[w] = true;
        frontier.push(w);
      }
    }
  }
  return false;
}

}  // namespace cpnet
