#include <fstream>
#include <sstream>

#include "cpnet/io.hpp"

namespace cpnet {

namespace {

Outcome outcome_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of value indices");
  Outcome o;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw ValidationError("value index must be an integer");
    o.push_back(v.get<int>());
  }
  return o;
}

int int_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    throw ValidationError(std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

std::string outcome_label(const Outcome& o) {
  std::string s = "(";
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(o[i]);
  }
  return s + ")";
}

}  // namespace

json swap_to_json(const SwapInstance& x) {
  return {{"first", x.first}, {"second", x.second}, {"swapped", x.swapped}};
}

SwapInstance swap_from_json(const json& j) {
  if (!j.is_object() || !j.contains("first") || !j.contains("second"))
    throw ValidationError("swap instance needs 'first' and 'second'");
  SwapInstance x{outcome_from_json(j.at("first")), outcome_from_json(j.at("second")), 0};
  const SwapInstance canon = canonical_swap(x.first, x.second);
  x.swapped = canon.swapped;
  if (j.contains("swapped") && int_field(j, "swapped") != x.swapped)
    throw ValidationError("'swapped' does not match the differing variable");
  return x;
}

json net_to_json(const CpNet& net) {
  json cpts = json::array();
  for (const Cpt& cpt : net.cpts()) {
    json rows = json::array();
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      json row = {{"context", cpt.context(r, net.m())}};
      row["order"] = cpt.rows[r].empty() ? json(nullptr) : json(cpt.rows[r]);
      rows.push_back(std::move(row));
    }
    cpts.push_back({{"variable", cpt.variable}, {"parents", cpt.parents}, {"rows", rows}});
  }
  return {{"n", net.n()}, {"m", net.m()}, {"k", net.spec().k}, {"cpts", cpts}};
}

CpNet net_from_json(const json& j, std::optional<Completeness> completeness) {
  ClassSpec spec;
  spec.n = int_field(j, "n");
  spec.m = int_field(j, "m");
  spec.k = int_field(j, "k");
  spec.validate();
  if (!j.contains("cpts") || !j.at("cpts").is_array())
    throw ValidationError("missing 'cpts' array");
  std::vector<Cpt> cpts(static_cast<std::size_t>(spec.n));
  std::vector<bool> seen(static_cast<std::size_t>(spec.n), false);
  bool any_empty = false;
  for (const json& jc : j.at("cpts")) {
    const int v = int_field(jc, "variable");
    if (v < 0 || v >= spec.n || seen[static_cast<std::size_t>(v)])
      throw ValidationError("CPT variable out of range or repeated");
    seen[static_cast<std::size_t>(v)] = true;
    Cpt cpt;
    cpt.variable = v;
    if (!jc.contains("parents")) throw ValidationError("CPT needs 'parents'");
    cpt.parents = outcome_from_json(jc.at("parents"));
    for (int p : cpt.parents)
      if (p < 0 || p >= spec.n) throw ValidationError("parent out of range");
    if (cpt.parents.size() > static_cast<std::size_t>(spec.k))
      throw ValidationError("more parents than the indegree bound");
    const std::uint64_t count =
        ipow(static_cast<std::uint64_t>(spec.m), static_cast<unsigned>(cpt.parents.size()));
    if (!jc.contains("rows") || !jc.at("rows").is_array() || jc.at("rows").size() != count)
      throw ValidationError("CPT must list one row per parent context");
    cpt.rows.assign(static_cast<std::size_t>(count), Order{});
    std::vector<bool> filled(static_cast<std::size_t>(count), false);
    for (const json& jr : jc.at("rows")) {
      const Outcome ctx = outcome_from_json(jr.at("context"));
      if (ctx.size() != cpt.parents.size()) throw ValidationError("context length mismatch");
      std::size_t idx = 0;
      for (int value : ctx) {
        if (value < 0 || value >= spec.m) throw ValidationError("context value out of range");
        idx = idx * static_cast<std::size_t>(spec.m) + static_cast<std::size_t>(value);
      }
      if (filled[idx]) throw ValidationError("duplicate context in CPT");
      filled[idx] = true;
      if (!jr.contains("order") || jr.at("order").is_null()) {
        any_empty = true;
      } else {
        cpt.rows[idx] = outcome_from_json(jr.at("order"));
      }
    }
    cpts[static_cast<std::size_t>(v)] = std::move(cpt);
  }
  for (bool s : seen)
    if (!s) throw ValidationError("missing CPT for some variable");
  spec.completeness = completeness.value_or(any_empty ? Completeness::AllowIncomplete
                                                      : Completeness::CompleteOnly);
  return CpNet(spec, std::move(cpts));
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << "\n";
}

CpNet load_net(const std::string& path, std::optional<Completeness> completeness) {
  return net_from_json(load_json(path), completeness);
}

std::string dependency_dot(const CpNet& net, const std::vector<std::string>& names) {
  auto name = [&](int v) {
    return static_cast<std::size_t>(v) < names.size() ? names[static_cast<std::size_t>(v)]
                                                       : "v" + std::to_string(v);
  };
  std::ostringstream out;
  out << "digraph cpnet {\n";
  for (const Cpt& cpt : net.cpts()) {
    out << "  n" << cpt.variable << " [label=\"" << name(cpt.variable) << "\"];\n";
  }
  for (auto [from, to] : net.edges()) out << "  n" << from << " -> n" << to << ";\n";
  out << "}\n";
  return out.str();
}

std::string preference_graph_dot(const CpNet& net, std::size_t vertex_limit) {
  const PreferenceGraph g = induced_preference_graph(net, vertex_limit);
  std::ostringstream out;
  out << "digraph preferences {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out << "  o" << v << " [label=\"" << outcome_label(outcome_at(v, g.n, g.m)) << "\"];\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t w : g.adjacency[v]) out << "  o" << v << " -> o" << w << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace cpnet
