#include "cpnet/universal.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace cpnet {

namespace {

// All k-element subsets of {0..z-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int z, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (int i = start; i < z; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::size_t pattern_of(const std::vector<int>& vec, const std::vector<int>& coords, int m) {
  std::size_t p = 0;
  for (int c : coords) p = p * static_cast<std::size_t>(m) + static_cast<std::size_t>(vec[c]);
  return p;
}

void check_shape(const UniversalSet& s) {
  if (s.m < 2) throw ValidationError("alphabet size must be at least 2");
  if (s.z < 0 || s.k < 0 || s.k > s.z) throw ValidationError("need 0 <= k <= z");
  for (const auto& vec : s.vectors) {
    if (vec.size() != static_cast<std::size_t>(s.z))
      throw ValidationError("vector length differs from z");
    for (int value : vec)
      if (value < 0 || value >= s.m) throw ValidationError("vector entry out of range");
  }
}

class MinimalSearch {
 public:
  MinimalSearch(int m, int z, int k, SearchBudget budget)
      : budget_(budget) {
    const auto subsets = combinations(z, k);
    const auto patterns = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(m), k));
    items_ = subsets.size() * patterns;
    per_vector_ = subsets.size();
    words_ = (items_ + 63) / 64;
    const auto candidates = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(m), z));
    covers_.resize(candidates);
    coverers_.resize(items_);
    for (std::size_t c = 0; c < candidates; ++c) {
      const Outcome vec = outcome_at(c, z, m);
      covers_[c].assign(words_, 0);
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        const std::size_t item = s * patterns + pattern_of(vec, subsets[s], m);
        covers_[c][item / 64] |= std::uint64_t{1} << (item % 64);
        coverers_[item].push_back(c);
      }
    }
  }

  // Candidate indices of a cover of the given size, or empty.
  std::vector<std::size_t> find(std::size_t size) {
    chosen_.clear();
    std::vector<std::uint64_t> covered(words_, 0);
    // Relabeling values per coordinate maps any universal set to one holding the zero vector.
    add(covered, 0);
    chosen_.push_back(0);
    if (dfs(covered, size - 1)) return chosen_;
    return {};
  }

 private:
  void add(std::vector<std::uint64_t>& covered, std::size_t c) const {
    for (std::size_t w = 0; w < words_; ++w) covered[w] |= covers_[c][w];
  }

  bool dfs(const std::vector<std::uint64_t>& covered, std::size_t slots) {
    if (++nodes_ > budget_.max_nodes) throw BudgetExceeded("minimal universal set search");
    std::size_t uncovered = 0;
    std::size_t first = items_;
    for (std::size_t item = 0; item < items_; ++item) {
      if (!(covered[item / 64] >> (item % 64) & 1)) {
        ++uncovered;
        if (first == items_) first = item;
      }
    }
    if (uncovered == 0) return true;
    if (uncovered > slots * per_vector_) return false;
    for (std::size_t c : coverers_[first]) {
      std::vector<std::uint64_t> next = covered;
      add(next, c);
      chosen_.push_back(c);
      if (dfs(next, slots - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  SearchBudget budget_;
  std::size_t items_ = 0;
  std::size_t per_vector_ = 0;
  std::size_t words_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::uint64_t>> covers_;
  std::vector<std::vector<std::size_t>> coverers_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

bool is_universal(const UniversalSet& s) {
  check_shape(s);
  if (s.vectors.empty()) return false;
  const auto patterns = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(s.m), s.k));
  for (const auto& coords : combinations(s.z, s.k)) {
    std::vector<bool> seen(patterns, false);
    std::size_t count = 0;
    for (const auto& vec : s.vectors) {
      const std::size_t p = pattern_of(vec, coords, s.m);
      if (!seen[p]) {
        seen[p] = true;
        ++count;
      }
    }
    if (count != patterns) return false;
  }
  return true;
}

UniversalSet construct_product(int m, int z, int k) {
  UniversalSet out{m, z, k, {}};
  check_shape(out);
  const auto patterns = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(m), k));
  std::set<std::vector<int>> unique;
  for (const auto& coords : combinations(z, k)) {
    for (std::size_t p = 0; p < patterns; ++p) {
      std::vector<int> vec(static_cast<std::size_t>(z), 0);
      const Outcome digits = outcome_at(p, k, m);
      for (std::size_t i = 0; i < coords.size(); ++i) vec[static_cast<std::size_t>(coords[i])] = digits[i];
      unique.insert(std::move(vec));
    }
  }
  out.vectors.assign(unique.begin(), unique.end());
  return out;
}

UniversalSet construct_minimal(int m, int z, int k, SearchBudget budget) {
  UniversalSet out{m, z, k, {}};
  check_shape(out);
  if (ipow(static_cast<std::uint64_t>(m), z) > 1'000'000)
    throw BudgetExceeded("candidate vector space too large for exact search");
  MinimalSearch search(m, z, k, budget);
  const std::uint64_t lower = std::max<std::uint64_t>(1, ipow(static_cast<std::uint64_t>(m), k));
  const std::uint64_t upper = std::max<std::uint64_t>(1, binomial(z, k) * ipow(m, k));
  for (std::uint64_t size = lower; size <= upper; ++size) {
    const auto found = search.find(static_cast<std::size_t>(size));
    if (found.empty()) continue;
    for (std::size_t c : found) out.vectors.push_back(outcome_at(c, z, m));
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
  }
  throw BudgetExceeded("no universal set found within the product bound");
}

std::vector<Outcome> context_set(const UniversalSet& u, int v, const ClassSpec& spec) {
  spec.validate();
  if (u.z != spec.n - 1 || u.m != spec.m)
    throw ValidationError("universal set must have z = n-1 and the class alphabet");
  if (v < 0 || v >= spec.n) throw ValidationError("variable out of range");
  check_shape(u);
  std::vector<Outcome> out;
  for (const auto& vec : u.vectors) {
    Outcome o(static_cast<std::size_t>(spec.n), 0);
    std::size_t j = 0;
    for (int i = 0; i < spec.n; ++i)
      if (i != v) o[static_cast<std::size_t>(i)] = vec[j++];
    out.push_back(std::move(o));
  }
  return out;
}

SwapExpression swap_expression(const std::vector<Outcome>& contexts, int v,
                               const std::vector<Order>& orders) {
  if (contexts.size() != orders.size())
    throw ValidationError("need exactly one order per context");
  SwapExpression expr{v, {}};
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const Order& order = orders[c];
    if (order.size() < 2) throw ValidationError("swap expression needs a total order");
    for (std::size_t t = 0; t + 1 < order.size(); ++t) {
      Outcome a = contexts[c], b = contexts[c];
      a[static_cast<std::size_t>(v)] = order[t];
      b[static_cast<std::size_t>(v)] = order[t + 1];
      expr.swaps.push_back(canonical_swap(a, b));
    }
  }
  return expr;
}

std::string universal_to_text(const UniversalSet& s) {
  if (s.m > 10) throw ValidationError("text format supports m <= 10");
  std::string out;
  for (const auto& vec : s.vectors) {
    for (int value : vec) out += static_cast<char>('0' + value);
    out += '\n';
  }
  return out;
}

UniversalSet universal_from_text(const std::string& text, int m, int k) {
  UniversalSet s{m, -1, k, {}};
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<int> vec;
    for (char ch : line) {
      if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') continue;
      if (ch < '0' || ch > '9') throw ValidationError("unexpected character in vector file");
      vec.push_back(ch - '0');
    }
    if (vec.empty()) continue;
    if (s.z < 0) s.z = static_cast<int>(vec.size());
    s.vectors.push_back(std::move(vec));
  }
  if (s.z < 0) throw ValidationError("vector file is empty");
  check_shape(s);
  return s;
}

json universal_to_json(const UniversalSet& s) {
  return {{"m", s.m}, {"z", s.z}, {"k", s.k}, {"vectors", s.vectors}};
}

UniversalSet universal_from_json(const json& j) {
  try {
    UniversalSet s{j.at("m").get<int>(), j.at("z").get<int>(), j.at("k").get<int>(),
                   j.at("vectors").get<std::vector<std::vector<int>>>()};
    check_shape(s);
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad universal set JSON: ") + e.what());
  }
}

UniversalSet load_universal(const std::string& path, int m, int k) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    try {
      return universal_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return universal_from_text(text, m, k);
}

}  // namespace cpnet
