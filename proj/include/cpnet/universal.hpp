#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpnet/core.hpp"
#include "cpnet/io.hpp"

namespace cpnet {

struct UniversalSet {
  int m = 2;
  int z = 0;
  int k = 0;
  std::vector<std::vector<int>> vectors;

  std::size_t size() const { return vectors.size(); }
};

struct SwapExpression {
  int variable = 0;
  std::vector<SwapInstance> swaps;
};

// True iff every projection onto k coordinates realizes all m^k patterns.
bool is_universal(const UniversalSet& s);

UniversalSet construct_product(int m, int z, int k);

struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000;
};

// Smallest universal set, by iterative deepening from the lower bound m^k.
UniversalSet construct_minimal(int m, int z, int k, SearchBudget budget = {});

// Contexts lift each vector onto the variables other than v, in variable order.
// Position v of every returned outcome is 0 and carries no meaning.
std::vector<Outcome> context_set(const UniversalSet& u, int v, const ClassSpec& spec);

// (m-1) chained swaps per context realizing the matching order.
SwapExpression swap_expression(const std::vector<Outcome>& contexts, int v,
                               const std::vector<Order>& orders);

std::string universal_to_text(const UniversalSet& s);
// Vectors one per line, digits 0..m-1; z is taken from the first line.
UniversalSet universal_from_text(const std::string& text, int m, int k);
json universal_to_json(const UniversalSet& s);
UniversalSet universal_from_json(const json& j);
UniversalSet load_universal(const std::string& path, int m, int k);

}  // namespace cpnet
