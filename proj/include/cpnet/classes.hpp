#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cpnet/core.hpp"

namespace cpnet {

// Bit i holds the label of instance i; classes are limited to 64 instances.
using Labels = std::uint64_t;
inline constexpr std::size_t kMaxInstances = 64;

struct Concept {
  Labels labels = 0;
  std::optional<CpNet> net;
};

struct ConceptClass {
  std::size_t width = 0;                // number of instances
  std::vector<SwapInstance> instances;  // empty for synthetic classes
  std::vector<Concept> concepts;

  std::size_t size() const { return concepts.size(); }
  std::optional<std::size_t> find(Labels labels) const;
  std::optional<std::size_t> index_of(const SwapInstance& x) const;
};

struct Budget {
  std::uint64_t max_nets = 20'000'000;        // raw nets visited by enumeration
  std::uint64_t max_work = 20'000'000'000;    // subset checks times class size
  std::uint64_t max_nodes = 500'000'000;      // search nodes per teaching-dimension query
  std::size_t max_maximal_width = 20;         // is_maximal scans all 2^width label vectors
  std::size_t max_shattered_sets = 5'000'000;
};

Labels label_vector(const CpNet& net, const std::vector<SwapInstance>& instances);
ConceptClass synthetic_class(std::size_t width, const std::vector<Labels>& labels);

// Every minimal acyclic net of the class, in a fixed order.
std::vector<CpNet> enumerate_nets(const ClassSpec& spec, const Budget& budget = {});
ConceptClass enumerate_class(const ClassSpec& spec, const Budget& budget = {});
// Separable class over one canonical swap per (variable, value pair), all other variables at 0.
ConceptClass separable_xsep_class(int n, int m);

CpNet random_net(const ClassSpec& spec, std::mt19937_64& rng);

bool shatters(const ConceptClass& cls, Labels subset);
// Level-wise search over shattered sets, parallel within each level.
std::size_t vcd(const ConceptClass& cls, const Budget& budget = {});
// Serial descending-size brute force over all subsets.
std::size_t vcd_reference(const ConceptClass& cls, const Budget& budget = {});

std::size_t td(std::size_t concept_index, const ConceptClass& cls, const Budget& budget = {});
std::size_t td(const CpNet& net, const ConceptClass& cls, const Budget& budget = {});
// Serial iterative deepening over instance subsets.
std::size_t td_reference(std::size_t concept_index, const ConceptClass& cls,
                         const Budget& budget = {});
std::vector<std::size_t> td_all(const ConceptClass& cls, const Budget& budget = {});
std::vector<std::size_t> td_all_reference(const ConceptClass& cls, const Budget& budget = {});
std::size_t td_class(const ConceptClass& cls, const Budget& budget = {});
std::size_t td_min(const ConceptClass& cls, const Budget& budget = {});
std::size_t rtd(const ConceptClass& cls, const Budget& budget = {});

struct StructuralReport {
  bool is_maximum = false;
  bool is_maximal = false;
  bool is_intersection_closed = false;
  bool is_extremal = false;
};

StructuralReport structural_report(const ConceptClass& cls, const Budget& budget = {});
bool is_complement_closed(const ConceptClass& cls);

// Lower bound audited from the literature; u = e/k is kept exact.
double kz_lower_bound(int n, int k, int e);

struct DimsRow {
  ClassSpec spec;
  std::size_t instances = 0;
  std::size_t concepts = 0;
  std::size_t vcd = 0;
  std::size_t td = 0;
  std::size_t rtd = 0;
  std::optional<StructuralReport> structure;
};

DimsRow compute_dims(const ClassSpec& spec, bool structural, const Budget& budget = {});
std::string dims_csv_header();
std::string dims_csv_row(const DimsRow& row);

}  // namespace cpnet
