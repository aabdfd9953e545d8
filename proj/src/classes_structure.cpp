#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cpnet/classes.hpp"

namespace cpnet {

namespace detail {
std::vector<std::vector<Labels>> all_shattered_sets(const ConceptClass& cls, const Budget& budget);
Labels full_mask(std::size_t w);
}  // namespace detail

namespace {

bool maximal_given(const ConceptClass& cls, std::size_t d, const Budget& budget) {
  if (cls.width > budget.max_maximal_width)
    throw BudgetExceeded("maximality check scans 2^width label vectors");
  if (d >= cls.width) return true;
  // For each (d+1)-set missing exactly one pattern, adding that pattern raises the dimension.
  std::vector<std::pair<Labels, Labels>> blockers;
  const std::size_t target = std::size_t{1} << (d + 1);
  const Labels limit = Labels{1} << cls.width;
  for (Labels s = (Labels{1} << (d + 1)) - 1; s < limit;) {
    std::unordered_set<Labels> seen;
    for (const Concept& c : cls.concepts) seen.insert(c.labels & s);
    if (seen.size() + 1 == target) {
      for (Labels p = s;; p = (p - 1) & s) {
        if (!seen.count(p)) {
          blockers.emplace_back(s, p);
          break;
        }
        if (p == 0) break;
      }
    }
    const Labels u = s & (~s + 1);
    const Labels v = u + s;
    s = v + (((v ^ s) / u) >> 2);
  }
  std::unordered_set<Labels> members;
  for (const Concept& c : cls.concepts) members.insert(c.labels);
  if (blockers.size() > budget.max_work >> cls.width)
    throw BudgetExceeded("maximality check exceeds the work budget");
  for (Labels b = 0; b < limit; ++b) {
    if (members.count(b)) continue;
    const bool raises = std::any_of(blockers.begin(), blockers.end(),
                                    [b](const auto& sp) { return (b & sp.first) == sp.second; });
    if (!raises) return false;
  }
  return true;
}

}  // namespace

StructuralReport structural_report(const ConceptClass& cls, const Budget& budget) {
  StructuralReport report;
  const auto levels = detail::all_shattered_sets(cls, budget);
  const std::size_t d = levels.empty() ? 0 : levels.size() - 1;

  std::uint64_t sauer = 0;
  for (std::size_t i = 0; i <= d; ++i)
    sauer += binomial(static_cast<unsigned>(cls.width), static_cast<unsigned>(i));
  report.is_maximum = cls.size() == sauer;

  report.is_maximal = maximal_given(cls, d, budget);

  std::unordered_set<Labels> members;
  for (const Concept& c : cls.concepts) members.insert(c.labels);
  report.is_intersection_closed = true;
  for (std::size_t i = 0; i < cls.size() && report.is_intersection_closed; ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j)
      if (!members.count(cls.concepts[i].labels & cls.concepts[j].labels)) {
        report.is_intersection_closed = false;
        break;
      }

  report.is_extremal = true;
  for (const auto& level : levels) {
    for (Labels s : level) {
      const std::size_t needed = std::size_t{1} << std::popcount(s);
      std::unordered_map<Labels, std::size_t> groups;
      bool strong = false;
      for (const Concept& c : cls.concepts) {
        if (++groups[c.labels & ~s] == needed) {
          strong = true;
          break;
        }
      }
      if (!strong) {
        report.is_extremal = false;
        return report;
      }
    }
  }
  return report;
}

bool is_complement_closed(const ConceptClass& cls) {
  const Labels mask = detail::full_mask(cls.width);
  std::unordered_set<Labels> members;
  for (const Concept& c : cls.concepts) members.insert(c.labels);
  return std::all_of(cls.concepts.begin(), cls.concepts.end(),
                     [&](const Concept& c) { return members.count(~c.labels & mask) > 0; });
}

double kz_lower_bound(int n, int k, int e) {
  if (n < 1 || k < 0 || k >= n) throw DomainError("need 0 <= k < n");
  if (e < 0 || static_cast<std::uint64_t>(e) > binomial(static_cast<unsigned>(n), 2))
    throw DomainError("edge count out of range");
  if (k == 0) return 1.0;
  const double u = static_cast<double>(e) / k;
  // r = floor(log2((n - u) / k)) with (n - u) / k = (n*k - e) / k^2 kept as a fraction.
  long long num = static_cast<long long>(n) * k - e;
  long long den = static_cast<long long>(k) * k;
  if (num <= 0) throw DomainError("logarithm argument is not positive");
  int r = 0;
  if (num >= den) {
    while (num >= 2 * den) {
      den *= 2;
      ++r;
    }
  } else {
    while (num < den) {
      num *= 2;
      --r;
    }
  }
  if (k == 1) return u * (r + 1);
  return u * (static_cast<double>(ipow(2, static_cast<unsigned>(k))) + k * (r - 1) - 1);
}

DimsRow compute_dims(const ClassSpec& spec, bool structural, const Budget& budget) {
  DimsRow row;
  row.spec = spec;
  const ConceptClass cls = enumerate_class(spec, budget);
  row.instances = cls.width;
  row.concepts = cls.size();
  row.vcd = vcd(cls, budget);
  row.td = td_class(cls, budget);
  row.rtd = rtd(cls, budget);
  if (structural) row.structure = structural_report(cls, budget);
  return row;
}

std::string dims_csv_header() {
  return "n,m,k,completeness,instances,concepts,vcd,td,rtd,maximum,maximal,intersection_closed,"
         "extremal";
}

std::string dims_csv_row(const DimsRow& row) {
  auto flag = [&](bool StructuralReport::*field) -> std::string {
    if (!row.structure) return "";
    return (*row.structure).*field ? "true" : "false";
  };
  std::ostringstream out;
  out << row.spec.n << ',' << row.spec.m << ',' << row.spec.k << ','
      << (row.spec.complete() ? "complete" : "incomplete") << ',' << row.instances << ','
      << row.concepts << ',' << row.vcd << ',' << row.td << ',' << row.rtd << ','
      << flag(&StructuralReport::is_maximum) << ',' << flag(&StructuralReport::is_maximal) << ','
      << flag(&StructuralReport::is_intersection_closed) << ','
      << flag(&StructuralReport::is_extremal);
  return out.str();
}

}  // namespace cpnet
