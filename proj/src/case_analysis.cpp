#include "egr/case_analysis.hpp"

#include <algorithm>

namespace egr {
namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

std::optional<std::string> feasibility_prefilter(int k, int g,
                                                 std::int64_t lambda) {
  if (k < 3 || g < 3 || lambda < 1)
    return "parameters out of range (need k >= 3, g >= 3, lambda >= 1)";
  if ((k * lambda) % 2 != 0)
    return "k*lambda is odd, so the girth-cycle count per vertex is not an "
           "integer";
  const std::int64_t cap = ipow(k - 1, ceil_div(g - 1, 2));
  if (lambda > cap)
    return "lambda exceeds the per-edge ceiling (k-1)^ceil((g-1)/2) = " +
           std::to_string(cap);
  return std::nullopt;
}

std::vector<LayerProfile> enumerate_layer_profiles(int k, int g,
                                                   std::int64_t lambda) {
  if (g % 2 != 0)
    throw odd_girth_error("layer profiles require even girth");
  const auto reject = feasibility_prefilter(k, g, lambda);
  if (reject) throw error("infeasible parameters: " + *reject);
  const int t = g / 2;
  const std::int64_t edge_total = k * ipow(k - 1, t - 1);
  const std::int64_t cycle_total = k * lambda / 2;

  std::vector<LayerProfile> out;
  std::vector<std::int64_t> counts(k, 0);
  // Nested iteration from n_k down to n_2; n_1 is then forced by the edge
  // identity and checked nonnegative.
  auto assign = [&](auto&& self, int i, std::int64_t edges_left,
                    std::int64_t cycles_left) -> void {
    if (i == 1) {
      if (cycles_left != 0) return;
      counts[0] = edges_left;
      LayerProfile p;
      p.k = k;
      p.t = t;
      p.counts = counts;
      out.push_back(std::move(p));
      return;
    }
    const std::int64_t pairs = static_cast<std::int64_t>(i) * (i - 1) / 2;
    const std::int64_t max_n =
        std::min(edges_left / i, cycles_left / pairs);
    for (std::int64_t n = max_n; n >= 0; --n) {
      counts[i - 1] = n;
      self(self, i - 1, edges_left - n * i, cycles_left - n * pairs);
    }
    counts[i - 1] = 0;
  };
  assign(assign, k, edge_total, cycle_total);
  // Descending lexicographic on (n_1, ..., n_k), matching the order the case
  // analyses use.
  std::sort(out.begin(), out.end(),
            [](const LayerProfile& a, const LayerProfile& b) {
              return a.counts > b.counts;
            });
  return out;
}

std::int64_t upper_limit_order(int k, int g) {
  if (g % 2 == 0) throw even_girth_error("upper-limit order requires odd girth");
  if (g < 5) throw error("upper-limit order requires girth >= 5");
  if (k < 3) throw degree_too_small("upper-limit order requires k >= 3");
  std::int64_t total = 1;  // the root
  for (int j = 0; j <= (g - 3) / 2; ++j) total += k * ipow(k - 1, j);
  return total + 1;  // plus the one forced extra vertex
}

std::optional<KnownFact> known_nonexistence_oracle(int v, int k, int g,
                                                   std::int64_t lambda) {
  static const KnownFact table[] = {
      {26, 3, 7, 6, false, "published exhaustive search, order 26"},
      {32, 3, 8, 14, false, "published exhaustive search, order 32"},
      {18, 4, 5, 8, false, "published exhaustive search, order 18"},
      {38, 6, 5, 24, false, "published exhaustive search, order 38"},
  };
  for (const KnownFact& fact : table) {
    if (fact.v == v && fact.k == k && fact.g == g && fact.lambda == lambda)
      return fact;
  }
  return std::nullopt;
}

std::string to_string(CaseStatus status) {
  switch (status) {
    case CaseStatus::Feasible:
      return "Feasible";
    case CaseStatus::Infeasible:
      return "Infeasible";
    case CaseStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

}  // namespace egr
