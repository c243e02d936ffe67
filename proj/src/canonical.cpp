#include "egr/graph.hpp"

#include <algorithm>
#include <numeric>

namespace egr {
namespace detail {
namespace {

// Canonical labeling by branch-and-bound over label positions.
//
// The objective is the graph6 adjacency bit string of the relabeled graph:
// columns j = 1..n-1, column j holding bits (0,j),(1,j),...,(j-1,j).  Placing
// vertices one position at a time fixes one column per step, so the search
// compares candidate columns against the best known leaf and prunes:
//
//  * within a node, only candidates achieving the node-minimal column can
//    reach the subtree minimum (anything else differs first at this column),
//  * a minimal column greater than the incumbent's column kills the branch,
//  * tied candidates related by a discovered automorphism fixing the placed
//    prefix pointwise yield identical subtrees, so one per orbit suffices.
//    Automorphisms fall out of leaves that tie the incumbent exactly.
//
// Colors restrict the competition to color-preserving relabelings: positions
// are filled in non-decreasing color order.
struct Searcher {
  const Graph& g;
  const std::vector<int>& colors;
  int n;
  std::vector<int> color_at;  // color required at each position

  std::vector<int> perm;  // position -> vertex
  std::vector<char> used;
  std::vector<std::uint8_t> best_bits;
  std::vector<int> best_perm;
  bool have_best = false;

  std::vector<std::vector<int>> autos;
  static constexpr std::size_t kMaxAutos = 512;

  Searcher(const Graph& graph, const std::vector<int>& cols)
      : g(graph), colors(cols), n(graph.order()), perm(n, -1), used(n, 0) {
    color_at.resize(n);
    std::vector<int> sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    color_at = sorted;
    best_bits.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  }

  bool adj(int u, int v) const { return (g.row(u)[v / 64] >> (v % 64)) & 1u; }

  static std::size_t column_offset(int d) {
    return static_cast<std::size_t>(d) * (d - 1) / 2;
  }

  void record_leaf() {
    best_perm = perm;
    have_best = true;
    for (int d = 1; d < n; ++d) {
      std::size_t off = column_offset(d);
      for (int j = 0; j < d; ++j) best_bits[off + j] = adj(perm[j], perm[d]) ? 1 : 0;
    }
  }

  // returns true if the incumbent was replaced within this subtree
  bool descend(int d, bool prefix_equal) {
    if (d == n) {
      if (prefix_equal && have_best) {
        if (autos.size() < kMaxAutos) {
          std::vector<int> phi(n);
          for (int i = 0; i < n; ++i) phi[best_perm[i]] = perm[i];
          autos.push_back(std::move(phi));
        }
        return false;
      }
      record_leaf();
      return true;
    }

    std::vector<int> cands;
    cands.reserve(n - d);
    for (int v = 0; v < n; ++v)
      if (!used[v] && colors[v] == color_at[d]) cands.push_back(v);

    std::vector<std::vector<std::uint8_t>> cols(cands.size());
    std::size_t min_idx = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      cols[i].resize(d);
      for (int j = 0; j < d; ++j) cols[i][j] = adj(perm[j], cands[i]) ? 1 : 0;
      if (i > 0 && cols[i] < cols[min_idx]) min_idx = i;
    }
    const std::vector<std::uint8_t> mincol = cols[min_idx];

    bool child_equal = prefix_equal;
    if (prefix_equal && have_best) {
      int cmp = 0;
      std::size_t off = column_offset(d);
      for (int j = 0; j < d && cmp == 0; ++j)
        cmp = int(mincol[j]) - int(best_bits[off + j]);
      if (cmp > 0) return false;
      child_equal = (cmp == 0);
    }

    std::vector<int> reps;
    orbit_reps(cands, cols, mincol, d, reps);

    bool updated = false;
    for (int v : reps) {
      perm[d] = v;
      used[v] = 1;
      if (descend(d + 1, child_equal)) {
        updated = true;
        child_equal = true;  // the new incumbent shares this prefix
      }
      used[v] = 0;
    }
    perm[d] = -1;
    return updated;
  }

  void orbit_reps(const std::vector<int>& cands,
                  const std::vector<std::vector<std::uint8_t>>& cols,
                  const std::vector<std::uint8_t>& mincol, int d,
                  std::vector<int>& reps) {
    std::vector<int> tied;  // sorted: cands is built in increasing order
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (cols[i] == mincol) tied.push_back(cands[i]);
    if (tied.size() == 1 || autos.empty()) {
      reps = tied;
      return;
    }
    std::vector<int> parent(tied.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto index_of = [&](int v) -> int {
      auto it = std::lower_bound(tied.begin(), tied.end(), v);
      return (it != tied.end() && *it == v) ? static_cast<int>(it - tied.begin()) : -1;
    };
    for (const auto& phi : autos) {
      bool fixes = true;
      for (int j = 0; j < d && fixes; ++j) fixes = (phi[perm[j]] == perm[j]);
      if (!fixes) continue;
      for (std::size_t i = 0; i < tied.size(); ++i) {
        int img = index_of(phi[tied[i]]);
        if (img >= 0) {
          int a = find(static_cast<int>(i)), b = find(img);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    for (std::size_t i = 0; i < tied.size(); ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) reps.push_back(tied[i]);
  }
};

}  // namespace

ColoredCanonical canonical_form_colored(const Graph& g, const std::vector<int>& colors) {
  if (static_cast<int>(colors.size()) != g.order())
    throw error("color vector size does not match graph order");
  ColoredCanonical out;
  int n = g.order();
  if (n == 0) return out;

  Searcher s(g, colors);
  s.descend(0, true);

  out.relabeling.assign(n, 0);
  for (int i = 0; i < n; ++i) out.relabeling[s.best_perm[i]] = i;
  out.bits = std::move(s.best_bits);
  out.automorphisms = std::move(s.autos);
  return out;
}

}  // namespace detail

CanonicalForm canonical_form(const Graph& g) {
  CanonicalForm out;
  if (g.order() == 0) {
    out.canonical_string = write_graph6(g);
    return out;
  }
  std::vector<int> colors(g.order(), 0);
  auto cc = detail::canonical_form_colored(g, colors);
  out.relabeling = cc.relabeling;
  out.canonical_string = write_graph6(permute(g, cc.relabeling));
  return out;
}

}  // namespace egr
