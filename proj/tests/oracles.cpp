#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace egr::testing {

namespace {

// Does the cycle (as a vertex sequence without the closing repeat) contain
// the path as a consecutive segment in either direction?
bool cycle_contains_path(const std::vector<int>& cycle,
                         const std::vector<int>& path) {
  const int len = static_cast<int>(cycle.size());
  const int m = static_cast<int>(path.size());
  if (m > len) return false;
  for (int start = 0; start < len; ++start) {
    for (int dir : {1, -1}) {
      bool match = true;
      for (int i = 0; i < m && match; ++i)
        match = cycle[static_cast<std::size_t>(
                    ((start + dir * i) % len + len) % len)] == path[i];
      if (match) return true;
    }
  }
  return false;
}

void cycle_dfs(const Graph& g, int start, std::vector<int>& path,
               std::vector<char>& on_path, int len,
               std::vector<std::vector<int>>& out) {
  const int last = path.back();
  if (static_cast<int>(path.size()) == len) {
    if (g.has_edge(last, start) && path[1] < path.back())
      out.push_back(path);
    return;
  }
  for (int next : g.neighbors(last)) {
    if (next <= start || on_path[next]) continue;
    path.push_back(next);
    on_path[next] = 1;
    cycle_dfs(g, start, path, on_path, len, out);
    on_path[next] = 0;
    path.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> naive_cycles_of_length(const Graph& g,
                                                     int len) {
  std::vector<std::vector<int>> out;
  if (len < 3 || len > g.order()) return out;
  std::vector<char> on_path(static_cast<std::size_t>(g.order()), 0);
  for (int start = 0; start < g.order(); ++start) {
    std::vector<int> path{start};
    on_path[start] = 1;
    cycle_dfs(g, start, path, on_path, len, out);
    on_path[start] = 0;
  }
  return out;
}

std::optional<int> naive_girth(const Graph& g) {
  for (int len = 3; len <= g.order(); ++len)
    if (!naive_cycles_of_length(g, len).empty()) return len;
  return std::nullopt;
}

std::int64_t naive_count_through_edge(const Graph& g, Edge e, int len) {
  return naive_count_through_path(g, {e.a, e.b}, len);
}

std::int64_t naive_count_through_path(const Graph& g,
                                      const std::vector<int>& path, int len) {
  std::int64_t count = 0;
  for (const auto& cycle : naive_cycles_of_length(g, len))
    if (cycle_contains_path(cycle, path)) ++count;
  return count;
}

std::optional<EgrParams> naive_is_egr(const Graph& g) {
  if (g.order() == 0) return std::nullopt;
  const int k = g.degree(0);
  for (int v = 1; v < g.order(); ++v)
    if (g.degree(v) != k) return std::nullopt;
  if (k < 3) return std::nullopt;
  const auto girth_value = naive_girth(g);
  if (!girth_value) return std::nullopt;
  const auto cycles = naive_cycles_of_length(g, *girth_value);
  std::vector<std::int64_t> per_edge(g.edges().size(), 0);
  for (const auto& cycle : cycles)
    for (std::size_t i = 0; i < g.edges().size(); ++i)
      if (cycle_contains_path(cycle, {g.edges()[i].a, g.edges()[i].b}))
        ++per_edge[i];
  if (per_edge.empty()) return std::nullopt;
  for (const auto count : per_edge)
    if (count != per_edge[0]) return std::nullopt;
  if (per_edge[0] == 0) return std::nullopt;
  return EgrParams{g.order(), k, *girth_value, per_edge[0]};
}

std::string naive_canonical_graph6(const Graph& g) {
  if (g.order() > 9)
    throw std::invalid_argument("naive canonical form: order too large");
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
      int a = perm[static_cast<std::size_t>(e.a)];
      int b = perm[static_cast<std::size_t>(e.b)];
      if (a > b) std::swap(a, b);
      edges.push_back(Edge{a, b});
    }
    const std::string s = write_graph6(Graph::from_edges(g.order(), edges));
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::int64_t naive_automorphism_count(const Graph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t count = 0;
  do {
    bool ok = true;
    for (const Edge& e : g.edges()) {
      if (!g.has_edge(perm[static_cast<std::size_t>(e.a)],
                      perm[static_cast<std::size_t>(e.b)])) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

bool naive_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<int> perm(static_cast<std::size_t>(a.order()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < a.order() && ok; ++v)
      ok = a.degree(v) == b.degree(perm[static_cast<std::size_t>(v)]);
    for (const Edge& e : a.edges()) {
      if (!ok) break;
      ok = b.has_edge(perm[static_cast<std::size_t>(e.a)],
                      perm[static_cast<std::size_t>(e.b)]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

// Backtracking enumeration of labeled regular graphs.  Vertices take their
// remaining neighbors in increasing order, so each graph is produced exactly
// once.  Girth is enforced edge by edge: i-j may be added only if the
// current distance between i and j is at least g_min - 1.
class LabeledCounter {
 public:
  LabeledCounter(int k, int g_min, int v, bool connected_only)
      : k_(k), g_min_(g_min), v_(v), connected_only_(connected_only),
        adj_(static_cast<std::size_t>(v), 0),
        degree_(static_cast<std::size_t>(v), 0) {
    if (v > 64) throw std::invalid_argument("labeled count: order too large");
  }

  std::int64_t count() {
    fill_vertex(0);
    return total_;
  }

 private:
  bool distance_ok(int from, int to) const {
    // BFS from `from`, at most g_min - 2 steps; reaching `to` that early
    // would close a cycle shorter than g_min.
    std::uint64_t seen = 1ULL << from;
    std::uint64_t frontier = seen;
    for (int step = 0; step < g_min_ - 2; ++step) {
      std::uint64_t next = 0;
      while (frontier) {
        const int x = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= adj_[static_cast<std::size_t>(x)];
      }
      next &= ~seen;
      if (next & (1ULL << to)) return false;
      seen |= next;
      frontier = next;
    }
    return true;
  }

  bool connected() const {
    std::uint64_t seen = 1;
    std::uint64_t frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      while (frontier) {
        const int x = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= adj_[static_cast<std::size_t>(x)];
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return std::popcount(seen) == v_;
  }

  void fill_vertex(int i) {
    if (i == v_) {
      if (!connected_only_ || connected()) ++total_;
      return;
    }
    pick_neighbors(i, k_ - degree_[static_cast<std::size_t>(i)], i + 1);
  }

  void pick_neighbors(int i, int need, int from) {
    if (need == 0) {
      fill_vertex(i + 1);
      return;
    }
    // not enough open slots among the remaining vertices
    int capacity = 0;
    for (int j = from; j < v_; ++j)
      capacity += k_ - degree_[static_cast<std::size_t>(j)] > 0;
    if (capacity < need) return;
    for (int j = from; j < v_; ++j) {
      if (degree_[static_cast<std::size_t>(j)] >= k_) continue;
      if (g_min_ > 3 && !distance_ok(i, j)) continue;
      adj_[static_cast<std::size_t>(i)] |= 1ULL << j;
      adj_[static_cast<std::size_t>(j)] |= 1ULL << i;
      ++degree_[static_cast<std::size_t>(i)];
      ++degree_[static_cast<std::size_t>(j)];
      pick_neighbors(i, need - 1, j + 1);
      adj_[static_cast<std::size_t>(i)] &= ~(1ULL << j);
      adj_[static_cast<std::size_t>(j)] &= ~(1ULL << i);
      --degree_[static_cast<std::size_t>(i)];
      --degree_[static_cast<std::size_t>(j)];
    }
  }

  int k_;
  int g_min_;
  int v_;
  bool connected_only_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> degree_;
  std::int64_t total_ = 0;
};

}  // namespace

std::int64_t labeled_regular_count(int k, int g_min, int v,
                                   bool connected_only) {
  if (v <= 0 || k < 0) return 0;
  if ((k * v) % 2 != 0) return 0;
  LabeledCounter counter(k, std::max(g_min, 3), v, connected_only);
  return counter.count();
}

}  // namespace egr::testing
