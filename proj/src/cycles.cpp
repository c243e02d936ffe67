#include "egr/cycles.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <thread>

namespace egr {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

// BFS distances to `target`, never entering blocked vertices and never using
// the edge `skip` (pass {-1, -1} for none).  Unreachable -> kUnreachable.
std::vector<int> distances_to(const Graph& g, int target, const std::vector<char>& blocked,
                              Edge skip) {
  std::vector<int> dist(g.order(), kUnreachable);
  std::queue<int> queue;
  dist[target] = 0;
  queue.push(target);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int w : g.neighbors(u)) {
      if (blocked[w] || dist[w] != kUnreachable) continue;
      if ((u == skip.a && w == skip.b) || (u == skip.b && w == skip.a)) continue;
      dist[w] = dist[u] + 1;
      queue.push(w);
    }
  }
  return dist;
}

// Counts simple paths from a start vertex to `target` with exactly `steps`
// edges.  Vertices marked in `visited` (including the start) are off limits,
// `target` may only appear as the final vertex, and the edge `skip` is never
// used.  `dist` must lower-bound the remaining distance to `target`.
struct PathCounter {
  const Graph& g;
  int target;
  int steps;
  Edge skip;
  const std::vector<int>& dist;
  std::vector<char>& visited;
  std::int64_t count = 0;

  void run(int x, int depth) {
    const int remaining = steps - depth - 1;
    for (int y : g.neighbors(x)) {
      if ((x == skip.a && y == skip.b) || (x == skip.b && y == skip.a)) continue;
      if (y == target) {
        if (remaining == 0) ++count;
        continue;
      }
      if (remaining == 0 || visited[y]) continue;
      if (dist[y] == kUnreachable || dist[y] > remaining) continue;
      visited[y] = 1;
      run(y, depth + 1);
      visited[y] = 0;
    }
  }
};

std::int64_t count_completions(const Graph& g, int start, int target, int steps,
                               std::vector<char>& blocked, Edge skip) {
  const std::vector<int> dist = distances_to(g, target, blocked, skip);
  blocked[start] = 1;
  PathCounter counter{g, target, steps, skip, dist, blocked};
  counter.run(start, 0);
  blocked[start] = 0;
  return counter.count;
}

}  // namespace

std::optional<int> girth(const Graph& g) {
  const int n = g.order();
  int best = kUnreachable;
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> queue;
    dist[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      if (best != kUnreachable && 2 * dist[u] >= best) continue;
      for (int w : g.neighbors(u)) {
        if (w == parent[u]) continue;
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else {
          // Non-tree edge: a closed walk through root of this length exists,
          // and the minimum over all roots is exactly the girth.
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnreachable) return std::nullopt;
  return best;
}

std::int64_t count_g_cycles_through_edge(const Graph& g, Edge e, int len) {
  if (len < 3) throw error("cycle length must be at least 3");
  const int a = std::min(e.a, e.b), b = std::max(e.a, e.b);
  if (!g.has_edge(a, b)) throw not_an_edge("no such edge in the graph");
  // Cycles of length len through (a,b) correspond one-to-one to simple paths
  // from a to b with len-1 edges that avoid the edge itself.
  std::vector<char> blocked(g.order(), 0);
  return count_completions(g, a, b, len - 1, blocked, Edge{a, b});
}

std::int64_t count_g_cycles_through_vertex(const Graph& g, int x, int len) {
  g.check_vertex(x);
  if (len < 3) throw error("cycle length must be at least 3");
  // Every cycle through x uses exactly two of the edges at x.
  std::int64_t total = 0;
  for (int y : g.neighbors(x)) {
    total += count_g_cycles_through_edge(g, Edge{std::min(x, y), std::max(x, y)}, len);
  }
  assert(total % 2 == 0);
  return total / 2;
}

std::int64_t count_g_cycles_through_path(const Graph& g, const std::vector<int>& p, int len) {
  if (len < 3) throw error("cycle length must be at least 3");
  if (p.size() < 2) throw not_a_path("path needs at least two vertices");
  if (static_cast<int>(p.size()) > len) throw not_a_path("path is longer than the cycle length");
  for (int v : p) g.check_vertex(v);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!g.has_edge(p[i], p[i + 1])) throw not_a_path("consecutive path vertices must be adjacent");
  }
  std::vector<char> seen(g.order(), 0);
  for (int v : p) {
    if (seen[v]) throw not_a_path("path vertices must be distinct");
    seen[v] = 1;
  }
  const int front = p.front(), back = p.back();
  if (static_cast<int>(p.size()) == len) {
    // The only candidate cycle is p itself closed up by the edge back-front.
    return g.has_edge(front, back) ? 1 : 0;
  }
  // Orient each containing cycle so that p reads forward; the rest of the
  // cycle is then a unique completion path from back to front avoiding the
  // interior of p.
  std::vector<char> blocked(g.order(), 0);
  for (std::size_t i = 1; i + 1 < p.size(); ++i) blocked[p[i]] = 1;
  blocked[front] = 0;  // endpoint of the completion
  const int steps = len - static_cast<int>(p.size()) + 1;
  return count_completions(g, back, front, steps, blocked, Edge{-1, -1});
}

std::vector<std::vector<int>> enumerate_shortest_cycles(const Graph& g) {
  const std::optional<int> glen = girth(g);
  if (!glen) throw acyclic_graph("graph has no cycle");
  return enumerate_cycles_of_length(g, *glen);
}

std::vector<std::vector<int>> enumerate_cycles_of_length(const Graph& g,
                                                         int len) {
  if (len < 3) throw error("cycle length must be at least 3");
  const int n = g.order();
  std::vector<std::vector<int>> cycles;

  // Enumerate each cycle once, rooted at its smallest vertex m, walking in
  // the direction whose second vertex is the smaller neighbor of m.
  std::vector<char> blocked(n, 0);
  std::vector<int> path;
  for (int m = 0; m < n; ++m) {
    // Only vertices above the root may appear; distances within that
    // restriction prune dead branches.
    std::vector<char> below(n, 0);
    for (int v = 0; v < m; ++v) below[v] = 1;
    const std::vector<int> dist = distances_to(g, m, below, Edge{-1, -1});

    path.assign(1, m);
    blocked[m] = 1;
    auto descend = [&](auto&& self, int x) -> void {
      const int depth = static_cast<int>(path.size()) - 1;
      const int remaining = len - depth - 1;
      for (int y : g.neighbors(x)) {
        if (y == m) {
          if (remaining == 0 && path[1] < path.back()) cycles.push_back(path);
          continue;
        }
        if (y < m || remaining == 0 || blocked[y]) continue;
        if (dist[y] == kUnreachable || dist[y] > remaining) continue;
        blocked[y] = 1;
        path.push_back(y);
        self(self, y);
        path.pop_back();
        blocked[y] = 0;
      }
    };
    descend(descend, m);
    blocked[m] = 0;
  }
  return cycles;
}

std::optional<std::int64_t> LambdaProfile::constant_edge_count() const {
  if (edge_counts.empty()) return std::nullopt;
  const std::int64_t first = edge_counts.front();
  for (std::int64_t c : edge_counts) {
    if (c != first) return std::nullopt;
  }
  return first;
}

LambdaProfile lambda_profile(const Graph& g, int threads) {
  const std::optional<int> glen = girth(g);
  if (!glen) {
    // acyclic: all counts are zero and there is no girth to report
    LambdaProfile profile;
    profile.edge_counts.assign(g.edges().size(), 0);
    profile.vertex_counts.assign(static_cast<std::size_t>(g.order()), 0);
    return profile;
  }
  const int len = *glen;
  const auto& edges = g.edges();
  const int m = static_cast<int>(edges.size());

  LambdaProfile profile;
  profile.girth_value = len;
  profile.edge_counts.assign(m, 0);

  const int workers = std::max(1, std::min(threads, m));
  if (workers == 1) {
    for (int i = 0; i < m; ++i) {
      profile.edge_counts[i] = count_g_cycles_through_edge(g, edges[i], len);
    }
  } else {
    // Each worker fills its own slots, so the result is independent of
    // scheduling.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < m; i += workers) {
          profile.edge_counts[i] = count_g_cycles_through_edge(g, edges[i], len);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  profile.vertex_counts.assign(g.order(), 0);
  for (int i = 0; i < m; ++i) {
    profile.vertex_counts[edges[i].a] += profile.edge_counts[i];
    profile.vertex_counts[edges[i].b] += profile.edge_counts[i];
  }
  for (auto& c : profile.vertex_counts) {
    assert(c % 2 == 0);
    c /= 2;
  }
  return profile;
}

void EgrParams::validate() const {
  if (v < 1 || k < 3 || g < 3 || lambda < 1) {
    throw error("parameters require v >= 1, k >= 3, g >= 3, lambda >= 1");
  }
  if ((k * lambda) % 2 != 0) {
    throw parity_violation("k * lambda must be even");
  }
}

std::optional<EgrParams> is_egr(const Graph& g, int threads) {
  const std::optional<int> k = is_regular(g);
  if (!k || *k < 3) return std::nullopt;
  const std::optional<int> glen = girth(g);
  if (!glen) return std::nullopt;
  const LambdaProfile profile = lambda_profile(g, threads);
  const std::optional<std::int64_t> lambda = profile.constant_edge_count();
  if (!lambda) return std::nullopt;
  EgrParams params{g.order(), *k, *glen, *lambda};
  params.validate();
  return params;
}

}  // namespace egr
