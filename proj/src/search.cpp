#include "egr/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <thread>
#include <utility>
#include <vector>

namespace egr {
namespace {

using Clock = std::chrono::steady_clock;

constexpr int kMaxOrder = 64;  // generation states live in single-word rows

std::int64_t moore_lower_bound(int k, int g) {
  std::int64_t total;
  if (g % 2 == 1) {
    total = 1;
    std::int64_t layer = k;
    for (int i = 0; i < (g - 1) / 2; ++i) {
      total += layer;
      layer *= k - 1;
    }
  } else {
    total = 0;
    std::int64_t layer = 1;
    for (int i = 0; i < g / 2; ++i) {
      total += 2 * layer;
      layer *= k - 1;
    }
  }
  return total;
}

// generation state: the public partial-graph view plus the incremental
// girth-cycle counts and the automorphism generators of the current graph
struct GenState {
  PartialGraph pg;
  std::vector<std::int16_t> cnt;      // girth-cycle count per vertex pair
  std::vector<std::vector<int>> aut;  // Aut generators (vertex -> vertex)
};

Graph state_graph(const PartialGraph& pg) {
  std::vector<Edge> edges;
  for (int a = 0; a < pg.n; ++a) {
    std::uint64_t scan = pg.adj[a] & ~((a < 63 ? (2ULL << a) : 0ULL) - 1);
    if (a == 63) scan = 0;
    while (scan) {
      const int b = std::countr_zero(scan);
      scan &= scan - 1;
      edges.push_back(Edge{a, b});
    }
  }
  return Graph::from_edges(pg.n, edges);
}

// BFS distances from `from`, capped (entries beyond cap stay at cap+1)
void bfs_dist(const PartialGraph& pg, int from, int cap,
              std::array<int, kMaxOrder>& dist) {
  dist.fill(cap + 1);
  dist[from] = 0;
  std::uint64_t seen = 1ULL << from;
  std::uint64_t frontier = seen;
  for (int step = 1; step <= cap && frontier; ++step) {
    std::uint64_t next = 0;
    std::uint64_t scan = frontier;
    while (scan) {
      const int x = std::countr_zero(scan);
      scan &= scan - 1;
      next |= pg.adj[x];
    }
    next &= ~seen;
    std::uint64_t mark = next;
    while (mark) {
      const int x = std::countr_zero(mark);
      mark &= mark - 1;
      dist[x] = step;
    }
    seen |= next;
    frontier = next;
  }
}

class Generator {
 public:
  Generator(int k, int g_min, int v, std::int64_t lambda, bool lambda_pruning,
            std::int64_t node_budget, Clock::time_point deadline)
      : k_(k),
        g_min_(g_min),
        v_(v),
        lambda_(lambda),
        lambda_pruning_(lambda_pruning),
        node_budget_(node_budget),
        deadline_(deadline) {}

  SearchStats stats;
  std::set<std::string> found;

  // collect states of this order instead of expanding them (-1: never)
  int frontier_order = -1;
  std::vector<GenState>* frontier_out = nullptr;

  GenState initial_state() const {
    GenState st;
    st.pg.target = EgrParams{v_, k_, g_min_, std::max<std::int64_t>(lambda_, 1)};
    st.pg.n = 1;
    st.pg.adj.assign(1, 0);
    st.pg.degree.assign(1, 0);
    if (track_lambda())
      st.cnt.assign(static_cast<std::size_t>(kMaxOrder) * kMaxOrder, 0);
    return st;
  }

  void expand(GenState& st) {
    if (out_of_budget()) return;
    ++stats.nodes_expanded;
    const PartialGraph& pg = st.pg;
    if (pg.n == v_) {
      emit(pg);
      return;
    }
    if (frontier_out && pg.n == frontier_order) {
      frontier_out->push_back(st);
      return;
    }

    // remaining vertices must be able to absorb the degree deficit: every
    // future edge has at most one endpoint among current vertices
    std::int64_t deficit = 0;
    for (int x = 0; x < pg.n; ++x) deficit += k_ - pg.degree[x];
    const std::int64_t remaining = v_ - pg.n;
    if (deficit > remaining * k_) {
      ++stats.prunes["degree_deficit"];
      return;
    }

    for (const auto& neighbor_set : candidate_sets(st)) {
      if (out_of_budget()) return;
      GenState child = st;
      if (!attach_vertex(child, neighbor_set)) continue;
      if (track_lambda() && lambda_pruning_ && frozen_deficit(child)) {
        ++stats.prunes["lambda_frozen_deficit"];
        continue;
      }
      if (!canonical_accept(child)) {
        ++stats.prunes["canonical_reject"];
        continue;
      }
      expand(child);
    }
  }

 private:
  int k_, g_min_, v_;
  std::int64_t lambda_;
  bool lambda_pruning_;
  std::int64_t node_budget_;
  Clock::time_point deadline_;

  bool track_lambda() const { return lambda_ >= 0; }

  bool out_of_budget() {
    if (!stats.complete) return true;
    if (stats.nodes_expanded >= node_budget_ ||
        ((stats.nodes_expanded & 255) == 0 && Clock::now() > deadline_)) {
      stats.complete = false;
      return true;
    }
    return false;
  }

  void emit(const PartialGraph& pg) {
    for (int x = 0; x < pg.n; ++x)
      if (pg.degree[x] != k_) return;
    const Graph g = state_graph(pg);
    if (track_lambda()) {
      const auto params = is_egr(g);
      if (!params || params->k != k_ || params->g != g_min_ ||
          params->lambda != lambda_)
        return;
    }
    found.insert(canonical_form(g).canonical_string);
  }

  // Neighbor sets for the next vertex: subsets of unsaturated vertices whose
  // members are pairwise far enough apart that the new vertex closes no
  // short cycle, one representative per Aut-orbit.
  std::vector<std::vector<int>> candidate_sets(GenState& st) {
    PartialGraph& pg = st.pg;
    std::vector<int> eligible;
    for (int x = 0; x < pg.n; ++x)
      if (pg.degree[x] < k_) eligible.push_back(x);

    // pairs too close to share a fresh neighbor
    std::vector<std::pair<int, int>> forbidden;
    std::vector<std::uint64_t> conflict(pg.n, 0);
    if (g_min_ >= 4) {
      std::array<int, kMaxOrder> dist;
      for (std::size_t i = 0; i < eligible.size(); ++i) {
        bfs_dist(pg, eligible[i], g_min_ - 3, dist);
        for (std::size_t j = i + 1; j < eligible.size(); ++j) {
          if (dist[eligible[j]] <= g_min_ - 3) {
            conflict[eligible[i]] |= 1ULL << eligible[j];
            conflict[eligible[j]] |= 1ULL << eligible[i];
            forbidden.push_back({eligible[i], eligible[j]});
          }
        }
      }
    }
    // expose the exclusions on the public view (informational)
    pg.forbidden_pairs = std::move(forbidden);

    std::vector<std::vector<int>> sets;
    std::vector<int> pick;
    std::uint64_t blocked = 0;
    auto choose = [&](auto&& self, std::size_t from) -> void {
      if (!pick.empty()) sets.push_back(pick);
      if (static_cast<int>(pick.size()) == k_) return;
      for (std::size_t i = from; i < eligible.size(); ++i) {
        const int x = eligible[i];
        if ((blocked >> x) & 1ULL) continue;
        pick.push_back(x);
        const std::uint64_t saved = blocked;
        blocked |= conflict[x];
        self(self, i + 1);
        blocked = saved;
        pick.pop_back();
      }
    };
    choose(choose, 0);

    if (st.aut.empty()) return sets;

    // one representative per orbit under the automorphism generators
    std::vector<std::vector<int>> reps;
    std::set<std::vector<int>> seen;
    for (const auto& s : sets) {
      if (seen.count(s)) continue;
      reps.push_back(s);
      std::vector<std::vector<int>> queue = {s};
      seen.insert(s);
      while (!queue.empty()) {
        const std::vector<int> cur = std::move(queue.back());
        queue.pop_back();
        for (const auto& phi : st.aut) {
          std::vector<int> img;
          img.reserve(cur.size());
          for (int x : cur) img.push_back(phi[x]);
          std::sort(img.begin(), img.end());
          if (seen.insert(img).second) queue.push_back(std::move(img));
        }
      }
    }
    return reps;
  }

  // Adds the next vertex adjacent to `neighbor_set`; updates girth-cycle
  // counts edge by edge.  Returns false when a count exceeds lambda.
  bool attach_vertex(GenState& st, const std::vector<int>& neighbor_set) {
    PartialGraph& pg = st.pg;
    const int w = pg.n++;
    pg.adj.push_back(0);
    pg.degree.push_back(0);
    for (int s : neighbor_set) {
      pg.adj[w] |= 1ULL << s;
      pg.adj[s] |= 1ULL << w;
      ++pg.degree[w];
      ++pg.degree[s];
      if (track_lambda() && !count_new_cycles(st, w, s)) {
        ++stats.prunes["lambda_overshoot"];
        return false;
      }
    }
    return true;
  }

  // Enumerates the girth-length cycles closed by the edge (w,s) and bumps
  // the count of every edge on them.  False on a count above lambda (only
  // checked when pruning is on; counts always stay current).
  bool count_new_cycles(GenState& st, int w, int s) {
    const PartialGraph& pg = st.pg;
    const int g = g_min_;
    std::array<int, kMaxOrder> dist;
    bfs_dist(pg, s, g - 1, dist);

    bool ok = true;
    std::vector<int> path = {w};
    std::uint64_t visited = 1ULL << w;
    auto bump = [&](int a, int b) {
      if (a > b) std::swap(a, b);
      std::int16_t& c =
          st.cnt[static_cast<std::size_t>(a) * kMaxOrder + b];
      if (++c > lambda_ && lambda_pruning_) ok = false;
    };
    auto dfs = [&](auto&& self, int x) -> void {
      const int remaining = g - static_cast<int>(path.size());
      std::uint64_t scan = pg.adj[x] & ~visited;
      while (scan) {
        const int y = std::countr_zero(scan);
        scan &= scan - 1;
        if (y == s) {
          if (remaining == 1) {
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
              bump(path[i], path[i + 1]);
            bump(path.back(), s);
            bump(s, w);
          }
          continue;
        }
        if (remaining <= 1 || dist[y] > remaining - 1) continue;
        visited |= 1ULL << y;
        path.push_back(y);
        self(self, y);
        path.pop_back();
        visited &= ~(1ULL << y);
      }
    };
    dfs(dfs, w);
    return ok;
  }

  // An edge whose counting ball is saturated can never gain girth cycles:
  // new vertices only attach to unsaturated ones, and a fresh path into the
  // edge would need a new neighbor for some vertex near an endpoint.
  bool frozen_deficit(const GenState& st) {
    const PartialGraph& pg = st.pg;
    std::array<int, kMaxOrder> dist;
    std::vector<char> ball_saturated(pg.n, 0);
    std::vector<char> computed(pg.n, 0);
    auto saturated_ball = [&](int a) {
      if (computed[a]) return ball_saturated[a] != 0;
      computed[a] = 1;
      bfs_dist(pg, a, g_min_ - 3, dist);
      for (int x = 0; x < pg.n; ++x)
        if (dist[x] <= g_min_ - 3 && pg.degree[x] < k_) {
          ball_saturated[a] = 0;
          return false;
        }
      ball_saturated[a] = 1;
      return true;
    };
    for (int a = 0; a < pg.n; ++a) {
      std::uint64_t scan = pg.adj[a] & ~((a < 63 ? (2ULL << a) : 0ULL) - 1);
      if (a == 63) scan = 0;
      while (scan) {
        const int b = std::countr_zero(scan);
        scan &= scan - 1;
        if (!saturated_ball(a) && !saturated_ball(b)) continue;
        const std::int64_t have =
            st.cnt[static_cast<std::size_t>(a) * kMaxOrder + b];
        if (have < lambda_) return true;
      }
    }
    return false;
  }

  // Canonical-augmentation acceptance: the child is kept only when the
  // vertex just added lies in the automorphism orbit of the canonical
  // deletion choice (the non-cut vertex with the highest canonical label).
  // On acceptance the child's automorphism generators are installed.
  bool canonical_accept(GenState& child) {
    const PartialGraph& pg = child.pg;
    const int n = pg.n;
    const int w = n - 1;
    const Graph g = state_graph(pg);
    auto cc = detail::canonical_form_colored(
        g, std::vector<int>(pg.degree.begin(), pg.degree.end()));

    auto non_cut = [&](int x) {
      if (n <= 2) return true;
      int start = x == 0 ? 1 : 0;
      std::uint64_t seen = 1ULL << start;
      std::uint64_t frontier = seen;
      const std::uint64_t excl = ~(1ULL << x);
      while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t scan = frontier;
        while (scan) {
          const int y = std::countr_zero(scan);
          scan &= scan - 1;
          next |= pg.adj[y] & excl;
        }
        next &= ~seen;
        seen |= next;
        frontier = next;
      }
      const std::uint64_t all =
          (n == 64 ? ~0ULL : (1ULL << n) - 1) & excl;
      return (seen & all) == all;
    };

    int chosen = -1, chosen_label = -1;
    for (int x = 0; x < n; ++x) {
      if (cc.relabeling[x] > chosen_label && non_cut(x)) {
        chosen = x;
        chosen_label = cc.relabeling[x];
      }
    }
    if (chosen < 0) return false;

    std::uint64_t orbit = 1ULL << chosen;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& phi : cc.automorphisms) {
        std::uint64_t scan = orbit;
        while (scan) {
          const int x = std::countr_zero(scan);
          scan &= scan - 1;
          if (!((orbit >> phi[x]) & 1ULL)) {
            orbit |= 1ULL << phi[x];
            grew = true;
          }
        }
      }
    }
    if (!((orbit >> w) & 1ULL)) return false;
    child.aut = std::move(cc.automorphisms);
    return true;
  }
};

// run the generator for one exact order, fanning subtrees across workers
void run_order(int k, int g_min, int v, std::int64_t lambda,
               bool lambda_pruning, int threads, std::int64_t node_budget,
               Clock::time_point deadline, SearchStats& stats,
               std::set<std::string>& found) {
  Generator root(k, g_min, v, lambda, lambda_pruning, node_budget, deadline);
  if (threads <= 1 || v <= 6) {
    GenState start = root.initial_state();
    root.expand(start);
    stats.nodes_expanded += root.stats.nodes_expanded;
    for (const auto& [rule, count] : root.stats.prunes)
      stats.prunes[rule] += count;
    stats.complete = stats.complete && root.stats.complete;
    found.insert(root.found.begin(), root.found.end());
    return;
  }

  std::vector<GenState> frontier;
  root.frontier_order = 6;
  root.frontier_out = &frontier;
  GenState start = root.initial_state();
  root.expand(start);
  stats.nodes_expanded += root.stats.nodes_expanded;
  for (const auto& [rule, count] : root.stats.prunes)
    stats.prunes[rule] += count;
  stats.complete = stats.complete && root.stats.complete;
  found.insert(root.found.begin(), root.found.end());
  if (frontier.empty()) return;

  // fixed per-subtree budget share keeps truncation deterministic
  const std::int64_t share = std::max<std::int64_t>(
      1, (node_budget - root.stats.nodes_expanded) /
             static_cast<std::int64_t>(frontier.size()));
  std::vector<Generator> workers;
  workers.reserve(frontier.size());
  for (std::size_t i = 0; i < frontier.size(); ++i)
    workers.emplace_back(k, g_min, v, lambda, lambda_pruning, share, deadline);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= frontier.size()) break;
      workers[i].expand(frontier[i]);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::max(1, std::min<int>(threads, frontier.size()));
  pool.reserve(count);
  for (int i = 0; i < count; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (auto& wk : workers) {
    stats.nodes_expanded += wk.stats.nodes_expanded;
    for (const auto& [rule, cnt] : wk.stats.prunes) stats.prunes[rule] += cnt;
    stats.complete = stats.complete && wk.stats.complete;
    found.insert(wk.found.begin(), wk.found.end());
  }
}

}  // namespace

std::vector<std::string> generate_regular(int k, int g_min, int v) {
  if (k < 1 || v < 1) throw error("generate_regular: invalid parameters");
  if ((static_cast<std::int64_t>(k) * v) % 2 != 0)
    throw parity_violation("generate_regular: k*v must be even");
  if (v > kMaxOrder)
    throw unsupported_order("generate_regular: order above the search limit");
  SearchStats stats;
  std::set<std::string> found;
  run_order(k, std::max(g_min, 3), v, -1, false, 1,
            std::numeric_limits<std::int64_t>::max(),
            Clock::now() + std::chrono::hours(24), stats, found);
  return {found.begin(), found.end()};
}

SearchOutcome search_egr(int k, int g, std::int64_t lambda, int v_max,
                         const EgrSearchOptions& options) {
  SearchOutcome outcome;
  outcome.params = EgrParams{v_max, k, g, lambda};
  if (const auto reject = feasibility_prefilter(k, g, lambda))
    throw bad_candidate("search_egr: " + *reject);
  if (v_max > kMaxOrder)
    throw unsupported_order("search_egr: order above the search limit");

  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(
                             options.budget.max_seconds));
  std::set<std::string> found;
  const std::int64_t v_min64 =
      std::max<std::int64_t>(k + 1, moore_lower_bound(k, g));
  const int v_min =
      static_cast<int>(std::min<std::int64_t>(v_min64, v_max + 1));
  for (int v = v_min; v <= v_max; ++v) {
    if ((static_cast<std::int64_t>(k) * v) % 2 != 0) continue;
    if (!outcome.stats.complete) break;
    outcome.examined_orders.push_back(v);
    run_order(k, g, v, lambda, !options.disable_lambda_pruning,
              options.threads,
              options.budget.max_nodes - outcome.stats.nodes_expanded,
              deadline, outcome.stats, found);
  }
  outcome.results.assign(found.begin(), found.end());
  return outcome;
}

}  // namespace egr
