#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "egr/case_analysis.hpp"
#include "egr/cycles.hpp"

namespace egr {
namespace {

using Clock = std::chrono::steady_clock;

constexpr int kMaxN = 64;  // partial structures live in single-word bit rows

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// ---------------------------------------------------------------------------
// trace-object tags
// ---------------------------------------------------------------------------

std::string csv(const std::vector<int>& values, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string edge_tag(int a, int b) {
  return "edge:" + std::to_string(std::min(a, b)) + "-" +
         std::to_string(std::max(a, b));
}

std::string path_tag(const std::vector<int>& p) { return "path:" + csv(p, '-'); }

std::string vertex_tag(int v) { return "vertex:" + std::to_string(v); }

std::optional<std::string> strip_prefix(const std::string& s,
                                        const std::string& prefix) {
  if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
  return std::nullopt;
}

std::vector<int> parse_csv(const std::string& s, char sep = ',') {
  std::vector<int> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

// cap for girth cycles through a path on m vertices (m >= 3)
std::int64_t path_cap(int k, int g, std::int64_t lambda, int m) {
  const int u = ceil_div(g + 3, 2);
  if (m == 3 && k == 3 && lambda % 2 == 0) return lambda / 2;
  return ipow(k - 1, u - m);
}

// ---------------------------------------------------------------------------
// forced-tree skeleton
// ---------------------------------------------------------------------------

struct Skeleton {
  int k = 0, g = 0, depth = 0;
  bool even = false;
  int inner_layers = 0;  // the tree spans layers 0..inner_layers
  int tree_size = 0;
  std::vector<int> layer;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;

  int branch_of(int v) const {
    int x = v;
    while (x != -1 && layer[x] > 1) x = parent[x];
    return x;
  }
  bool under(int v, int x) const {
    int a = v;
    while (a != -1 && a != x) a = parent[a];
    return a == x;
  }
};

Skeleton build_skeleton(int k, int g, int depth) {
  Skeleton s;
  s.k = k;
  s.g = g;
  s.depth = depth;
  s.even = g % 2 == 0;
  // Even girth keeps the outermost layer abstract (it is realized from the
  // profile); odd girth includes it, since the tree to the full depth is
  // forced vertex by vertex.
  s.inner_layers = s.even ? depth - 1 : depth;
  s.layer.push_back(0);
  s.parent.push_back(-1);
  s.children.emplace_back();
  std::vector<int> frontier = {0};
  for (int level = 1; level <= s.inner_layers; ++level) {
    std::vector<int> next;
    for (int p : frontier) {
      const int slots = (level == 1) ? k : k - 1;
      for (int j = 0; j < slots; ++j) {
        const int id = static_cast<int>(s.layer.size());
        s.layer.push_back(level);
        s.parent.push_back(p);
        s.children.emplace_back();
        s.children[p].push_back(id);
        next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  s.tree_size = static_cast<int>(s.layer.size());
  return s;
}

// ---------------------------------------------------------------------------
// partial structure with an undo journal
// ---------------------------------------------------------------------------

struct Violation {
  std::string rule;
  std::vector<std::string> objects;  // entries after the partial:... object
  std::vector<std::int64_t> values;
  std::string conclusion;
};

struct Partial {
  int k = 0, g = 0;
  std::int64_t lambda = 0;
  int u = 0;  // path-containment horizon: caps apply to paths on 3..u vertices
  bool p3_exact = false;       // 3-vertex path counts are forced exactly
  std::int64_t p3cap = 0;      // cap for 3-vertex paths
  std::int64_t pair_cap = 0;   // cap for non-incident edge pairs (girth >= 5)
  int n = 0;
  std::array<std::uint64_t, kMaxN> adj{};
  std::array<int, kMaxN> deg{};
  std::vector<std::int16_t> cnt;   // girth-cycle count per vertex pair
  std::vector<std::int16_t> cnt3;  // girth-cycle count per 3-vertex path
  std::map<std::pair<Edge, Edge>, int> paircnt;
  std::vector<Edge> edge_list;

  // undo stacks (save-on-write; frames record the stack marks)
  std::vector<std::pair<std::int16_t*, std::int16_t>> s16;
  std::vector<std::pair<std::pair<Edge, Edge>, int>> spair;

  struct Frame {
    std::size_t m16, mpair, medge;
    int n_before;
  };

  void init(int k_, int g_, std::int64_t lambda_) {
    k = k_;
    g = g_;
    lambda = lambda_;
    u = ceil_div(g + 3, 2);
    p3_exact = k == 3 && lambda % 2 == 0;
    p3cap = path_cap(k, g, lambda, 3);
    pair_cap = g >= 5 ? ipow(k - 1, ceil_div(g - 5, 2)) : 0;
    cnt.assign(static_cast<std::size_t>(kMaxN) * kMaxN, 0);
    cnt3.assign(static_cast<std::size_t>(kMaxN) * kMaxN * kMaxN, 0);
  }

  Frame open_frame() const {
    return Frame{s16.size(), spair.size(), edge_list.size(), n};
  }

  void close_frame(const Frame& f) {
    while (edge_list.size() > f.medge) {
      const Edge e = edge_list.back();
      edge_list.pop_back();
      adj[e.a] &= ~(1ULL << e.b);
      adj[e.b] &= ~(1ULL << e.a);
      --deg[e.a];
      --deg[e.b];
    }
    while (s16.size() > f.m16) {
      *s16.back().first = s16.back().second;
      s16.pop_back();
    }
    while (spair.size() > f.mpair) {
      paircnt[spair.back().first] = spair.back().second;
      spair.pop_back();
    }
    n = f.n_before;
  }

  std::int16_t& cnt_ref(int a, int b) {
    if (a > b) std::swap(a, b);
    return cnt[static_cast<std::size_t>(a) * kMaxN + b];
  }
  std::int16_t cnt_at(int a, int b) const {
    if (a > b) std::swap(a, b);
    return cnt[static_cast<std::size_t>(a) * kMaxN + b];
  }
  std::int16_t& cnt3_ref(int center, int a, int b) {
    if (a > b) std::swap(a, b);
    return cnt3[(static_cast<std::size_t>(center) * kMaxN + a) * kMaxN + b];
  }
  std::int16_t cnt3_at(int center, int a, int b) const {
    if (a > b) std::swap(a, b);
    return cnt3[(static_cast<std::size_t>(center) * kMaxN + a) * kMaxN + b];
  }

  int add_vertex() { return n++; }  // rows start empty; undo just shrinks n

  // dist(a,b) >= need in the current structure?
  bool dist_at_least(int a, int b, int need) const {
    if (need <= 0) return true;
    if (a == b) return false;
    std::uint64_t seen = 1ULL << a;
    std::uint64_t frontier = seen;
    for (int step = 1; step < need; ++step) {
      std::uint64_t next = 0;
      std::uint64_t scan = frontier;
      while (scan) {
        const int v = std::countr_zero(scan);
        scan &= scan - 1;
        next |= adj[v];
      }
      next &= ~seen;
      if (next == 0) return true;  // b is out of reach entirely
      if (next & (1ULL << b)) return false;
      seen |= next;
      frontier = next;
    }
    return true;
  }

  void add_edge_raw(int a, int b) {
    adj[a] |= 1ULL << b;
    adj[b] |= 1ULL << a;
    ++deg[a];
    ++deg[b];
    edge_list.push_back(Edge{std::min(a, b), std::max(a, b)});
  }

  // Simple paths from `from` to `to` with exactly `steps` edges avoiding the
  // vertices in `banned` (endpoints exempt).  Backs the recount-style checks.
  std::int64_t count_paths(int from, int to, int steps,
                           std::uint64_t banned) const {
    std::uint64_t visited = (banned & ~(1ULL << to)) | (1ULL << from);
    std::int64_t total = 0;
    auto dfs = [&](auto&& self, int x, int remaining) -> void {
      if (remaining == 1) {
        if (adj[x] & (1ULL << to)) ++total;
        return;
      }
      std::uint64_t scan = adj[x] & ~visited & ~(1ULL << to);
      while (scan) {
        const int y = std::countr_zero(scan);
        scan &= scan - 1;
        visited |= 1ULL << y;
        self(self, y, remaining - 1);
        visited &= ~(1ULL << y);
      }
    };
    if (steps <= 0) return 0;
    dfs(dfs, from, steps);
    return total;
  }

  // girth cycles through the path p, recounted from scratch
  std::int64_t recount_path(const std::vector<int>& p) const {
    const int m = static_cast<int>(p.size());
    std::uint64_t banned = 0;
    for (int v : p) banned |= 1ULL << v;
    if (m == g) return (adj[p.front()] >> p.back()) & 1ULL;
    return count_paths(p.back(), p.front(), g - m + 1, banned);
  }

  // Adds the edge, enumerates every new girth-length cycle through it, and
  // applies the incremental counting rules.  Girth admissibility
  // (dist(a,b) >= g-1 beforehand) is the caller's responsibility.
  std::optional<Violation> add_edge_checked(int a, int b) {
    add_edge_raw(a, b);

    // distances to b, for pruning the path enumeration
    std::array<int, kMaxN> dist_b;
    dist_b.fill(kMaxN + 1);
    {
      std::uint64_t seen = 1ULL << b;
      std::uint64_t frontier = seen;
      dist_b[b] = 0;
      for (int step = 1; step <= g - 1 && frontier; ++step) {
        std::uint64_t next = 0;
        std::uint64_t scan = frontier;
        while (scan) {
          const int v = std::countr_zero(scan);
          scan &= scan - 1;
          next |= adj[v];
        }
        next &= ~seen;
        scan = next;
        while (scan) {
          const int v = std::countr_zero(scan);
          scan &= scan - 1;
          dist_b[v] = step;
        }
        seen |= next;
        frontier = next;
      }
    }

    std::vector<std::vector<int>> new_cycles;
    std::vector<int> path = {a};
    std::uint64_t visited = 1ULL << a;
    auto dfs = [&](auto&& self, int x) -> void {
      const int remaining = g - static_cast<int>(path.size());
      std::uint64_t scan = adj[x] & ~visited;
      while (scan) {
        const int y = std::countr_zero(scan);
        scan &= scan - 1;
        if (y == b) {
          if (remaining == 1) {
            path.push_back(b);
            new_cycles.push_back(path);
            path.pop_back();
          }
          continue;
        }
        if (remaining <= 1 || dist_b[y] > remaining - 1) continue;
        visited |= 1ULL << y;
        path.push_back(y);
        self(self, y);
        path.pop_back();
        visited &= ~(1ULL << y);
      }
    };
    dfs(dfs, a);

    for (const auto& cycle : new_cycles) {
      for (int i = 0; i < g; ++i) {
        const int x = cycle[i];
        const int y = cycle[(i + 1) % g];
        std::int16_t& c = cnt_ref(x, y);
        s16.push_back({&c, c});
        if (++c > lambda) {
          return Violation{
              "edge_cycle_budget_exceeded",
              {edge_tag(x, y)},
              {c, lambda},
              "an edge lies on more girth cycles than lambda allows"};
        }
      }
      for (int i = 0; i < g; ++i) {
        const int left = cycle[(i + g - 1) % g];
        const int mid = cycle[i];
        const int right = cycle[(i + 1) % g];
        std::int16_t& c = cnt3_ref(mid, left, right);
        s16.push_back({&c, c});
        if (++c > p3cap) {
          return Violation{
              "path_budget_exceeded",
              {path_tag({std::min(left, right), mid, std::max(left, right)})},
              {c, p3cap},
              "a 3-vertex path lies on more girth cycles than its cap"};
        }
      }
      // longer paths are recounted on the spot rather than tracked
      for (int m = 4; m <= std::min(u, g - 1); ++m) {
        const std::int64_t bound = ipow(k - 1, u - m);
        for (int s = 0; s < g; ++s) {
          std::vector<int> window(m);
          for (int i = 0; i < m; ++i) window[i] = cycle[(s + i) % g];
          const std::int64_t count = recount_path(window);
          if (count > bound) {
            if (window.front() > window.back())
              std::reverse(window.begin(), window.end());
            return Violation{"path_budget_exceeded",
                             {path_tag(window)},
                             {count, bound},
                             "a path lies on more girth cycles than its cap"};
          }
        }
      }
      if (pair_cap > 0) {
        std::array<Edge, 16> edges;
        for (int i = 0; i < g; ++i) {
          edges[i] = Edge{std::min(cycle[i], cycle[(i + 1) % g]),
                          std::max(cycle[i], cycle[(i + 1) % g])};
        }
        for (int i = 0; i < g; ++i) {
          for (int j = i + 1; j < g; ++j) {
            const Edge& e = edges[i];
            const Edge& f = edges[j];
            if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b)
              continue;
            const std::pair<Edge, Edge> key = std::minmax(e, f);
            auto [it, fresh] = paircnt.try_emplace(key, 0);
            (void)fresh;
            spair.push_back({key, it->second});
            if (++it->second > pair_cap) {
              return Violation{
                  "pair_budget_exceeded",
                  {edge_tag(e.a, e.b), edge_tag(f.a, f.b)},
                  {it->second, pair_cap},
                  "two non-incident edges share too many girth cycles"};
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  Graph to_graph() const { return Graph::from_edges(n, edge_list); }
};

// ---------------------------------------------------------------------------
// outside-placeholder model for support-completeness tests
//
// Unsaturated vertices may still gain edges toward vertices that do not exist
// yet.  The model collapses all possible future structure into placeholder
// vertices so that every completion path between current vertices has a model
// path of no greater length.  An object whose model admits no short enough
// placeholder path is therefore support-complete: its girth-cycle count can
// never grow again, in any completion.
// ---------------------------------------------------------------------------

struct Model {
  int n = 0;
  std::array<std::uint64_t, kMaxN> adj{};
  std::uint64_t omega = 0;  // placeholder vertices

  // Shared placeholder: nothing is known about the outside endpoints, so
  // distinct stubs may share one (one placeholder adjacent to every
  // unsaturated vertex yields length-2 routes, the shortest conceivable).
  static std::optional<Model> shared(int k, int order,
                                     const std::uint64_t* rows,
                                     const int* degrees) {
    Model m;
    if (order > kMaxN) return std::nullopt;
    m.n = order;
    for (int v = 0; v < order; ++v) m.adj[v] = rows[v];
    std::vector<int> open;
    for (int v = 0; v < order; ++v)
      if (degrees[v] < k) open.push_back(v);
    if (open.empty()) return m;
    if (m.n + 1 > kMaxN) return std::nullopt;
    const int w = m.n++;
    m.omega |= 1ULL << w;
    for (int v : open) {
      m.adj[w] |= 1ULL << v;
      m.adj[v] |= 1ULL << w;
    }
    return m;
  }

  // Declared-distinct placeholders: every listed stub is declared to meet an
  // outside endpoint shared with no other stub, so each gets a private
  // placeholder; placeholders are pairwise adjacent because distinct outside
  // vertices may be.  Routes between declared stubs then cost at least 3.
  static std::optional<Model> declared(int order, const std::uint64_t* rows,
                                       const std::vector<int>& stubs) {
    Model m;
    if (order + static_cast<int>(stubs.size()) > kMaxN) return std::nullopt;
    m.n = order;
    for (int v = 0; v < order; ++v) m.adj[v] = rows[v];
    std::vector<int> ids;
    for (int owner : stubs) {
      const int w = m.n++;
      m.omega |= 1ULL << w;
      m.adj[w] |= 1ULL << owner;
      m.adj[owner] |= 1ULL << w;
      ids.push_back(w);
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        m.adj[ids[i]] |= 1ULL << ids[j];
        m.adj[ids[j]] |= 1ULL << ids[i];
      }
    return m;
  }

  // Is there a simple path from a to b of 2..max_edges edges that avoids
  // `banned` and passes through at least one placeholder?
  bool future_path_exists(int a, int b, int max_edges,
                          std::uint64_t banned) const {
    if (a == b || max_edges < 2) return false;
    std::uint64_t visited = (1ULL << a) | banned;
    auto dfs = [&](auto&& self, int x, int used, bool saw) -> bool {
      if (((adj[x] >> b) & 1ULL) && used + 1 >= 2 && saw) return true;
      if (used + 1 >= max_edges) return false;
      std::uint64_t scan = adj[x] & ~visited & ~(1ULL << b);
      while (scan) {
        const int y = std::countr_zero(scan);
        scan &= scan - 1;
        visited |= 1ULL << y;
        const bool hit = self(self, y, used + 1, saw || ((omega >> y) & 1ULL));
        visited &= ~(1ULL << y);
        if (hit) return true;
      }
      return false;
    };
    return dfs(dfs, a, 0, false);
  }
};

// ---------------------------------------------------------------------------
// capacity rule shared by the engine and the trace replayer (the replayer
// feeds independent recounts into it)
// ---------------------------------------------------------------------------

// Future girth cycles through the edge (a,b) entering a by a neighbor route
// y: each route is capped by its 3-path headroom and by the headroom of the
// edge (a,y); open slots at a contribute whole fresh routes.
std::int64_t side_capacity(int k, std::int64_t lambda, std::int64_t p3cap,
                           int a, int b, int deg_a,
                           const std::vector<int>& neighbors,
                           const std::function<std::int64_t(int)>& p3_count,
                           const std::function<std::int64_t(int)>& edge_count) {
  std::int64_t total = 0;
  for (int y : neighbors) {
    if (y == b) continue;
    const std::int64_t p3_room = p3cap - p3_count(y);
    const std::int64_t edge_room = lambda - edge_count(y);
    total += std::max<std::int64_t>(0, std::min(p3_room, edge_room));
  }
  total += static_cast<std::int64_t>(k - deg_a) * p3cap;
  return total;
}

// ---------------------------------------------------------------------------
// moves (also the frontier/prefix encoding for deterministic parallelism)
// ---------------------------------------------------------------------------

struct Move {
  enum Kind { AssignUp, AddInner, FinalizeInner, Materialize, Defer } kind;
  int a = -1;              // AssignUp: profile vertex; AddInner: endpoint;
                           // Materialize/Defer: the stub owner acted on
  int b = -1;              // AssignUp: leaf; AddInner: other endpoint
  std::vector<int> group;  // Materialize: the other stub owners
};

struct EngineResult {
  std::vector<TraceStep> trace;
  bool trace_truncated = false;
  std::set<std::string> witnesses;
  std::int64_t nodes = 0;
  bool unknown = false;
  bool budget_hit = false;
};

// ---------------------------------------------------------------------------
// the search engine
// ---------------------------------------------------------------------------

class Engine {
 public:
  Engine(const Skeleton& skel, std::int64_t lambda,
         const std::optional<LayerProfile>& profile,
         const LocalSearchOptions& options, std::int64_t node_budget,
         Clock::time_point deadline)
      : skel_(skel),
        options_(options),
        node_budget_(node_budget),
        deadline_(deadline) {
    partial_.init(skel.k, skel.g, lambda);
    for (int v = 0; v < skel_.tree_size; ++v) partial_.add_vertex();
    for (int v = 1; v < skel_.tree_size; ++v)
      partial_.add_edge_raw(skel_.parent[v], v);
    if (skel_.even && profile) {
      // profile vertices carry up-edge quotas, largest first
      for (int i = skel_.k; i >= 1; --i) {
        for (std::int64_t c = 0; c < profile->counts[i - 1]; ++c) {
          const int id = partial_.add_vertex();
          profile_ids_.push_back(id);
          quota_[id] = i;
        }
      }
      targets_.assign(partial_.n, {});
    }
    free_slots_.fill(0);
    subtotal_.fill(0);
    if (skel_.even) {
      for (int v = skel_.tree_size - 1; v >= 1; --v) {
        if (skel_.layer[v] == skel_.inner_layers)
          free_slots_[v] = skel_.k - 1;
        for (int c : skel_.children[v]) free_slots_[v] += free_slots_[c];
      }
    }
    if (skel_.even) {
      outer_ids_ = profile_ids_;
    } else {
      for (int v = 0; v < skel_.tree_size; ++v)
        if (skel_.layer[v] == skel_.inner_layers) outer_ids_.push_back(v);
    }
    for (std::size_t i = 0; i < outer_ids_.size(); ++i)
      for (std::size_t j = i + 1; j < outer_ids_.size(); ++j)
        pair_candidates_.push_back({outer_ids_[i], outer_ids_[j]});
  }

  // Runs the search.  With collect_depth >= 0, expansion stops at that move
  // depth and the pending move sequences are written to frontier_out.
  EngineResult run(const std::vector<Move>& prefix, int collect_depth,
                   std::vector<std::vector<Move>>* frontier_out) {
    script_ = prefix;
    script_pos_ = 0;
    collect_depth_ = collect_depth;
    frontier_out_ = frontier_out;
    history_.clear();
    if (skel_.even)
      phase_a(0, 0, false);
    else
      phase_b(-1);
    result_.trace_truncated = tracer_truncated_;
    return std::move(result_);
  }

 private:
  const Skeleton& skel_;
  const LocalSearchOptions& options_;
  std::int64_t node_budget_;
  Clock::time_point deadline_;
  Partial partial_;
  std::vector<int> profile_ids_;
  std::array<int, kMaxN> quota_{};
  std::array<int, kMaxN> updeg_{};
  std::vector<std::vector<int>> targets_;
  std::array<std::int64_t, kMaxN> subtotal_{};        // S(x) accounting
  std::array<std::int64_t, kMaxN> free_slots_{};      // open leaf slots under x
  std::array<std::int64_t, kMaxN> assigned_under_{};  // ups landed under x
  std::vector<int> outer_ids_;
  std::vector<std::pair<int, int>> pair_candidates_;
  std::int64_t inner_added_ = 0;
  EngineResult result_;
  bool tracer_truncated_ = false;
  std::vector<Move> script_;
  std::size_t script_pos_ = 0;
  int collect_depth_ = -1;
  std::vector<std::vector<Move>>* frontier_out_ = nullptr;
  std::vector<Move> history_;

  // --- budget / trace helpers --------------------------------------------
  bool out_of_budget() {
    if (result_.budget_hit) return true;
    if (result_.nodes >= node_budget_) {
      result_.budget_hit = true;
      result_.unknown = true;
      return true;
    }
    if ((result_.nodes & 255) == 0 && Clock::now() > deadline_) {
      result_.budget_hit = true;
      result_.unknown = true;
      return true;
    }
    return false;
  }

  void trace(TraceStep step) {
    if (static_cast<std::int64_t>(result_.trace.size()) >=
        options_.max_trace_steps) {
      if (!tracer_truncated_) {
        tracer_truncated_ = true;
        result_.trace.push_back(
            {"trace_truncated", {}, {}, "further deductions omitted"});
      }
      return;
    }
    result_.trace.push_back(std::move(step));
  }

  void kill(const Violation& v, const std::vector<int>& deferred,
            bool private_model) {
    TraceStep step;
    step.rule = v.rule;
    step.objects.push_back("partial:" + write_graph6(partial_.to_graph()));
    for (const auto& o : v.objects) step.objects.push_back(o);
    if (skel_.even && !profile_ids_.empty()) {
      std::vector<int> quotas;
      for (int id : profile_ids_) quotas.push_back(quota_[id]);
      step.objects.push_back("quotas:" + csv(quotas));
    }
    if (private_model) step.objects.push_back("deferred:" + csv(deferred));
    step.values = v.values;
    step.conclusion = v.conclusion;
    trace(std::move(step));
  }

  void kill(const Violation& v) { kill(v, {}, false); }

  // --- scripted expansion --------------------------------------------------
  // Prefix replay expands exactly the scripted child; the collect cutoff
  // records the pending subtree instead of expanding it.
  enum class Gate { Explore, Scripted, Cut };
  Gate gate(Move* scripted) {
    if (script_pos_ < script_.size()) {
      *scripted = script_[script_pos_++];
      return Gate::Scripted;
    }
    if (collect_depth_ >= 0 &&
        static_cast<int>(history_.size()) >= collect_depth_) {
      frontier_out_->push_back(history_);
      return Gate::Cut;
    }
    return Gate::Explore;
  }

  struct ScopedMove {
    Engine* e;
    ScopedMove(Engine* engine, Move m) : e(engine) {
      e->history_.push_back(std::move(m));
    }
    ~ScopedMove() { e->history_.pop_back(); }
  };

  // --- root-path quota accounting -----------------------------------------
  std::int64_t remaining_weight() const {
    // a future up contributes quota-1, and lands under a given subtree at
    // most once per profile vertex (its ups go to distinct branches)
    std::int64_t total = 0;
    for (int id : profile_ids_)
      if (updeg_[id] < quota_[id]) total += quota_[id] - 1;
    return total;
  }

  std::int64_t max_im1() const {
    std::int64_t best = 0;
    for (int id : profile_ids_)
      if (updeg_[id] < quota_[id])
        best = std::max<std::int64_t>(best, quota_[id] - 1);
    return best;
  }

  // target (exact) or cap for S(x) at a tree layer
  std::pair<std::int64_t, bool> tree_quota(int layer) const {
    if (layer == 1) return {partial_.lambda, true};
    if (layer == 2 && partial_.p3_exact) return {partial_.lambda / 2, true};
    return {ipow(skel_.k - 1, partial_.u - (layer + 1)), false};
  }

  std::int64_t free_slots_for_inner(int x) const {
    std::int64_t total = 0;
    for (int v : outer_ids_)
      if (skel_.under(v, x)) total += skel_.k - partial_.deg[v];
    return total;
  }

  std::optional<Violation> bump_subtotals(int leaf, std::int64_t weight,
                                          std::int64_t slots_used) {
    for (int x = leaf; x != -1 && skel_.layer[x] >= 1; x = skel_.parent[x]) {
      subtotal_[x] += weight;
      free_slots_[x] -= slots_used;
      assigned_under_[x] += slots_used;
      const auto [target, exact] = tree_quota(skel_.layer[x]);
      if (subtotal_[x] > target) {
        return Violation{
            exact ? "branch_quota_exceeded" : "tree_quota_exceeded",
            {vertex_tag(x)},
            {subtotal_[x], target},
            "root-path cycle accounting exceeds its cap"};
      }
      if (exact) {
        const std::int64_t max_future =
            skel_.even
                ? std::min(free_slots_[x] * max_im1(), remaining_weight())
                : free_slots_for_inner(x);
        if (subtotal_[x] + max_future < target) {
          return Violation{
              "branch_quota_unreachable",
              {vertex_tag(x)},
              {subtotal_[x], max_future, target},
              "root-path cycle accounting cannot reach its required total"};
        }
      }
    }
    return std::nullopt;
  }

  // --- checkpoint: support-complete exactness and capacity -----------------
  std::optional<Violation> checkpoint(const std::vector<int>& declared,
                                      bool private_model) {
    const auto model =
        private_model
            ? Model::declared(partial_.n, partial_.adj.data(), declared)
            : Model::shared(skel_.k, partial_.n, partial_.adj.data(),
                            partial_.deg.data());
    if (!model) return std::nullopt;  // too large to model; stay conservative

    const std::int64_t lambda = partial_.lambda;
    for (const Edge& e : partial_.edge_list) {
      const std::int64_t have = partial_.cnt_at(e.a, e.b);
      if (have == lambda) continue;
      if (!model->future_path_exists(e.a, e.b, skel_.g - 1, 0)) {
        return Violation{"edge_cycle_deficit",
                         {edge_tag(e.a, e.b)},
                         {have, lambda},
                         "an edge's girth-cycle support is complete but "
                         "below lambda"};
      }
      const std::int64_t capacity =
          std::min(engine_side(e.a, e.b), engine_side(e.b, e.a));
      if (have + capacity < lambda) {
        return Violation{"edge_capacity_shortfall",
                         {edge_tag(e.a, e.b)},
                         {have, capacity, lambda},
                         "an edge cannot reach lambda girth cycles even "
                         "with every remaining option"};
      }
    }
    if (partial_.p3_exact) {
      const std::int64_t t = lambda / 2;
      for (int y = 0; y < partial_.n; ++y) {
        std::uint64_t scan_a = partial_.adj[y];
        while (scan_a) {
          const int a = std::countr_zero(scan_a);
          scan_a &= scan_a - 1;
          std::uint64_t scan_b = partial_.adj[y] & ~((2ULL << a) - 1);
          while (scan_b) {
            const int b = std::countr_zero(scan_b);
            scan_b &= scan_b - 1;
            const std::int64_t have = partial_.cnt3_at(y, a, b);
            if (have >= t) continue;
            if (!model->future_path_exists(a, b, skel_.g - 2, 1ULL << y)) {
              return Violation{
                  "p3_deficit",
                  {path_tag({a, y, b})},
                  {have, t},
                  "a 3-vertex path's cycle support is complete but below "
                  "the exact requirement"};
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  std::int64_t engine_side(int a, int b) const {
    std::vector<int> neighbors;
    std::uint64_t scan = partial_.adj[a];
    while (scan) {
      neighbors.push_back(std::countr_zero(scan));
      scan &= scan - 1;
    }
    return side_capacity(
        skel_.k, partial_.lambda, partial_.p3cap, a, b, partial_.deg[a],
        neighbors, [&](int y) { return partial_.cnt3_at(a, y, b); },
        [&](int y) { return partial_.cnt_at(a, y); });
  }

  // --- phase A: realize the profile (even girth) ---------------------------
  bool leaf_is_canonical(int leaf) const {
    // Untouched sibling subtrees are interchangeable by a tree automorphism,
    // so a candidate inside an untouched subtree is skipped whenever an
    // earlier untouched sibling exists at any level.
    for (int x = leaf; skel_.layer[x] >= 1; x = skel_.parent[x]) {
      if (assigned_under_[x] != 0) continue;
      for (int s : skel_.children[skel_.parent[x]]) {
        if (s >= x) break;
        if (assigned_under_[s] == 0) return false;
      }
    }
    return true;
  }

  void phase_a(std::size_t vi, int ordinal, bool still_equal) {
    if (out_of_budget()) return;
    if (vi == profile_ids_.size()) {
      for (int b : skel_.children[0]) {
        if (subtotal_[b] != partial_.lambda) {
          kill(Violation{"branch_quota_unreachable",
                         {vertex_tag(b)},
                         {subtotal_[b], 0, partial_.lambda},
                         "a branch misses its exact cycle total"});
          return;
        }
      }
      if (auto v = checkpoint({}, false)) {
        kill(*v);
        return;
      }
      phase_b(-1);
      return;
    }
    const int w = profile_ids_[vi];
    if (ordinal == quota_[w]) {
      // next profile vertex; equal quotas order the target lists
      const bool tie = vi + 1 < profile_ids_.size() &&
                       quota_[profile_ids_[vi + 1]] == quota_[w];
      phase_a(vi + 1, 0, tie);
      return;
    }

    Move scripted;
    const Gate mode = gate(&scripted);
    if (mode == Gate::Cut) return;

    int children = 0;
    const int prev = vi > 0 ? profile_ids_[vi - 1] : -1;
    const int last_branch =
        ordinal > 0 ? skel_.branch_of(targets_[w][ordinal - 1]) : -1;
    const std::size_t steps_before = result_.trace.size();
    for (int leaf = 0; leaf < skel_.tree_size; ++leaf) {
      if (skel_.layer[leaf] != skel_.inner_layers) continue;
      if (free_slots_[leaf] <= 0) continue;
      if (skel_.branch_of(leaf) <= last_branch) continue;
      if (still_equal && prev >= 0 &&
          ordinal < static_cast<int>(targets_[prev].size()) &&
          leaf < targets_[prev][ordinal])
        continue;
      if (!leaf_is_canonical(leaf)) continue;
      if (mode == Gate::Scripted &&
          (scripted.kind != Move::AssignUp || scripted.a != w ||
           scripted.b != leaf))
        continue;
      if (!partial_.dist_at_least(w, leaf, skel_.g - 1)) continue;

      ++children;
      ++result_.nodes;
      const Partial::Frame frame = partial_.open_frame();
      const auto save_sub = subtotal_;
      const auto save_free = free_slots_;
      const auto save_assigned = assigned_under_;
      targets_[w].push_back(leaf);
      ++updeg_[w];
      std::optional<Violation> violation = partial_.add_edge_checked(w, leaf);
      if (!violation) violation = bump_subtotals(leaf, quota_[w] - 1, 1);
      if (violation) {
        kill(*violation);
      } else {
        const bool next_equal =
            still_equal && prev >= 0 &&
            ordinal < static_cast<int>(targets_[prev].size()) &&
            leaf == targets_[prev][ordinal];
        ScopedMove sm(this, Move{Move::AssignUp, w, leaf, {}});
        phase_a(vi, ordinal + 1, next_equal);
      }
      partial_.close_frame(frame);
      subtotal_ = save_sub;
      free_slots_ = save_free;
      assigned_under_ = save_assigned;
      --updeg_[w];
      targets_[w].pop_back();
      if (mode == Gate::Scripted) break;
      if (result_.budget_hit) return;
    }
    if (children == 0 && mode == Gate::Explore &&
        result_.trace.size() == steps_before) {
      kill(Violation{"no_legal_assignment",
                     {vertex_tag(w)},
                     {},
                     "no admissible target remains for a profile vertex"});
    }
  }

  // --- phase B: edges inside the outer layer -------------------------------
  std::int64_t inner_target() const {
    // odd girth forces the outer edge count exactly; even girth leaves it
    // free (those edges are optional chords between profile vertices)
    return skel_.even ? -1 : skel_.k * partial_.lambda / 2;
  }

  std::int64_t inner_free_capacity() const {
    std::int64_t total = 0;
    for (int v : outer_ids_) total += skel_.k - partial_.deg[v];
    return total;
  }

  std::size_t first_cross_index() const {
    for (std::size_t i = 0; i < pair_candidates_.size(); ++i) {
      const auto [a, b] = pair_candidates_[i];
      if (skel_.branch_of(a) != skel_.branch_of(b)) return i;
    }
    return pair_candidates_.size();
  }

  void phase_b(int last_idx) {
    if (out_of_budget()) return;
    const std::int64_t target = inner_target();

    Move scripted;
    const Gate mode = gate(&scripted);
    if (mode == Gate::Cut) return;

    int children = 0;
    const std::size_t steps_before = result_.trace.size();

    if (target < 0 || inner_added_ == target) {
      if (mode != Gate::Scripted || scripted.kind == Move::FinalizeInner) {
        ++children;
        ++result_.nodes;
        if (auto v = checkpoint({}, false)) {
          kill(*v);
        } else {
          ScopedMove sm(this, Move{Move::FinalizeInner, -1, -1, {}});
          endgame(stub_owners(), {}, false, 1, true);
        }
        if (mode == Gate::Scripted) return;
        if (result_.budget_hit) return;
      }
    }

    if (target < 0 || inner_added_ < target) {
      for (std::size_t idx = static_cast<std::size_t>(last_idx + 1);
           idx < pair_candidates_.size(); ++idx) {
        const auto [a, b] = pair_candidates_[idx];
        if (partial_.deg[a] >= skel_.k || partial_.deg[b] >= skel_.k)
          continue;
        if (mode == Gate::Scripted &&
            (scripted.kind != Move::AddInner || scripted.a != a ||
             scripted.b != b))
          continue;
        // on the untouched odd-girth tree every cross pair is equivalent
        // under a tree automorphism; expand only the first
        if (!skel_.even && inner_added_ == 0 && idx > first_cross_index())
          break;
        if (!partial_.dist_at_least(a, b, skel_.g - 1)) continue;

        ++children;
        ++result_.nodes;
        const Partial::Frame frame = partial_.open_frame();
        const auto save_sub = subtotal_;
        const auto save_free = free_slots_;
        const auto save_assigned = assigned_under_;
        ++inner_added_;
        std::optional<Violation> violation = partial_.add_edge_checked(a, b);
        if (!violation && !skel_.even) {
          violation = bump_subtotals(a, 1, 0);
          if (!violation) violation = bump_subtotals(b, 1, 0);
          if (!violation && target >= 0) {
            const std::int64_t max_future = inner_free_capacity() / 2;
            if (inner_added_ + max_future < target) {
              violation = Violation{
                  "total_quota_unreachable",
                  {},
                  {inner_added_, max_future, target},
                  "the forced outer-edge total is no longer reachable"};
            }
          }
        }
        if (violation) {
          kill(*violation);
        } else {
          ScopedMove sm(this, Move{Move::AddInner, a, b, {}});
          phase_b(static_cast<int>(idx));
        }
        partial_.close_frame(frame);
        subtotal_ = save_sub;
        free_slots_ = save_free;
        assigned_under_ = save_assigned;
        --inner_added_;
        if (mode == Gate::Scripted) break;
        if (result_.budget_hit) return;
      }
    }

    if (children == 0 && mode == Gate::Explore &&
        result_.trace.size() == steps_before) {
      kill(Violation{"no_legal_assignment",
                     {},
                     {inner_added_, target},
                     "no admissible outer-layer extension remains"});
    }
  }

  // --- endgame: fresh outside vertices -------------------------------------
  std::vector<int> stub_owners() const {
    std::vector<int> owners;
    for (int v = 0; v < partial_.n; ++v)
      for (int s = partial_.deg[v]; s < skel_.k; ++s) owners.push_back(v);
    return owners;
  }

  void endgame(std::vector<int> pending, std::vector<int> deferred,
               bool grouped_this_level, int level, bool entry) {
    if (out_of_budget()) return;
    if (pending.empty()) {
      if (entry && options_.on_inner_survivor)
        options_.on_inner_survivor(partial_.to_graph(), pending);
      if (deferred.empty()) {
        resolve_closure();
        return;
      }
      if (!grouped_this_level) {
        resolve_terminal(deferred);
        return;
      }
      if (level >= options_.max_outside_levels) {
        result_.unknown = true;
        trace({"level_cap_reached",
               {"partial:" + write_graph6(partial_.to_graph())},
               {level},
               "outside structure grew past the exploration cap"});
        return;
      }
      endgame(stub_owners(), {}, false, level + 1, false);
      return;
    }

    Move scripted;
    const Gate mode = gate(&scripted);
    if (mode == Gate::Cut) return;
    if (entry && mode == Gate::Explore && options_.on_inner_survivor)
      options_.on_inner_survivor(partial_.to_graph(), pending);

    const int s = pending.front();
    const std::vector<int> rest(pending.begin() + 1, pending.end());

    // candidate partners: at most one stub per distinct owner
    std::vector<int> partners;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == s) continue;
      if (i > 0 && rest[i] == rest[i - 1]) continue;
      partners.push_back(static_cast<int>(i));
    }

    int children = 0;
    const std::size_t steps_before = result_.trace.size();

    // group s with 1..k-1 partners at a fresh outside vertex
    const int max_extra =
        std::min<int>(skel_.k - 1, static_cast<int>(partners.size()));
    for (int take = 1; take <= max_extra; ++take) {
      std::vector<int> pick;
      auto choose = [&](auto&& self, std::size_t from) -> void {
        if (result_.budget_hit) return;
        if (static_cast<int>(pick.size()) == take) {
          std::vector<int> group;
          group.reserve(pick.size());
          for (int pi : pick) group.push_back(rest[pi]);
          if (mode == Gate::Scripted &&
              (scripted.kind != Move::Materialize || scripted.a != s ||
               scripted.group != group))
            return;
          attempt_group(s, group, pick, rest, deferred, level, &children);
          return;
        }
        for (std::size_t i = from; i < partners.size(); ++i) {
          const int idx = partners[i];
          bool dup = false;
          for (int pi : pick)
            if (rest[pi] == rest[idx]) dup = true;
          if (dup) continue;
          pick.push_back(idx);
          self(self, i + 1);
          pick.pop_back();
        }
      };
      choose(choose, 0);
      if (result_.budget_hit) return;
    }

    // defer: declare that s's outside endpoint is shared with no other stub
    if (mode != Gate::Scripted || scripted.kind == Move::Defer) {
      ++children;
      ++result_.nodes;
      std::vector<int> deferred2 = deferred;
      deferred2.push_back(s);
      ScopedMove sm(this, Move{Move::Defer, s, -1, {}});
      endgame(rest, std::move(deferred2), grouped_this_level, level, false);
    }

    if (children == 0 && mode == Gate::Explore &&
        result_.trace.size() == steps_before) {
      kill(Violation{"no_legal_assignment",
                     {vertex_tag(s)},
                     {},
                     "no admissible outside attachment remains"});
    }
  }

  void attempt_group(int s, const std::vector<int>& group,
                     const std::vector<int>& picked_indices,
                     const std::vector<int>& rest,
                     const std::vector<int>& deferred, int level,
                     int* children) {
    std::vector<int> members = {s};
    members.insert(members.end(), group.begin(), group.end());
    // a common fresh neighbor puts members at distance 2 of each other
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (!partial_.dist_at_least(members[i], members[j], skel_.g - 2))
          return;
    if (partial_.n >= kMaxN) {
      result_.unknown = true;
      return;
    }
    ++*children;
    ++result_.nodes;
    const Partial::Frame frame = partial_.open_frame();
    const int w = partial_.add_vertex();
    std::optional<Violation> violation;
    for (int owner : members) {
      violation = partial_.add_edge_checked(w, owner);
      if (violation) break;
    }
    if (!violation) violation = checkpoint({}, false);
    if (violation) {
      kill(*violation);
    } else {
      std::vector<int> remaining;
      const std::set<int> used(picked_indices.begin(), picked_indices.end());
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (!used.count(static_cast<int>(i))) remaining.push_back(rest[i]);
      ScopedMove sm(this, Move{Move::Materialize, s, -1, group});
      endgame(std::move(remaining), deferred, true, level, false);
    }
    partial_.close_frame(frame);
  }

  void resolve_closure() {
    const Graph closed = partial_.to_graph();
    const auto params = is_egr(closed);
    if (params && params->k == skel_.k && params->g == skel_.g &&
        params->lambda == partial_.lambda) {
      const auto fact = known_nonexistence_oracle(closed.order(), skel_.k,
                                                  skel_.g, partial_.lambda);
      if (fact && !fact->exists) {
        kill(Violation{"oracle_nonexistence",
                       {},
                       {closed.order(), skel_.k, skel_.g, partial_.lambda},
                       "a closed completion matches a published "
                       "nonexistence result: " +
                           fact->source});
        return;
      }
      const std::string canonical = canonical_form(closed).canonical_string;
      if (result_.witnesses.insert(canonical).second) {
        trace({"witness_found",
               {"partial:" + canonical},
               {closed.order()},
               "a completion closed into a verified graph"});
      }
      return;
    }
    kill(Violation{"closure_not_egr",
                   {},
                   {closed.order()},
                   "a closed completion fails edge-girth-regularity"});
  }

  void resolve_terminal(const std::vector<int>& deferred) {
    // Every remaining stub is declared to meet a distinct outside endpoint.
    // Owners holding several stubs move to the outside of a candidate cut
    // (their existing edges replace their stubs as cut items); the remaining
    // declared stubs are abstract cut edges.
    std::map<int, int> multiplicity;
    for (int owner : deferred) ++multiplicity[owner];
    std::set<int> outside;
    for (const auto& [owner, count] : multiplicity)
      if (count >= 2) outside.insert(owner);

    std::vector<std::string> items;
    std::vector<Edge> concrete;
    std::vector<int> abstract_owners;
    for (const auto& [owner, count] : multiplicity) {
      if (count >= 2) continue;
      abstract_owners.push_back(owner);
      items.push_back("cutstub:" + std::to_string(owner));
    }
    for (const Edge& e : partial_.edge_list) {
      const bool a_out = outside.count(e.a) > 0;
      const bool b_out = outside.count(e.b) > 0;
      if (a_out == b_out) continue;
      concrete.push_back(e);
      items.push_back("cutedge:" + std::to_string(e.a) + "-" +
                      std::to_string(e.b));
    }
    bool nonincident = true;
    for (int owner : abstract_owners)
      for (const Edge& e : concrete)
        if (e.a == owner || e.b == owner) nonincident = false;
    for (std::size_t i = 0; i < concrete.size() && nonincident; ++i)
      for (std::size_t j = i + 1; j < concrete.size(); ++j) {
        const Edge& e = concrete[i];
        const Edge& f = concrete[j];
        if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b)
          nonincident = false;
      }
    const std::int64_t t =
        static_cast<std::int64_t>(abstract_owners.size() + concrete.size());
    const std::int64_t cut_bound =
        skel_.g >= 5
            ? (t - 1) * ipow(skel_.k - 1, ceil_div(skel_.g - 5, 2))
            : 0;
    const bool cut_applies =
        nonincident && t >= 1 &&
        (t == 1 || (skel_.g >= 5 && partial_.lambda > cut_bound));
    if (cut_applies) {
      Violation v;
      v.rule = "cut_disconnects";
      v.objects = items;
      const std::vector<int> outside_list(outside.begin(), outside.end());
      v.objects.push_back("outside:" + csv(outside_list));
      v.values = {t, partial_.lambda, t == 1 ? 0 : cut_bound};
      v.conclusion =
          t == 1 ? "a single remaining edge would be a bridge, but every "
                   "edge must lie on girth cycles"
                 : "pairwise non-incident edges would disconnect the graph "
                   "against the cut bound";
      kill(v, deferred, true);
      return;
    }

    if (auto v = checkpoint(deferred, true)) {
      kill(*v, deferred, true);
      return;
    }

    result_.unknown = true;
    trace({"unresolved_outside",
           {"partial:" + write_graph6(partial_.to_graph()),
            "deferred:" + csv(deferred)},
           {static_cast<std::int64_t>(deferred.size())},
           "no rule resolves the declared outside structure"});
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// public driver: two-stage execution, deterministic in the thread count
// ---------------------------------------------------------------------------

CaseVerdict local_completion_search(int k, int g, std::int64_t lambda,
                                    const std::optional<LayerProfile>& profile,
                                    int depth,
                                    const LocalSearchOptions& options) {
  CaseVerdict verdict;
  verdict.params = EgrParams{0, k, g, lambda};
  verdict.profile = profile;

  if (const auto reject = feasibility_prefilter(k, g, lambda)) {
    verdict.status = CaseStatus::Infeasible;
    verdict.trace.push_back(
        {"prefilter_reject",
         {"partial:" + write_graph6(Graph::from_edges(1, {}))},
         {k, g, lambda},
         *reject});
    return verdict;
  }
  if (lambda > 30000)
    throw error("local search: lambda too large for the cycle counters");
  const bool even = g % 2 == 0;
  const int expected_depth = even ? g / 2 : (g - 1) / 2;
  if (depth != expected_depth)
    throw not_applicable(
        "local search: depth must be g/2 for even girth and (g-1)/2 for odd "
        "girth");
  if (even && !profile)
    throw not_applicable("local search: even girth requires a layer profile");
  if (!even && profile)
    throw not_applicable("local search: profiles apply to even girth only");
  if (profile) {
    if (profile->k != k || profile->t != g / 2 ||
        static_cast<int>(profile->counts.size()) != k)
      throw bad_candidate("local search: malformed profile");
    std::int64_t edges = 0, cycles = 0;
    for (int i = 1; i <= k; ++i) {
      if (profile->counts[i - 1] < 0)
        throw bad_candidate("local search: negative profile entry");
      edges += i * profile->counts[i - 1];
      cycles += static_cast<std::int64_t>(i) * (i - 1) / 2 *
                profile->counts[i - 1];
    }
    if (edges != static_cast<std::int64_t>(k) * ipow(k - 1, g / 2 - 1) ||
        cycles != k * lambda / 2)
      throw bad_candidate(
          "local search: profile fails the counting identities");
  }

  const Skeleton skel = build_skeleton(k, g, depth);
  {
    std::int64_t total = skel.tree_size;
    if (profile)
      for (const auto c : profile->counts) total += c;
    if (total > kMaxN)
      throw error("local search: forced structure exceeds the size limit");
  }

  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(
                             options.budget.max_seconds));

  // Stage 1 expands to a fixed shallow move depth and collects the pending
  // frontier.  The split and the per-subtree budgets depend only on the
  // budget and the frontier, so any thread count traverses the same tree.
  constexpr int kFrontierDepth = 4;
  std::vector<std::vector<Move>> frontier;
  Engine stage1(skel, lambda, profile, options, options.budget.max_nodes,
                deadline);
  EngineResult merged = stage1.run({}, kFrontierDepth, &frontier);

  if (!frontier.empty() && !merged.budget_hit) {
    const std::int64_t share = std::max<std::int64_t>(
        1, (options.budget.max_nodes - merged.nodes) /
               static_cast<std::int64_t>(frontier.size()));
    std::vector<EngineResult> results(frontier.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= frontier.size()) break;
        Engine engine(skel, lambda, profile, options, share, deadline);
        results[i] = engine.run(frontier[i], -1, nullptr);
      }
    };
    const int thread_count = std::max(
        1, std::min<int>(options.threads, static_cast<int>(frontier.size())));
    if (thread_count <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(thread_count);
      for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (auto& r : results) {
      for (auto& step : r.trace) {
        if (static_cast<std::int64_t>(merged.trace.size()) >=
            options.max_trace_steps) {
          if (!merged.trace_truncated) {
            merged.trace_truncated = true;
            merged.trace.push_back(
                {"trace_truncated", {}, {}, "further deductions omitted"});
          }
          break;
        }
        merged.trace.push_back(std::move(step));
        if (merged.trace.back().rule == "trace_truncated") {
          merged.trace_truncated = true;
          break;
        }
      }
      merged.witnesses.insert(r.witnesses.begin(), r.witnesses.end());
      merged.nodes += r.nodes;
      merged.unknown |= r.unknown;
      merged.budget_hit |= r.budget_hit;
    }
  }

  verdict.nodes_expanded = merged.nodes;
  verdict.budget_exhausted = merged.budget_hit;
  verdict.witnesses.assign(merged.witnesses.begin(), merged.witnesses.end());
  verdict.witness_count = static_cast<std::int64_t>(verdict.witnesses.size());
  verdict.trace = std::move(merged.trace);
  if (merged.budget_hit &&
      static_cast<std::int64_t>(verdict.trace.size()) <
          options.max_trace_steps) {
    verdict.trace.push_back({"budget_exhausted",
                             {},
                             {merged.nodes},
                             "the node or time budget ran out"});
  }
  if (verdict.witness_count > 0)
    verdict.status = CaseStatus::Feasible;
  else if (merged.unknown || merged.budget_hit)
    verdict.status = CaseStatus::Unknown;
  else
    verdict.status = CaseStatus::Infeasible;
  if (verdict.status == CaseStatus::Infeasible && verdict.trace.empty()) {
    // unreachable by construction; keep the documented invariant anyway
    verdict.trace.push_back(
        {"no_legal_assignment", {}, {}, "the search space was empty"});
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// trace replay: re-derive a recorded deduction from its objects
// ---------------------------------------------------------------------------

namespace {

struct ParsedStep {
  Graph partial;
  bool has_partial = false;
  std::vector<Edge> edges;              // edge:a-b objects, in order
  std::vector<std::vector<int>> paths;  // path:a-b-c objects
  std::vector<int> vertices;            // vertex:v objects
  std::vector<Edge> cut_edges;          // cutedge:a-b objects
  std::vector<int> cut_stubs;           // cutstub:v objects
  std::vector<int> outside;             // outside:v,w
  std::vector<int> deferred;            // deferred:v,w (with multiplicity)
  bool has_deferred = false;
  std::vector<int> quotas;              // quotas:i,i
  bool has_quotas = false;
};

std::optional<ParsedStep> parse_step(const TraceStep& step) {
  ParsedStep out;
  for (const auto& object : step.objects) {
    if (auto s = strip_prefix(object, "partial:")) {
      out.partial = parse_graph6(*s);
      out.has_partial = true;
    } else if (auto e = strip_prefix(object, "edge:")) {
      const auto ab = parse_csv(*e, '-');
      if (ab.size() != 2) return std::nullopt;
      out.edges.push_back(
          Edge{std::min(ab[0], ab[1]), std::max(ab[0], ab[1])});
    } else if (auto p = strip_prefix(object, "path:")) {
      out.paths.push_back(parse_csv(*p, '-'));
    } else if (auto v = strip_prefix(object, "vertex:")) {
      out.vertices.push_back(std::stoi(*v));
    } else if (auto ce = strip_prefix(object, "cutedge:")) {
      const auto ab = parse_csv(*ce, '-');
      if (ab.size() != 2) return std::nullopt;
      out.cut_edges.push_back(
          Edge{std::min(ab[0], ab[1]), std::max(ab[0], ab[1])});
    } else if (auto cs = strip_prefix(object, "cutstub:")) {
      out.cut_stubs.push_back(std::stoi(*cs));
    } else if (auto o = strip_prefix(object, "outside:")) {
      out.outside = parse_csv(*o);
    } else if (auto d = strip_prefix(object, "deferred:")) {
      out.deferred = parse_csv(*d);
      out.has_deferred = true;
    } else if (auto q = strip_prefix(object, "quotas:")) {
      out.quotas = parse_csv(*q);
      out.has_quotas = true;
    } else {
      return std::nullopt;  // unknown object kind
    }
  }
  return out;
}

// placeholder model over a replayed partial graph
std::optional<Model> replay_model(const Graph& p, int k,
                                  const ParsedStep& parsed) {
  if (p.order() > kMaxN) return std::nullopt;
  std::array<std::uint64_t, kMaxN> rows{};
  std::array<int, kMaxN> degrees{};
  for (int v = 0; v < p.order(); ++v) {
    rows[v] = p.row(v)[0];
    degrees[v] = p.degree(v);
  }
  if (parsed.has_deferred)
    return Model::declared(p.order(), rows.data(), parsed.deferred);
  return Model::shared(k, p.order(), rows.data(), degrees.data());
}

bool replay_quota_step(const EgrParams& params, const TraceStep& step,
                       const ParsedStep& parsed) {
  const int k = params.k;
  const int g = params.g;
  const std::int64_t lambda = params.lambda;
  const bool even = g % 2 == 0;
  const int depth = even ? g / 2 : (g - 1) / 2;
  const Skeleton skel = build_skeleton(k, g, depth);
  const Graph& p = parsed.partial;
  if (parsed.vertices.empty()) return false;
  const int x = parsed.vertices.front();
  if (x < 1 || x >= skel.tree_size) return false;
  // the partial must contain the forced tree under the construction labels
  if (p.order() < skel.tree_size) return false;
  for (int v = 1; v < skel.tree_size; ++v)
    if (!p.has_edge(skel.parent[v], v)) return false;

  const bool p3_exact = k == 3 && lambda % 2 == 0;
  const int u = ceil_div(g + 3, 2);
  const int layer = skel.layer[x];
  std::int64_t target = 0;
  bool exact = false;
  if (layer == 1) {
    target = lambda;
    exact = true;
  } else if (layer == 2 && p3_exact) {
    target = lambda / 2;
    exact = true;
  } else {
    target = ipow(k - 1, u - (layer + 1));
  }

  std::int64_t s_value = 0;
  std::int64_t max_future = 0;
  if (even) {
    if (!parsed.has_quotas) return false;
    const int profile_count = static_cast<int>(parsed.quotas.size());
    if (p.order() != skel.tree_size + profile_count) return false;
    auto quota_of = [&](int id) { return parsed.quotas[id - skel.tree_size]; };
    std::int64_t free_under = 0;
    for (int leaf = 0; leaf < skel.tree_size; ++leaf) {
      if (skel.layer[leaf] != skel.inner_layers || !skel.under(leaf, x))
        continue;
      std::int64_t ups_here = 0;
      for (int w = skel.tree_size; w < p.order(); ++w)
        if (p.has_edge(leaf, w)) {
          ++ups_here;
          s_value += quota_of(w) - 1;
        }
      free_under += (k - 1) - ups_here;
    }
    std::int64_t remaining = 0, largest = 0;
    for (int w = skel.tree_size; w < p.order(); ++w) {
      if (p.degree(w) < quota_of(w)) {
        remaining += quota_of(w) - 1;
        largest = std::max<std::int64_t>(largest, quota_of(w) - 1);
      }
    }
    max_future = std::min(free_under * largest, remaining);
  } else {
    std::int64_t free_under = 0;
    for (const Edge& e : p.edges()) {
      if (e.b < skel.tree_size && skel.layer[e.a] == skel.inner_layers &&
          skel.layer[e.b] == skel.inner_layers) {
        if (skel.under(e.a, x) || skel.under(e.b, x)) ++s_value;
      }
    }
    for (int v = 0; v < skel.tree_size; ++v)
      if (skel.layer[v] == skel.inner_layers && skel.under(v, x))
        free_under += k - p.degree(v);
    max_future = free_under;
  }

  if (step.rule == "branch_quota_exceeded")
    return exact &&
           step.values == std::vector<std::int64_t>{s_value, target} &&
           s_value > target;
  if (step.rule == "tree_quota_exceeded")
    return !exact &&
           step.values == std::vector<std::int64_t>{s_value, target} &&
           s_value > target;
  if (step.rule == "branch_quota_unreachable")
    return exact &&
           step.values ==
               std::vector<std::int64_t>{s_value, max_future, target} &&
           s_value + max_future < target;
  return false;
}

}  // namespace

bool replay_trace_step(const EgrParams& params,
                       const std::optional<LayerProfile>& profile,
                       const TraceStep& step) {
  (void)profile;  // everything needed is recorded in the step's objects
  const int k = params.k;
  const int g = params.g;
  const std::int64_t lambda = params.lambda;

  // rules with no structural claim to re-derive
  if (step.rule == "no_legal_assignment" || step.rule == "budget_exhausted" ||
      step.rule == "trace_truncated" || step.rule == "level_cap_reached" ||
      step.rule == "unresolved_outside")
    return true;
  if (step.rule == "prefilter_reject")
    return feasibility_prefilter(k, g, lambda).has_value();

  auto parsed_opt = parse_step(step);
  if (!parsed_opt || !parsed_opt->has_partial) return false;
  const ParsedStep& parsed = *parsed_opt;
  const Graph& p = parsed.partial;

  if (step.rule == "edge_cycle_budget_exceeded") {
    if (parsed.edges.empty() || step.values.size() != 2) return false;
    const std::int64_t observed =
        count_g_cycles_through_edge(p, parsed.edges.front(), g);
    return observed == step.values[0] && step.values[1] == lambda &&
           observed > lambda;
  }

  if (step.rule == "path_budget_exceeded") {
    if (parsed.paths.empty() || step.values.size() != 2) return false;
    const auto& path = parsed.paths.front();
    const std::int64_t observed = count_g_cycles_through_path(p, path, g);
    const std::int64_t bound =
        path_cap(k, g, lambda, static_cast<int>(path.size()));
    return observed == step.values[0] && step.values[1] == bound &&
           observed > bound;
  }

  if (step.rule == "pair_budget_exceeded") {
    if (parsed.edges.size() != 2 || step.values.size() != 2 || g < 5)
      return false;
    const Edge e = parsed.edges[0];
    const Edge f = parsed.edges[1];
    if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) return false;
    std::int64_t observed = 0;
    for (const auto& cycle : enumerate_cycles_of_length(p, g)) {
      bool has_e = false, has_f = false;
      const int len = static_cast<int>(cycle.size());
      for (int i = 0; i < len; ++i) {
        const Edge ce{std::min(cycle[i], cycle[(i + 1) % len]),
                      std::max(cycle[i], cycle[(i + 1) % len])};
        if (ce == e) has_e = true;
        if (ce == f) has_f = true;
      }
      if (has_e && has_f) ++observed;
    }
    const std::int64_t bound = ipow(k - 1, ceil_div(g - 5, 2));
    return observed == step.values[0] && step.values[1] == bound &&
           observed > bound;
  }

  if (step.rule == "edge_cycle_deficit") {
    if (parsed.edges.empty() || step.values.size() != 2) return false;
    const Edge e = parsed.edges.front();
    const std::int64_t observed = count_g_cycles_through_edge(p, e, g);
    if (observed != step.values[0] || step.values[1] != lambda ||
        observed >= lambda)
      return false;
    const auto model = replay_model(p, k, parsed);
    if (!model) return false;
    return !model->future_path_exists(e.a, e.b, g - 1, 0);
  }

  if (step.rule == "p3_deficit") {
    if (parsed.paths.empty() || step.values.size() != 2) return false;
    const auto& path = parsed.paths.front();
    if (path.size() != 3 || k != 3 || lambda % 2 != 0) return false;
    const std::int64_t observed = count_g_cycles_through_path(p, path, g);
    if (observed != step.values[0] || step.values[1] != lambda / 2 ||
        observed >= lambda / 2)
      return false;
    const auto model = replay_model(p, k, parsed);
    if (!model) return false;
    return !model->future_path_exists(path[0], path[2], g - 2,
                                      1ULL << path[1]);
  }

  if (step.rule == "edge_capacity_shortfall") {
    if (parsed.edges.empty() || step.values.size() != 3) return false;
    const Edge e = parsed.edges.front();
    const std::int64_t observed = count_g_cycles_through_edge(p, e, g);
    if (observed != step.values[0] || step.values[2] != lambda) return false;
    const std::int64_t p3cap = path_cap(k, g, lambda, 3);
    auto side = [&](int a, int b) {
      return side_capacity(
          k, lambda, p3cap, a, b, p.degree(a), p.neighbors(a),
          [&](int y) {
            return count_g_cycles_through_path(p, {y, a, b}, g);
          },
          [&](int y) {
            return count_g_cycles_through_edge(
                p, Edge{std::min(a, y), std::max(a, y)}, g);
          });
    };
    const std::int64_t capacity = std::min(side(e.a, e.b), side(e.b, e.a));
    return capacity == step.values[1] && observed + capacity < lambda;
  }

  if (step.rule == "branch_quota_exceeded" ||
      step.rule == "tree_quota_exceeded" ||
      step.rule == "branch_quota_unreachable")
    return replay_quota_step(params, step, parsed);

  if (step.rule == "total_quota_unreachable") {
    if (g % 2 == 0 || step.values.size() != 3) return false;
    const Skeleton skel = build_skeleton(k, g, (g - 1) / 2);
    if (p.order() < skel.tree_size) return false;
    for (int v = 1; v < skel.tree_size; ++v)
      if (!p.has_edge(skel.parent[v], v)) return false;
    std::int64_t added = 0, free_total = 0;
    for (const Edge& e : p.edges())
      if (e.b < skel.tree_size && skel.layer[e.a] == skel.inner_layers &&
          skel.layer[e.b] == skel.inner_layers)
        ++added;
    for (int v = 0; v < skel.tree_size; ++v)
      if (skel.layer[v] == skel.inner_layers) free_total += k - p.degree(v);
    const std::int64_t target = static_cast<std::int64_t>(k) * lambda / 2;
    return step.values ==
               std::vector<std::int64_t>{added, free_total / 2, target} &&
           added + free_total / 2 < target;
  }

  if (step.rule == "cut_disconnects") {
    if (step.values.size() != 3 || !parsed.has_deferred) return false;
    std::map<int, int> multiplicity;
    for (int owner : parsed.deferred) {
      if (owner < 0 || owner >= p.order()) return false;
      ++multiplicity[owner];
    }
    // stub counts must fit the partial's open degrees
    for (const auto& [owner, count] : multiplicity)
      if (p.degree(owner) + count > k) return false;
    std::set<int> outside;
    for (const auto& [owner, count] : multiplicity)
      if (count >= 2) outside.insert(owner);
    if (std::vector<int>(outside.begin(), outside.end()) != parsed.outside)
      return false;
    // abstract stubs: exactly the single-stub owners
    std::vector<int> expect_stubs;
    for (const auto& [owner, count] : multiplicity)
      if (count == 1) expect_stubs.push_back(owner);
    if (expect_stubs != parsed.cut_stubs) return false;
    // concrete items: exactly the edges crossing the outside set
    std::vector<Edge> crossing;
    for (const Edge& e : p.edges()) {
      const bool a_out = outside.count(e.a) > 0;
      const bool b_out = outside.count(e.b) > 0;
      if (a_out != b_out) crossing.push_back(e);
    }
    if (crossing != parsed.cut_edges) return false;
    for (int owner : parsed.cut_stubs)
      for (const Edge& e : crossing)
        if (e.a == owner || e.b == owner) return false;
    for (std::size_t i = 0; i < crossing.size(); ++i)
      for (std::size_t j = i + 1; j < crossing.size(); ++j) {
        const Edge& e = crossing[i];
        const Edge& f = crossing[j];
        if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b)
          return false;
      }
    const std::int64_t t =
        static_cast<std::int64_t>(parsed.cut_stubs.size() + crossing.size());
    if (t != step.values[0] || step.values[1] != lambda) return false;
    if (t == 1) return step.values[2] == 0;
    if (g < 5) return false;
    const std::int64_t bound = (t - 1) * ipow(k - 1, ceil_div(g - 5, 2));
    return step.values[2] == bound && lambda > bound;
  }

  if (step.rule == "oracle_nonexistence") {
    if (step.values.size() != 4) return false;
    const auto found = is_egr(p);
    if (!found || found->v != step.values[0] || found->k != k ||
        found->g != g || found->lambda != lambda)
      return false;
    const auto fact =
        known_nonexistence_oracle(found->v, found->k, found->g, found->lambda);
    return fact.has_value() && !fact->exists;
  }

  if (step.rule == "closure_not_egr") {
    if (step.values.size() != 1 || p.order() != step.values[0]) return false;
    for (int v = 0; v < p.order(); ++v)
      if (p.degree(v) != k) return false;
    const auto found = is_egr(p);
    return !found || found->k != k || found->g != g ||
           found->lambda != lambda;
  }

  if (step.rule == "witness_found") {
    if (step.values.size() != 1 || p.order() != step.values[0]) return false;
    const auto found = is_egr(p);
    return found.has_value() && found->k == k && found->g == g &&
           found->lambda == lambda;
  }

  return false;  // unknown rule
}

}  // namespace egr
