#include "egr/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace egr {
namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// u from the path-containment lemma: paths measured against girth g.
int path_bound_limit(int g) { return ceil_div(g + 3, 2); }

std::vector<int> normalized_path(const std::vector<int>& p) {
  std::vector<int> r(p.rbegin(), p.rend());
  return std::min(p, r);
}

std::vector<Edge> cycle_edges(const std::vector<int>& cycle) {
  std::vector<Edge> edges;
  const int m = static_cast<int>(cycle.size());
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    int a = cycle[i];
    int b = cycle[(i + 1) % m];
    edges.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  return edges;
}

bool incident(const Edge& e, const Edge& f) {
  return e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
}

// Number of connected components of the subgraph given by the listed
// vertices and edges (isolated listed vertices count).
int subgraph_components(const std::vector<int>& vertices,
                        const std::vector<Edge>& edges) {
  std::map<int, int> comp;
  for (int v : vertices) comp[v] = -1;
  int count = 0;
  std::map<int, std::vector<int>> adj;
  for (const Edge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (int v : vertices) {
    if (comp[v] != -1) continue;
    ++count;
    std::queue<int> q;
    q.push(v);
    comp[v] = count;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x]) {
        if (comp[y] == -1) {
          comp[y] = count;
          q.push(y);
        }
      }
    }
  }
  return count;
}

// Is the graph still connected after removing the given edges?
bool connected_without(const Graph& g, const std::vector<Edge>& removed) {
  if (g.order() == 0) return true;
  auto is_removed = [&](int a, int b) {
    for (const Edge& e : removed) {
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return true;
    }
    return false;
  };
  std::vector<char> seen(g.order(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : g.neighbors(x)) {
      if (!seen[y] && !is_removed(x, y)) {
        seen[y] = 1;
        q.push(y);
        ++reached;
      }
    }
  }
  return reached == g.order();
}

std::int64_t binomial_capped(std::int64_t n, std::int64_t k,
                             std::int64_t cap) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

CheckResult check_vertex_cycle_count(const Graph& g, const EgrParams& params) {
  CheckResult result;
  result.check_name = "vertex_cycle_count";
  const LambdaProfile profile = lambda_profile(g);
  if (!profile.girth_value)
    throw acyclic_graph("cannot count girth cycles in an acyclic graph");
  const std::int64_t target = params.k * params.lambda / 2;
  for (int v = 0; v < g.order(); ++v) {
    if (profile.vertex_counts[v] != target) {
      Witness w;
      w.description = "vertex lies on the wrong number of girth cycles";
      w.vertices = {v};
      w.observed = profile.vertex_counts[v];
      w.bound = target;
      result.witnesses.push_back(std::move(w));
    }
  }
  result.passed = result.witnesses.empty();
  return result;
}

namespace detail {

CheckResult check_cycle_list_intersections(
    const Graph& g, const std::vector<std::vector<int>>& cycles,
    bool odd_mode) {
  (void)g;  // cycles are self-contained; the graph only fixes the universe
  CheckResult result;
  result.check_name = "cycle_intersections";
  std::vector<std::set<int>> vertex_sets;
  std::vector<std::set<Edge>> edge_sets;
  vertex_sets.reserve(cycles.size());
  edge_sets.reserve(cycles.size());
  for (const auto& c : cycles) {
    vertex_sets.emplace_back(c.begin(), c.end());
    auto edges = cycle_edges(c);
    edge_sets.emplace_back(edges.begin(), edges.end());
  }
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      std::vector<int> shared_vertices;
      std::set_intersection(vertex_sets[i].begin(), vertex_sets[i].end(),
                            vertex_sets[j].begin(), vertex_sets[j].end(),
                            std::back_inserter(shared_vertices));
      if (shared_vertices.empty()) continue;
      std::vector<Edge> shared_edges;
      std::set_intersection(edge_sets[i].begin(), edge_sets[i].end(),
                            edge_sets[j].begin(), edge_sets[j].end(),
                            std::back_inserter(shared_edges));
      if (!odd_mode && shared_edges.empty()) continue;
      const int components = subgraph_components(shared_vertices, shared_edges);
      if (components > 1) {
        Witness w;
        w.description = shared_edges.empty()
                            ? "two girth cycles meet in a disconnected vertex set"
                            : "two girth cycles share an edge but their "
                              "intersection is disconnected";
        w.paths = {cycles[i], cycles[j]};
        w.vertices = shared_vertices;
        w.edges = shared_edges;
        w.observed = components;
        w.bound = 1;
        result.witnesses.push_back(std::move(w));
      }
    }
  }
  result.passed = result.witnesses.empty();
  return result;
}

}  // namespace detail

CheckResult check_cycle_intersections(const Graph& g) {
  const auto girth_value = girth(g);
  if (!girth_value) throw acyclic_graph("cycle intersections: no cycle");
  return detail::check_cycle_list_intersections(
      g, enumerate_shortest_cycles(g), *girth_value % 2 == 1);
}

CheckResult check_path_containment_bounds(const Graph& g, int k) {
  CheckResult result;
  result.check_name = "path_containment_bounds";
  const auto girth_value = girth(g);
  if (!girth_value) throw acyclic_graph("path containment: no cycle");
  const int u = path_bound_limit(*girth_value);

  std::map<std::vector<int>, std::int64_t> counts;
  const auto cycles = enumerate_shortest_cycles(g);
  for (const auto& cycle : cycles) {
    const int len = static_cast<int>(cycle.size());
    for (int m = 3; m <= std::min(u, len); ++m) {
      for (int s = 0; s < len; ++s) {
        std::vector<int> path(m);
        for (int i = 0; i < m; ++i) path[i] = cycle[(s + i) % len];
        ++counts[normalized_path(path)];
      }
    }
  }
  for (const auto& [path, count] : counts) {
    const int m = static_cast<int>(path.size());
    const std::int64_t bound = ipow(k - 1, u - m);
    if (count > bound) {
      Witness w;
      w.description = "path lies on too many girth cycles";
      w.paths = {path};
      w.observed = count;
      w.bound = bound;
      result.witnesses.push_back(std::move(w));
    }
  }
  result.passed = result.witnesses.empty();
  return result;
}

CheckResult check_p3_exact(const Graph& g, const EgrParams& params) {
  if (params.k != 3)
    throw not_applicable("p3_exact requires degree 3");
  if (params.lambda % 2 != 0)
    throw not_applicable("p3_exact requires even lambda");
  CheckResult result;
  result.check_name = "p3_exact";
  const auto girth_value = girth(g);
  if (!girth_value) throw acyclic_graph("p3_exact: no cycle");
  const std::int64_t t = params.lambda / 2;

  std::map<std::vector<int>, std::int64_t> counts;
  for (const auto& cycle : enumerate_shortest_cycles(g)) {
    const int len = static_cast<int>(cycle.size());
    for (int s = 0; s < len; ++s) {
      std::vector<int> path = {cycle[s], cycle[(s + 1) % len],
                               cycle[(s + 2) % len]};
      ++counts[normalized_path(path)];
    }
  }
  for (int c = 0; c < g.order(); ++c) {
    const auto& nb = g.neighbors(c);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        std::vector<int> path = {std::min(nb[i], nb[j]), c,
                                 std::max(nb[i], nb[j])};
        const auto it = counts.find(path);
        const std::int64_t observed = it == counts.end() ? 0 : it->second;
        if (observed != t) {
          Witness w;
          w.description = "3-vertex path lies on the wrong number of cycles";
          w.paths = {path};
          w.observed = observed;
          w.bound = t;
          result.witnesses.push_back(std::move(w));
        }
      }
    }
  }
  result.passed = result.witnesses.empty();
  return result;
}

CheckResult check_nonincident_edge_bound(const Graph& g, int k) {
  const auto girth_value = girth(g);
  if (!girth_value) throw acyclic_graph("non-incident edges: no cycle");
  if (*girth_value < 5)
    throw not_applicable("non-incident edge bound requires girth >= 5");
  CheckResult result;
  result.check_name = "nonincident_edge_bound";
  const std::int64_t bound = ipow(k - 1, ceil_div(*girth_value - 5, 2));

  std::map<std::pair<Edge, Edge>, std::int64_t> counts;
  for (const auto& cycle : enumerate_shortest_cycles(g)) {
    const auto edges = cycle_edges(cycle);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (incident(edges[i], edges[j])) continue;
        const std::pair<Edge, Edge> key =
            std::minmax(edges[i], edges[j]);
        ++counts[key];
      }
    }
  }
  for (const auto& [pair, count] : counts) {
    if (count > bound) {
      Witness w;
      w.description = "non-incident edge pair on too many common girth cycles";
      w.edges = {pair.first, pair.second};
      w.observed = count;
      w.bound = bound;
      result.witnesses.push_back(std::move(w));
    }
  }
  result.passed = result.witnesses.empty();
  return result;
}

CheckResult check_edge_cut_lemmas(const Graph& g, const EgrParams& params,
                                  const EdgeCutOptions& options) {
  CheckResult result;
  result.check_name = "edge_cut_lemmas";
  const auto components = connected_components(g);
  if (components.size() > 1) {
    Witness w;
    w.description = "input graph is disconnected";
    w.vertices = components.front();
    w.observed = static_cast<std::int64_t>(components.size());
    w.bound = 1;
    result.witnesses.push_back(std::move(w));
    result.passed = false;
    return result;
  }
  if (params.g < 5) {
    result.passed = true;
    result.note = "vacuous: hypothesized girth < 5";
    return result;
  }
  const int exponent = ceil_div(params.g - 5, 2);

  // (a) minimum cuts of size < 3 for cubic parameters
  if (params.k == 3 && params.lambda > ipow(2, exponent)) {
    const int connectivity = edge_connectivity(g);
    if (connectivity < 3) {
      Witness w;
      w.description = "edge connectivity below 3";
      w.edges = minimum_edge_cut(g);
      w.observed = connectivity;
      w.bound = 3;
      result.witnesses.push_back(std::move(w));
    }
  }

  // (b) t pairwise non-incident edges must not disconnect
  const std::int64_t pair_bound = ipow(params.k - 1, exponent);
  const auto& edges = g.edges();
  const std::int64_t edge_count = static_cast<std::int64_t>(edges.size());
  for (int t = 1; params.lambda > (t - 1) * pair_bound && t <= edge_count;
       ++t) {
    const bool exhaustive =
        options.force_exhaustive ||
        binomial_capped(edge_count, t, 1000000) <= 1000000;
    auto record = [&](const std::vector<Edge>& subset) {
      Witness w;
      w.description = "pairwise non-incident edges disconnect the graph";
      w.edges = subset;
      w.observed = 2;  // at least two pieces after removal
      w.bound = 1;
      result.witnesses.push_back(std::move(w));
    };
    if (exhaustive) {
      std::vector<Edge> chosen;
      auto recurse = [&](auto&& self, std::size_t next) -> void {
        if (static_cast<int>(chosen.size()) == t) {
          if (!connected_without(g, chosen)) record(chosen);
          return;
        }
        for (std::size_t i = next; i < edges.size(); ++i) {
          bool ok = true;
          for (const Edge& c : chosen)
            if (incident(c, edges[i])) {
              ok = false;
              break;
            }
          if (!ok) continue;
          chosen.push_back(edges[i]);
          self(self, i + 1);
          chosen.pop_back();
        }
      };
      recurse(recurse, 0);
    } else {
      std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(t));
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      std::int64_t tested = 0;
      for (std::int64_t s = 0; s < options.sample_count; ++s) {
        std::set<std::size_t> indices;
        while (static_cast<int>(indices.size()) < t) indices.insert(pick(rng));
        std::vector<Edge> subset;
        bool ok = true;
        for (std::size_t i : indices) {
          for (const Edge& c : subset)
            if (incident(c, edges[i])) {
              ok = false;
              break;
            }
          if (!ok) break;
          subset.push_back(edges[i]);
        }
        if (!ok) continue;
        ++tested;
        if (!connected_without(g, subset)) record(subset);
      }
      result.note += "t=" + std::to_string(t) + ": sampled " +
                     std::to_string(tested) + " subsets (seed " +
                     std::to_string(options.seed) + "); ";
    }
  }
  result.passed = result.witnesses.empty();
  return result;
}

CheckResult check_forbidden_subgraph(const Graph& g, const Graph& h,
                                     const EgrParams& params) {
  const auto hp = is_egr(h);
  if (!hp)
    throw bad_candidate("forbidden subgraph candidate is not edge-girth-regular");
  if (hp->k != params.k - 1 || hp->g != params.g ||
      hp->lambda != params.lambda)
    throw bad_candidate("forbidden subgraph candidate has mismatched parameters");
  CheckResult result;
  result.check_name = "forbidden_subgraph";
  if (h.order() > g.order()) {
    result.passed = true;
    result.note = "vacuous: candidate larger than host";
    return result;
  }
  const auto host_girth = girth(g);
  if (host_girth && *host_girth > hp->g) {
    result.passed = true;
    result.note = "girth obstruction: host girth exceeds candidate girth";
    return result;
  }

  // Backtracking subgraph embedding.  Candidate vertices are processed in BFS
  // order so each new vertex (after the first) has an already-mapped
  // neighbor, which keeps the candidate lists small.
  std::vector<int> order;
  {
    std::vector<char> seen(h.order(), 0);
    std::queue<int> q;
    for (int start = 0; start < h.order(); ++start) {
      if (seen[start]) continue;
      seen[start] = 1;
      q.push(start);
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        order.push_back(x);
        for (int y : h.neighbors(x))
          if (!seen[y]) {
            seen[y] = 1;
            q.push(y);
          }
      }
    }
  }
  std::vector<int> image(h.order(), -1);
  std::vector<char> used(g.order(), 0);
  auto embed = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    const int hv = order[pos];
    for (int gv = 0; gv < g.order(); ++gv) {
      if (used[gv] || g.degree(gv) < h.degree(hv)) continue;
      bool ok = true;
      for (int hn : h.neighbors(hv)) {
        if (image[hn] != -1 && !g.has_edge(gv, image[hn])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[hv] = gv;
      used[gv] = 1;
      if (self(self, pos + 1)) return true;
      image[hv] = -1;
      used[gv] = 0;
    }
    return false;
  };
  if (embed(embed, 0)) {
    Witness w;
    w.description = "forbidden subgraph embeds into the host";
    w.vertices = image;
    for (const Edge& e : h.edges())
      w.edges.push_back(Edge{std::min(image[e.a], image[e.b]),
                             std::max(image[e.a], image[e.b])});
    w.observed = 1;
    w.bound = 0;
    result.witnesses.push_back(std::move(w));
  }
  result.passed = result.witnesses.empty();
  return result;
}

std::vector<CheckResult> run_lemma_suite(const Graph& g,
                                         const SuiteOptions& options) {
  EgrParams params{};
  if (options.params) {
    params = *options.params;
    params.validate();
  } else {
    const auto derived = is_egr(g);
    if (!derived)
      throw error(
          "run_lemma_suite: graph is not edge-girth-regular; supply "
          "hypothesized parameters");
    params = *derived;
  }

  std::vector<std::function<CheckResult()>> jobs;
  jobs.push_back([&] { return check_vertex_cycle_count(g, params); });
  jobs.push_back([&] { return check_cycle_intersections(g); });
  jobs.push_back([&] { return check_path_containment_bounds(g, params.k); });
  jobs.push_back([&]() -> CheckResult {
    try {
      return check_p3_exact(g, params);
    } catch (const not_applicable& e) {
      return CheckResult{"p3_exact", true, {},
                         std::string("not applicable: ") + e.what()};
    }
  });
  jobs.push_back([&]() -> CheckResult {
    try {
      return check_nonincident_edge_bound(g, params.k);
    } catch (const not_applicable& e) {
      return CheckResult{"nonincident_edge_bound", true, {},
                         std::string("not applicable: ") + e.what()};
    }
  });
  jobs.push_back([&] {
    EdgeCutOptions cut_options;
    cut_options.seed = options.seed;
    cut_options.force_exhaustive = options.force_exhaustive_cuts;
    return check_edge_cut_lemmas(g, params, cut_options);
  });
  if (options.forbid != nullptr) {
    const Graph* h = options.forbid;
    jobs.push_back([&, h] { return check_forbidden_subgraph(g, *h, params); });
  }

  std::vector<CheckResult> results(jobs.size());
  if (options.threads > 1) {
    std::vector<std::future<CheckResult>> futures;
    futures.reserve(jobs.size());
    for (auto& job : jobs)
      futures.push_back(std::async(std::launch::async, job));
    for (std::size_t i = 0; i < futures.size(); ++i)
      results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
  }
  return results;
}

}  // namespace egr
