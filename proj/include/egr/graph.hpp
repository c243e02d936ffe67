#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace egr {

// Error taxonomy.  Everything derives from egr::error so callers can catch
// broadly; the concrete types matter to tests and to the CLI exit-code logic.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct malformed_encoding : error { using error::error; };   // bad graph6 input
struct unsupported_order : error { using error::error; };    // order out of supported range
struct unknown_vertex : error { using error::error; };       // vertex index out of range
struct not_an_edge : error { using error::error; };          // endpoints not adjacent / a == b
struct not_a_path : error { using error::error; };           // vertex list is not a simple path
struct acyclic_graph : error { using error::error; };        // no cycle where one is required
struct odd_girth_error : error { using error::error; };      // even girth required
struct even_girth_error : error { using error::error; };     // odd girth required
struct not_regular : error { using error::error; };          // regularity required
struct not_a_tree : error { using error::error; };           // layered tree structure required
struct not_applicable : error { using error::error; };       // check preconditions not met
struct bad_candidate : error { using error::error; };        // candidate fails its own contract
struct parity_violation : error { using error::error; };     // k*v or k*lambda parity broken
struct degree_too_small : error { using error::error; };     // k < 3

struct Edge {
  int a = 0;  // always a < b
  int b = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1.  Immutable once built: adjacency
// is stored both as bit rows (O(1) edge tests, word-parallel set ops) and as
// sorted neighbor lists (cheap iteration).  Loops and parallel edges are
// rejected at construction.
class Graph {
public:
  Graph() = default;

  // edges may be in any order / orientation; duplicates are an error.
  static Graph from_edges(int order, const std::vector<Edge>& edges);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }

  bool has_edge(int a, int b) const;
  int degree(int v) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const;

  // Bit row for v: word w holds vertices 64w..64w+63, LSB first.
  const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * words_; }
  int row_words() const { return words_; }

  void check_vertex(int v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

// graph6 codec.  Short form (n <= 62) always; long form accepted up to
// MAX_GRAPH6_ORDER so the in-memory representation stays sane.
inline constexpr int MAX_GRAPH6_ORDER = 4096;

Graph parse_graph6(const std::string& text);
std::string write_graph6(const Graph& g);

// Reads a graph6 file: one graph per line, optional ">>graph6<<" header,
// blank lines ignored.
std::vector<Graph> read_graph6_file(const std::string& path);

// k if every vertex has degree k; absent for the empty graph.
std::optional<int> is_regular(const Graph& g);

// Components as sorted vertex lists, ordered by smallest contained vertex.
std::vector<std::vector<int>> connected_components(const Graph& g);

// Size of a minimum edge cut (unit-capacity max-flow, min over targets).
// Disconnected graphs give 0; graphs on < 2 vertices give 0 as well.
int edge_connectivity(const Graph& g);

// A concrete minimum edge cut: removing the returned edges disconnects the
// graph, and no smaller edge set does.  Empty for graphs that are already
// disconnected or have < 2 vertices.
std::vector<Edge> minimum_edge_cut(const Graph& g);

// Canonical labeling: relabeling[v] is the new index of vertex v, and
// canonical_string is the graph6 encoding of the relabeled graph.  Two graphs
// are isomorphic iff their canonical strings are equal.  The labeling chosen
// minimizes the graph6 adjacency bit string over all permutations.
struct CanonicalForm {
  std::vector<int> relabeling;
  std::string canonical_string;
};

CanonicalForm canonical_form(const Graph& g);

// Apply a relabeling (new_index = relabeling[old_index]).
Graph permute(const Graph& g, const std::vector<int>& relabeling);

namespace detail {

// Color-respecting variant: only permutations with color[u] < color[v] =>
// new(u) < new(v) are considered.  Used for tagged canonical acceptance in
// the generators and for symmetry folding in the local search.  Also reports
// the automorphisms discovered along the way (generators of a subgroup of the
// color-preserving automorphism group, not necessarily the full group).
struct ColoredCanonical {
  std::vector<int> relabeling;
  std::vector<std::uint8_t> bits;  // adjacency bit string of the relabeled graph
  std::vector<std::vector<int>> automorphisms;
};

ColoredCanonical canonical_form_colored(const Graph& g, const std::vector<int>& colors);

}  // namespace detail

}  // namespace egr
