#include "egr/graph.hpp"

#include <fstream>

namespace egr {
namespace {

// graph6: every payload byte is 63 + a 6-bit group.  The order comes first
// (one byte for n <= 62, '~' + 3 bytes for larger n), then the upper triangle
// of the adjacency matrix in column-major order (0,1),(0,2),(1,2),(0,3),...
// packed big-endian into 6-bit groups and zero-padded.

int decode_byte(char c, const char* what) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u < 63 || u > 126) throw malformed_encoding(std::string("invalid graph6 byte in ") + what);
  return u - 63;
}

}  // namespace

Graph parse_graph6(const std::string& text) {
  std::size_t pos = 0;
  if (text.size() >= 10 && text.compare(0, 10, ">>graph6<<") == 0) pos = 10;
  if (pos >= text.size()) throw malformed_encoding("empty graph6 string");

  long long n;
  int first = decode_byte(text[pos], "order");
  if (first < 63) {
    n = first;
    ++pos;
  } else {
    // long form: '~' then 18 bits; the 8-byte '~~' form is beyond our cap.
    if (pos + 1 < text.size() && text[pos + 1] == '~')
      throw unsupported_order("graph6 orders above 258047 are not supported");
    if (pos + 4 > text.size()) throw malformed_encoding("truncated graph6 long-form order");
    n = 0;
    for (int i = 1; i <= 3; ++i) n = (n << 6) | decode_byte(text[pos + i], "order");
    pos += 4;
    if (n <= 62) throw malformed_encoding("long-form order used for a short-form value");
  }
  if (n > MAX_GRAPH6_ORDER)
    throw unsupported_order("graph6 order exceeds supported maximum of " +
                            std::to_string(MAX_GRAPH6_ORDER));

  long long bits = n * (n - 1) / 2;
  std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() - pos < need) throw malformed_encoding("truncated graph6 adjacency data");
  if (text.size() - pos > need) throw malformed_encoding("trailing bytes after graph6 data");

  std::vector<Edge> edges;
  long long bit_index = 0;
  int group = 0;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      if (bit_index % 6 == 0) group = decode_byte(text[pos + bit_index / 6], "adjacency");
      int bit = (group >> (5 - bit_index % 6)) & 1;
      if (bit) edges.push_back({a, b});
      ++bit_index;
    }
  // padding bits must be zero
  if (bit_index % 6 != 0) {
    int pad = group & ((1 << (6 - bit_index % 6)) - 1);
    if (pad != 0) throw malformed_encoding("nonzero padding bits in graph6 data");
  }
  return Graph::from_edges(static_cast<int>(n), edges);
}

std::string write_graph6(const Graph& g) {
  long long n = g.order();
  if (n > MAX_GRAPH6_ORDER) throw unsupported_order("graph order too large for graph6 writer");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int group = 0, filled = 0;
  for (int b = 1; b < n; ++b)
    for (int a = 0; a < b; ++a) {
      group = (group << 1) | (g.has_edge(a, b) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + group));
        group = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>(63 + (group << (6 - filled))));
  return out;
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open file: " + path);
  std::vector<Graph> graphs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (first && line.rfind(">>graph6<<", 0) == 0) line = line.substr(10);
    first = false;
    if (line.empty()) continue;
    graphs.push_back(parse_graph6(line));
  }
  return graphs;
}

}  // namespace egr
