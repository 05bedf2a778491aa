#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace kap {

// simple undirected graph on up to 32 vertices, adjacency as bit rows
struct Graph {
  int n = 0;
  std::vector<uint32_t> adj;  // bit j of adj[i] set iff i ~ j

  Graph() = default;
  explicit Graph(int nv) : n(nv), adj(nv, 0) {}

  bool has_edge(int i, int j) const { return (adj[i] >> j) & 1u; }
  void add_edge(int i, int j) {
    adj[i] |= 1u << j;
    adj[j] |= 1u << i;
  }
  void remove_edge(int i, int j) {
    adj[i] &= ~(1u << j);
    adj[j] &= ~(1u << i);
  }
  int degree(int i) const { return std::popcount(adj[i]); }
  int edge_count() const;

  bool operator==(const Graph&) const = default;
  bool operator<(const Graph& o) const {
    return n != o.n ? n < o.n : adj < o.adj;
  }
};

// image of g under the relabeling p (old vertex i becomes p[i])
Graph relabel(const Graph& g, const std::vector<int>& p);

std::vector<std::pair<int, int>> edge_list(const Graph& g);

bool is_connected(const Graph& g);  // vacuously true for n = 0
bool is_regular(const Graph& g, int d);
bool is_triangle_free(const Graph& g);

// standard graph6, short form (n < 63): header byte n+63, then the upper
// triangle column-major, six bits per byte, zero padded
std::string encode_graph6(const Graph& g);

// strict parse; rejects bad length, out-of-range bytes, nonzero padding,
// and vertex counts beyond 32
Graph decode_graph6(const std::string& s);

// canonical byte string: equal iff isomorphic (n <= 32); computed by
// equitable partition refinement with individualization on the first
// non-singleton cell, taking the lexicographically least relabeled
// adjacency matrix over all discrete leaves
std::string canonical_form(const Graph& g);

// the relabeling realizing canonical_form (old vertex i -> new label)
std::vector<int> canonical_labeling(const Graph& g);

// relabel(g, canonical_labeling(g))
Graph canonical_graph(const Graph& g);

}  // namespace kap
