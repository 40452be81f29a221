#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace perpx {

/* Finite simple unoriented graph on vertices 0..n-1.  Loops and parallel
 * edges are rejected at construction. */
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<std::pair<int, int>> edge_list);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& neighbors(int v) const;
  bool has_edge(int u, int v) const;
  /* Edges normalized u < v, sorted. */
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

/* Sorted vertex set of the connected component containing v. */
std::vector<int> connected_component(const Graph& g, int v);

bool is_connected(const Graph& g);

/* Bridge edges (u < v), in sorted order. */
std::vector<std::pair<int, int>> bridges(const Graph& g);

/* All chordless cycles of length >= 3, each reported once as a canonical
 * vertex sequence (least vertex first, lesser neighbor second).  Throws
 * cap_exceeded beyond `cap` cycles. */
std::vector<std::vector<int>> chordless_cycles(const Graph& g,
                                               std::size_t cap = 100000);

/* True iff the subgraph induced on `keep` (a sorted vertex set) is
 * connected and contains the vertex set of every chordless cycle of g. */
bool is_pre_cycle_core(const Graph& g, const std::vector<int>& keep);

/* The unique minimal pre-cycle core.  Requires g connected with at least
 * one cycle; throws input_error otherwise.  Computed from the bridge
 * decomposition: vertices on non-bridge edges plus the unique bridge-tree
 * paths joining their clusters. */
std::vector<int> cycle_core(const Graph& g);

/* Relabelled copy of the subgraph induced on `verts` (sorted).  The new
 * graph has vertices 0..|verts|-1; verts[i] is the parent of i. */
Graph induced_subgraph(const Graph& g, const std::vector<int>& verts);

/* Non-backtracking path in a graph, i.e. an element of the fundamental
 * groupoid.  The length-0 path at v is the identity at v. */
class ReducedPath {
 public:
  /* Identity path (v). */
  static ReducedPath at(int v);
  /* Validate that `walk` is a path of g, then freely reduce it. */
  static ReducedPath of_walk(const Graph& g, const std::vector<int>& walk);
  /* Reduce a raw vertex sequence without adjacency validation. */
  static ReducedPath of_sequence(const std::vector<int>& walk);

  const std::vector<int>& vertices() const { return verts_; }
  int start() const { return verts_.front(); }
  int end() const { return verts_.back(); }
  int length() const { return static_cast<int>(verts_.size()) - 1; }
  bool is_identity() const { return verts_.size() == 1; }

  friend bool operator==(const ReducedPath& a, const ReducedPath& b) {
    return a.verts_ == b.verts_;
  }

 private:
  std::vector<int> verts_;
};

/* Groupoid composition; throws input_error when end(p) != start(q). */
ReducedPath compose(const ReducedPath& p, const ReducedPath& q);

ReducedPath inverse(const ReducedPath& p);

}  // namespace perpx
