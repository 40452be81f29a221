#include "perpx/graph.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "perpx/errors.hpp"

namespace perpx {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edge_list) {
  if (vertex_count < 0) throw input_error("negative vertex count");
  adj_.resize(vertex_count);
  for (auto& [u, v] : edge_list) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw input_error("edge endpoint out of range");
    if (u == v) throw input_error("loop edge rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  if (std::adjacent_find(edge_list.begin(), edge_list.end()) !=
      edge_list.end())
    throw input_error("parallel edge rejected");
  edges_ = std::move(edge_list);
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= vertex_count()) throw input_error("unknown vertex");
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count())
    return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> connected_component(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw input_error("unknown vertex");
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack{v}, out;
  seen[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (int w : g.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  return static_cast<int>(connected_component(g, 0).size()) ==
         g.vertex_count();
}

std::vector<std::pair<int, int>> bridges(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> out;
  int timer = 0;
  // Iterative DFS; low-link over the DFS tree, skipping the tree edge back
  // to the parent once.
  struct Frame {
    int v, parent;
    std::size_t idx;
    bool skipped_parent;
  };
  for (int root = 0; root < n; ++root) {
    if (tin[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0, false}};
    tin[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.idx < nb.size()) {
        int to = nb[f.idx++];
        if (to == f.parent && !f.skipped_parent) {
          f.skipped_parent = true;
          continue;
        }
        if (tin[to] != -1) {
          low[f.v] = std::min(low[f.v], tin[to]);
        } else {
          tin[to] = low[to] = timer++;
          stack.push_back({to, f.v, 0, false});
        }
      } else {
        int v = f.v, parent = f.parent;
        stack.pop_back();
        if (parent != -1) {
          low[parent] = std::min(low[parent], low[v]);
          if (low[v] > tin[parent])
            out.emplace_back(std::min(parent, v), std::max(parent, v));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> chordless_cycles(const Graph& g,
                                               std::size_t cap) {
  std::vector<std::vector<int>> found;
  const int n = g.vertex_count();
  std::vector<char> on_path(n, 0);
  std::vector<int> path;

  // Grow induced paths (v, p1, ..., pk) with every pi > v; close with a
  // vertex adjacent to both ends and nothing in between.  Each cycle is
  // produced exactly once: least vertex first, p1 < closing vertex.
  std::function<void(int)> grow = [&](int v) {
    int tail = path.back();
    for (int w : g.neighbors(tail)) {
      if (w <= v || on_path[w]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (g.has_edge(w, path[i])) {
          chord = true;
          break;
        }
      if (chord) continue;
      if (g.has_edge(w, v)) {
        if (path.size() >= 2 && path[1] < w) {
          found.push_back(path);
          found.back().push_back(w);
          if (found.size() > cap)
            throw cap_exceeded("chordless cycle cap of " +
                               std::to_string(cap) + " exceeded");
        }
        continue;  // closing vertex is never also extended
      }
      on_path[w] = 1;
      path.push_back(w);
      grow(v);
      path.pop_back();
      on_path[w] = 0;
    }
  };

  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) {
      if (u <= v) continue;
      path = {v, u};
      on_path[v] = on_path[u] = 1;
      grow(v);
      on_path[v] = on_path[u] = 0;
    }
  }
  return found;
}

bool is_pre_cycle_core(const Graph& g, const std::vector<int>& keep) {
  for (int v : keep)
    if (v < 0 || v >= g.vertex_count()) throw input_error("unknown vertex");
  std::vector<char> in(g.vertex_count(), 0);
  for (int v : keep) in[v] = 1;
  for (const auto& cyc : chordless_cycles(g))
    for (int v : cyc)
      if (!in[v]) return false;
  if (keep.empty()) return false;
  // connectivity of the induced subgraph
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack{keep.front()};
  seen[keep.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u))
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == keep.size();
}

std::vector<int> cycle_core(const Graph& g) {
  if (!is_connected(g))
    throw input_error("cycle core requires a connected graph");
  const int n = g.vertex_count();
  auto br = bridges(g);
  if (g.edge_count() == static_cast<int>(br.size()))
    throw input_error("cycle core requires a graph containing a cycle");

  // Clusters = components after deleting bridges; every cluster with an
  // internal (non-bridge) edge carries a cycle.
  std::vector<char> is_bridge_edge;
  auto bridge_set = [&](int u, int v) {
    return std::binary_search(br.begin(), br.end(),
                              std::make_pair(std::min(u, v), std::max(u, v)));
  };
  std::vector<int> cluster(n, -1);
  int nclusters = 0;
  for (int v = 0; v < n; ++v) {
    if (cluster[v] != -1) continue;
    std::vector<int> stack{v};
    cluster[v] = nclusters;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u))
        if (cluster[w] == -1 && !bridge_set(u, w)) {
          cluster[w] = nclusters;
          stack.push_back(w);
        }
    }
    ++nclusters;
  }
  std::vector<char> cyclic(nclusters, 0);
  for (const auto& [u, v] : g.edges())
    if (!bridge_set(u, v)) cyclic[cluster[u]] = 1;

  // Bridge tree on clusters; strip non-cyclic leaves until only the
  // minimal subtree spanning the cyclic clusters remains.
  std::vector<std::vector<int>> tadj(nclusters);
  for (const auto& [u, v] : br) {
    tadj[cluster[u]].push_back(cluster[v]);
    tadj[cluster[v]].push_back(cluster[u]);
  }
  std::vector<int> degree(nclusters);
  std::vector<char> removed(nclusters, 0);
  for (int c = 0; c < nclusters; ++c)
    degree[c] = static_cast<int>(tadj[c].size());
  std::vector<int> queue;
  for (int c = 0; c < nclusters; ++c)
    if (degree[c] <= 1 && !cyclic[c]) queue.push_back(c);
  while (!queue.empty()) {
    int c = queue.back();
    queue.pop_back();
    if (removed[c] || degree[c] > 1 || cyclic[c]) continue;
    removed[c] = 1;
    for (int d : tadj[c])
      if (!removed[d] && --degree[d] <= 1 && !cyclic[d]) queue.push_back(d);
  }

  std::vector<int> core;
  for (int v = 0; v < n; ++v)
    if (!removed[cluster[v]]) core.push_back(v);
  return core;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
  std::vector<int> pos(g.vertex_count(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    int v = verts[i];
    if (v < 0 || v >= g.vertex_count()) throw input_error("unknown vertex");
    pos[v] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> es;
  for (const auto& [u, v] : g.edges())
    if (pos[u] != -1 && pos[v] != -1) es.emplace_back(pos[u], pos[v]);
  return Graph(static_cast<int>(verts.size()), std::move(es));
}

namespace {

std::vector<int> reduce_sequence(const std::vector<int>& walk) {
  if (walk.empty()) throw input_error("empty vertex sequence");
  std::vector<int> out;
  for (int v : walk) {
    if (out.size() >= 2 && out[out.size() - 2] == v)
      out.pop_back();
    else
      out.push_back(v);
  }
  return out;
}

}  // namespace

ReducedPath ReducedPath::at(int v) {
  ReducedPath p;
  p.verts_ = {v};
  return p;
}

ReducedPath ReducedPath::of_walk(const Graph& g, const std::vector<int>& walk) {
  for (std::size_t i = 0; i + 1 < walk.size(); ++i)
    if (!g.has_edge(walk[i], walk[i + 1]))
      throw input_error("consecutive path vertices are not adjacent");
  if (!walk.empty() &&
      (walk.front() < 0 || walk.front() >= g.vertex_count()))
    throw input_error("unknown vertex");
  return of_sequence(walk);
}

ReducedPath ReducedPath::of_sequence(const std::vector<int>& walk) {
  ReducedPath p;
  p.verts_ = reduce_sequence(walk);
  return p;
}

ReducedPath compose(const ReducedPath& p, const ReducedPath& q) {
  if (p.end() != q.start())
    throw input_error("path composition endpoint mismatch");
  std::vector<int> walk = p.vertices();
  walk.insert(walk.end(), q.vertices().begin() + 1, q.vertices().end());
  return ReducedPath::of_sequence(walk);
}

ReducedPath inverse(const ReducedPath& p) {
  std::vector<int> walk(p.vertices().rbegin(), p.vertices().rend());
  return ReducedPath::of_sequence(walk);
}

}  // namespace perpx
