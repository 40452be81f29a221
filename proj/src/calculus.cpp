#include "perpx/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>
#include <tuple>

#include "perpx/errors.hpp"

namespace perpx {

std::vector<PerpPair> perp_pairs(const CoxeterMatrix& cm, int x) {
  auto O = odd_component(cm, x);
  std::vector<char> in_o(cm.rank(), 0);
  for (int v : O) in_o[v] = 1;
  std::vector<PerpPair> out;
  for (int s = 0; s < cm.rank(); ++s) {
    if (!in_o[s]) continue;
    for (int t = 0; t < cm.rank(); ++t) {
      if (t == s) continue;
      if (even_order(cm.order(s, t))) out.push_back({s, t});
    }
  }
  return out;
}

Vec pair_root(const CoxeterMatrix& cm, const PerpPair& p) {
  int m = cm.order(p.mover, p.support);
  if (!even_order(m))
    throw input_error("pair root needs a finite even bond order");
  Vec v(cm.rank(), 0.0);
  v[p.mover] = std::cos(M_PI / m) / std::sin(M_PI / m);
  v[p.support] = 1.0 / std::sin(M_PI / m);
  return v;
}

std::vector<int> pair_word(const CoxeterMatrix& cm, const PerpPair& p) {
  int m = cm.order(p.mover, p.support);
  if (!even_order(m))
    throw input_error("pair word needs a finite even bond order");
  std::vector<int> w;
  for (int i = 0; i < m / 2 - 1; ++i) {
    w.push_back(p.support);
    w.push_back(p.mover);
  }
  w.push_back(p.support);
  return w;
}

LinearMap LinearMap::identity(int n) {
  LinearMap m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m.a[i * n + i] = 1.0;
  return m;
}

Vec LinearMap::apply(const Vec& v) const {
  Vec out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a[i * n + j] * v[j];
    out[i] = s;
  }
  return out;
}

LinearMap LinearMap::then_apply(const LinearMap& rhs) const {
  LinearMap out;
  out.n = n;
  out.a.assign(a.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double c = a[i * n + k];
      if (c == 0.0) continue;
      for (int j = 0; j < n; ++j) out.a[i * n + j] += c * rhs.a[k * n + j];
    }
  return out;
}

Vec edge_transport_apply(const BilinearForm& form, const CoxeterMatrix& cm,
                         int y, int z, const Vec& v) {
  int m = cm.order(y, z);
  if (!odd_bond(m))
    throw input_error("transport edge must carry a finite odd bond");
  int k = (m - 1) / 2;
  Vec out = v;
  for (int i = 0; i < k; ++i) {
    out = form.apply_simple_reflection(y, out);
    out = form.apply_simple_reflection(z, out);
  }
  return out;
}

LinearMap path_transport(const CoxeterMatrix& cm, const ReducedPath& p) {
  BilinearForm form(cm);
  const int n = cm.rank();
  LinearMap map = LinearMap::identity(n);
  // Build columns by transporting the basis through the whole path.
  for (int col = 0; col < n; ++col) {
    Vec v = basis_vector(n, col);
    const auto& verts = p.vertices();
    for (std::size_t i = verts.size(); i-- > 1;)
      v = edge_transport_apply(form, cm, verts[i - 1], verts[i], v);
    for (int row = 0; row < n; ++row) map.a[row * n + col] = v[row];
  }
  return map;
}

std::vector<int> path_transport_word(const CoxeterMatrix& cm,
                                     const ReducedPath& p) {
  std::vector<int> w;
  const auto& verts = p.vertices();
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    int y = verts[i], z = verts[i + 1];
    int m = cm.order(y, z);
    if (!odd_bond(m))
      throw input_error("transport edge must carry a finite odd bond");
    for (int r = 0; r < (m - 1) / 2; ++r) {
      w.push_back(z);
      w.push_back(y);
    }
  }
  return w;
}

std::vector<Move> available_moves(const CoxeterMatrix& cm, int x,
                                  const PerpPair& p) {
  std::vector<Move> out;
  for (const auto& rel : relation_configurations(cm, x, p)) {
    if (rel.order != 1) continue;
    Move mv;
    mv.kind = rel.trace.length() == 1 ? Move::Kind::sliding
                                      : Move::Kind::switching;
    mv.at = mv.kind == Move::Kind::switching ? rel.z : -1;
    mv.from = p;
    mv.to = rel.to;
    mv.trace = rel.trace;
    out.push_back(mv);
  }
  return out;
}

std::vector<PairRelation> relation_configurations(const CoxeterMatrix& cm,
                                                  int x, const PerpPair& p) {
  auto O = odd_component(cm, x);
  if (!std::binary_search(O.begin(), O.end(), p.mover))
    throw input_error("pair mover outside the odd component of x");
  int a = cm.order(p.mover, p.support);
  if (!even_order(a)) throw input_error("pair bond order must be finite even");

  std::vector<PairRelation> out;
  const int o = p.mover, d = p.support;
  for (int z = 0; z < cm.rank(); ++z) {
    if (z == o || z == d) continue;
    int b = cm.order(o, z);
    int c = cm.order(d, z);
    PairRelation rel;
    rel.z = z;
    bool matched = true;
    auto trivial = ReducedPath::at(o);
    auto step = ReducedPath::of_sequence({o, z});
    auto hop = ReducedPath::of_sequence({o, z, d});
    if (a == 2) {
      if (b == 2 && finite_order(c)) {  // lone bond at the support side
        rel = {1, z, {o, z}, trivial, c};
      } else if (even_order(b) && b >= 4 && c == 2) {
        rel = {2, z, {o, z}, trivial, 2};
      } else if (b == 4 && c == 3) {
        rel = {3, z, {o, z}, trivial, 4};
      } else if (odd_bond(b) && c == 2) {  // sliding
        rel = {4, z, {z, d}, step, 1};
      } else if (b == 3 && c == 3) {  // switching
        rel = {5, z, {d, o}, hop, 1};
      } else if (b == 3 && c == 5) {
        rel = {6, z, {d, o}, hop, 2};
      } else if (b == 5 && c == 3) {
        rel = {7, z, {d, o}, hop, 2};
      } else if (b == 3 && c == 4) {
        rel = {8, z, {z, d}, step, 2};
      } else {
        matched = false;
      }
    } else {
      if (b == 2 && c == 2) {
        rel = {9, z, {o, z}, trivial, 2};
      } else if (a == 4 && b == 2 && c == 3) {
        rel = {10, z, {o, z}, trivial, 4};
      } else if (a == 4 && b == 3 && c == 2) {
        rel = {11, z, {z, d}, step, 2};
      } else {
        matched = false;
      }
    }
    if (matched) out.push_back(std::move(rel));
  }
  return out;
}

ReducedPath tree_path(const CoxeterMatrix& cm, int x, int y) {
  Graph odd = odd_bond_graph(cm);
  auto O = connected_component(odd, x);
  if (!std::binary_search(O.begin(), O.end(), y))
    throw input_error("no odd-bond path joins the two generators");
  std::vector<int> parent(cm.rank(), -1);
  std::deque<int> queue{x};
  parent[x] = x;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : odd.neighbors(u))
      if (parent[w] == -1) {
        parent[w] = u;
        queue.push_back(w);
      }
  }
  std::vector<int> back{y};
  for (int v = y; v != x; v = parent[v]) back.push_back(parent[v]);
  std::reverse(back.begin(), back.end());
  return ReducedPath::of_sequence(back);
}

namespace {

struct Witness {
  int pair_index;
  std::vector<int> suffix;  // path from the current vertex to the mover
};

}  // namespace

GeneratorEnumeration enumerate_generators(const CoxeterMatrix& cm, int x,
                                          const Limits& limits) {
  if (x < 0 || x >= cm.rank()) throw input_error("unknown generator index");
  const int n = cm.rank();
  BilinearForm form(cm);
  Graph odd = odd_bond_graph(cm);
  auto pairs = perp_pairs(cm, x);

  std::vector<std::vector<int>> seeds(n);  // pair indices by mover
  std::vector<Vec> seed_roots(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    seeds[pairs[i].mover].push_back(static_cast<int>(i));
    seed_roots[i] = pair_root(cm, pairs[i]);
  }

  // Transported-root sets per directed odd bond (y, z): every value
  // pi((y,z) c') v over reduced paths c' from z avoiding an immediate
  // return to y, with v a seed root at the far endpoint.  Merging by value
  // is sound: the untransported remainder is one fixed linear map.
  std::vector<std::pair<int, int>> darts;
  for (const auto& [u, v] : odd.edges()) {
    darts.emplace_back(u, v);
    darts.emplace_back(v, u);
  }
  std::sort(darts.begin(), darts.end());
  std::map<std::pair<int, int>, int> dart_id;
  for (std::size_t i = 0; i < darts.size(); ++i) dart_id[darts[i]] = i;

  std::vector<VectorIndex> sets(darts.size(), VectorIndex(n));
  std::vector<std::vector<Witness>> witness(darts.size());
  std::vector<std::vector<int>> frontier(darts.size());

  GeneratorEnumeration out;
  VectorIndex result(n);
  std::vector<GeneratorElement> found;

  auto emit = [&](const Vec& root, int pair_index,
                  const std::vector<int>& path_from_x) {
    if (result.find(root) >= 0) return;
    result.insert(root);
    GeneratorElement ge;
    ge.pair = pairs[pair_index];
    ge.path = ReducedPath::of_sequence(path_from_x);
    ge.root = root;
    found.push_back(std::move(ge));
  };

  for (int pi : seeds[x]) emit(seed_roots[pi], pi, {x});

  std::size_t total_states = 0;
  bool truncated = false;
  int level = 0;
  for (level = 1; level <= limits.max_path_len; ++level) {
    bool changed = false;
    std::vector<std::vector<int>> next_frontier(darts.size());
    // Snapshot: this level consumes only items added at the previous one.
    for (std::size_t di = 0; di < darts.size(); ++di) {
      const int y = darts[di].first, z = darts[di].second;
      auto feed = [&](const Vec& v, int pair_index,
                      const std::vector<int>& suffix_from_z) {
        Vec u = edge_transport_apply(form, cm, y, z, v);
        if (sets[di].find(u) >= 0) return;
        int idx = sets[di].insert(u);
        std::vector<int> suffix{y};
        suffix.insert(suffix.end(), suffix_from_z.begin(),
                      suffix_from_z.end());
        witness[di].push_back({pair_index, suffix});
        next_frontier[di].push_back(idx);
        ++total_states;
        changed = true;
        if (y == x) emit(u, pair_index, suffix);
      };
      if (level == 1) {
        for (int pi : seeds[z]) feed(seed_roots[pi], pi, {z});
      } else {
        for (int w : odd.neighbors(z)) {
          if (w == y) continue;
          int src = dart_id.at({z, w});
          for (int idx : frontier[src])
            feed(sets[src].items()[idx], witness[src][idx].pair_index,
                 witness[src][idx].suffix);
        }
      }
    }
    if (changed) out.last_growth_level = level;
    out.levels_used = level;
    if (total_states > limits.max_states) {
      truncated = true;
      break;
    }
    if (!changed) {
      out.saturated = true;
      break;
    }
    frontier = std::move(next_frontier);
  }
  if (!truncated && !out.saturated && darts.empty()) out.saturated = true;

  for (auto& ge : found) {
    auto prefix = path_transport_word(cm, ge.path);
    ge.word = prefix;
    auto center = pair_word(cm, ge.pair);
    ge.word.insert(ge.word.end(), center.begin(), center.end());
    ge.word.insert(ge.word.end(), prefix.rbegin(), prefix.rend());
  }
  out.generators = std::move(found);
  return out;
}

namespace {

/* Forward reduced-path sweep collecting (pair, path) states and their
 * relation-table links, used by the chain route of presentation(). */
struct ChainState {
  ReducedPath path;
  LinearMap transport;
};

}  // namespace

GeneratorPresentation presentation(const CoxeterMatrix& cm, int x,
                                   const Limits& limits) {
  auto en = enumerate_generators(cm, x, limits);
  if (!en.saturated)
    throw input_error(
        "presentation requires a saturated generator enumeration; raise the "
        "path-length or state limits");
  GeneratorPresentation out;
  out.generators = en.generators;
  const std::size_t g = en.generators.size();
  out.orders.assign(g, std::vector<int>(g, kInfiniteOrder));
  for (std::size_t i = 0; i < g; ++i) out.orders[i][i] = 1;
  if (g == 0) return out;

  const int n = cm.rank();
  BilinearForm form(cm);
  Graph odd = odd_bond_graph(cm);
  auto pairs = perp_pairs(cm, x);
  std::vector<Vec> seed_roots(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    seed_roots[i] = pair_root(cm, pairs[i]);

  VectorIndex roots(n);
  for (const auto& ge : en.generators) roots.insert(ge.root);
  auto class_of = [&](const Vec& v) {
    int idx = roots.find(v);
    if (idx < 0)
      throw internal_error(
          "transported root missing from a saturated generator set");
    return idx;
  };

  // Precompute, per pair, its relation rows and the partner root already
  // transported along the row trace.
  struct Row {
    std::size_t pair_index;
    Vec partner;  // transport(trace) applied to the partner pair root
    int order;
  };
  std::vector<std::vector<Row>> rows_by_mover(n);
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    for (const auto& rel : relation_configurations(cm, x, pairs[pi])) {
      if (rel.order < 2) continue;
      Vec v = pair_root(cm, rel.to);
      const auto& verts = rel.trace.vertices();
      for (std::size_t i = verts.size(); i-- > 1;)
        v = edge_transport_apply(form, cm, verts[i - 1], verts[i], v);
      rows_by_mover[pairs[pi].mover].push_back(
          Row{pi, std::move(v), rel.order});
    }
  }

  auto note_order = [&](int i, int j, int k) {
    int& slot = out.orders[i][j];
    if (slot != kInfiniteOrder && slot != k)
      throw internal_error("conflicting chain-search orders " +
                           std::to_string(slot) + " and " + std::to_string(k));
    slot = k;
    out.orders[j][i] = k;
  };

  std::map<std::pair<int, int>, LinearMap> edge_map;
  for (const auto& [u, v] : odd.edges()) {
    edge_map[{u, v}] =
        path_transport(cm, ReducedPath::of_sequence(std::vector<int>{u, v}));
    edge_map[{v, u}] =
        path_transport(cm, ReducedPath::of_sequence(std::vector<int>{v, u}));
  }

  // Breadth-first sweep over reduced paths from x, a few levels past the
  // saturation depth.
  const int sweep_len =
      std::min(limits.max_path_len, en.last_growth_level + 6);
  std::deque<ChainState> queue;
  std::size_t visited = 0;
  bool sweep_complete = true;
  queue.push_back({ReducedPath::at(x), LinearMap::identity(n)});
  while (!queue.empty()) {
    ChainState st = std::move(queue.front());
    queue.pop_front();
    ++visited;
    int y = st.path.end();
    for (const auto& row : rows_by_mover[y]) {
      int i = class_of(st.transport.apply(seed_roots[row.pair_index]));
      int j = class_of(st.transport.apply(row.partner));
      if (i != j) note_order(i, j, row.order);
    }
    if (st.path.length() >= sweep_len) continue;
    if (visited > limits.max_states) {
      sweep_complete = false;
      continue;
    }
    const auto& verts = st.path.vertices();
    int prev = verts.size() >= 2 ? verts[verts.size() - 2] : -1;
    for (int w : odd.neighbors(y)) {
      if (w == prev) continue;
      ChainState nx;
      nx.path = compose(st.path, ReducedPath::of_sequence({y, w}));
      nx.transport = st.transport.then_apply(edge_map.at({y, w}));
      queue.push_back(std::move(nx));
    }
  }

  // Independent numerical route.  A genuine disagreement is a hard error;
  // a missing chain in a capped sweep is merely inconclusive.
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      auto po = order_of_product(form, en.generators[i].root,
                                 en.generators[j].root);
      int chain = out.orders[i][j];
      bool ok;
      if (chain == kInfiniteOrder)
        ok = po.kind != ProductOrder::Kind::finite;
      else
        ok = po.kind == ProductOrder::Kind::finite && po.order == chain;
      if (!ok) {
        if (chain == kInfiniteOrder && !sweep_complete)
          throw cap_exceeded(
              "chain sweep hit the state cap before locating a relation; "
              "raise the limits");
        throw internal_error(
            "presentation order mismatch between chain search and the "
            "numerical route for generators " +
            std::to_string(i) + "," + std::to_string(j));
      }
    }
  return out;
}

std::optional<MoveSequence> minimal_closed_move_sequence(
    const CoxeterMatrix& cm, int x, const PerpPair& start,
    const Limits& limits) {
  struct Node {
    PerpPair pair;
    Move via;
    int parent;  // index into nodes, -1 for roots
    int depth;
  };
  auto inverse_of = [](const Move& m) {
    Move inv = m;
    std::swap(inv.from, inv.to);
    inv.trace = inverse(m.trace);
    return inv;
  };
  auto same_move = [](const Move& a, const Move& b) {
    return a.from == b.from && a.to == b.to && a.trace == b.trace;
  };

  // States are (pair arrived at, move used); shortest-first search with a
  // visited set, since a shortest closed walk never repeats a state.
  auto state_key = [](const Move& m) {
    std::vector<int> k{m.to.mover, m.to.support};
    k.insert(k.end(), m.trace.vertices().begin(), m.trace.vertices().end());
    return k;
  };
  std::map<std::vector<int>, char> seen;
  std::vector<Node> nodes;
  std::deque<int> queue;
  for (const auto& mv : available_moves(cm, x, start)) {
    nodes.push_back({mv.to, mv, -1, 1});
    seen[state_key(mv)] = 1;
    queue.push_back(static_cast<int>(nodes.size()) - 1);
  }
  const int max_len = std::max(8, limits.max_path_len * 4);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    const Node node = nodes[id];
    if (node.pair == start) {
      std::vector<Move> seq;
      for (int cur = id; cur != -1; cur = nodes[cur].parent)
        seq.push_back(nodes[cur].via);
      std::reverse(seq.begin(), seq.end());
      MoveSequence out;
      out.moves = seq;
      out.trace = ReducedPath::at(start.mover);
      for (const auto& mv : seq) out.trace = compose(out.trace, mv.trace);
      return out;
    }
    if (node.depth >= max_len || nodes.size() > limits.max_states) continue;
    for (const auto& mv : available_moves(cm, x, node.pair)) {
      if (same_move(mv, inverse_of(node.via))) continue;
      if (!(mv.to == start) && !seen.insert({state_key(mv), 1}).second)
        continue;
      nodes.push_back({mv.to, mv, id, node.depth + 1});
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  return std::nullopt;
}

}  // namespace perpx
