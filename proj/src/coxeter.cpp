#include "perpx/coxeter.hpp"

#include <algorithm>
#include <set>

#include "perpx/errors.hpp"

namespace perpx {

CoxeterMatrix CoxeterMatrix::build(
    std::vector<std::string> names,
    const std::vector<std::tuple<int, int, int>>& entries) {
  CoxeterMatrix cm;
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw input_error("empty generator name");
    if (!seen.insert(n).second)
      throw input_error("duplicate generator name '" + n + "'");
  }
  cm.names_ = std::move(names);
  const int r = cm.rank();
  cm.m_.assign(static_cast<std::size_t>(r) * r, 2);
  for (int i = 0; i < r; ++i) cm.m_[i * r + i] = 1;
  for (const auto& [i, j, m] : entries) {
    if (i < 0 || i >= r || j < 0 || j >= r)
      throw input_error("bond entry references an unknown generator");
    if (i == j) throw input_error("diagonal bond order is fixed at 1");
    if (m != kInfiniteOrder && m < 2)
      throw input_error("off-diagonal bond order must be >= 2 or infinite");
    int& a = cm.m_[i * r + j];
    int& b = cm.m_[j * r + i];
    if (a != 2 && a != m)
      throw input_error("conflicting bond orders for one generator pair");
    a = m;
    b = m;
  }
  return cm;
}

int CoxeterMatrix::order(int i, int j) const {
  if (i < 0 || i >= rank() || j < 0 || j >= rank())
    throw input_error("unknown generator index");
  return m_[i * rank() + j];
}

int CoxeterMatrix::find(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

int CoxeterMatrix::require(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw input_error("unknown generator '" + name + "'");
  return i;
}

std::vector<int> CoxeterMatrix::all_generators() const {
  std::vector<int> out(rank());
  for (int i = 0; i < rank(); ++i) out[i] = i;
  return out;
}

CoxeterMatrix CoxeterMatrix::restricted(const std::vector<int>& subset) const {
  std::vector<std::string> names;
  names.reserve(subset.size());
  for (int v : subset) {
    if (v < 0 || v >= rank()) throw input_error("unknown generator index");
    names.push_back(names_[v]);
  }
  std::vector<std::tuple<int, int, int>> entries;
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      entries.emplace_back(static_cast<int>(i), static_cast<int>(j),
                           order(subset[i], subset[j]));
  return build(std::move(names), entries);
}

CoxeterMatrix CoxeterMatrix::relabeled(const std::vector<int>& perm,
                                       std::vector<std::string> new_names) const {
  if (static_cast<int>(perm.size()) != rank() ||
      static_cast<int>(new_names.size()) != rank())
    throw input_error("relabeling size mismatch");
  std::vector<std::tuple<int, int, int>> entries;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      entries.emplace_back(perm[i], perm[j], order(i, j));
  return build(std::move(new_names), entries);
}

namespace {

Graph bond_graph_filtered(const CoxeterMatrix& cm, const std::vector<int>& subset,
                          bool odd_only) {
  std::vector<char> in(cm.rank(), 0);
  for (int v : subset) {
    if (v < 0 || v >= cm.rank()) throw input_error("unknown generator index");
    in[v] = 1;
  }
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = i + 1; j < cm.rank(); ++j) {
      if (!in[i] || !in[j]) continue;
      int m = cm.order(i, j);
      bool keep = odd_only ? odd_bond(m) : m >= 3;
      if (keep) es.emplace_back(i, j);
    }
  return Graph(cm.rank(), std::move(es));
}

}  // namespace

Graph full_bond_graph(const CoxeterMatrix& cm, const std::vector<int>& subset) {
  return bond_graph_filtered(cm, subset, false);
}

Graph full_bond_graph(const CoxeterMatrix& cm) {
  return full_bond_graph(cm, cm.all_generators());
}

Graph odd_bond_graph(const CoxeterMatrix& cm, const std::vector<int>& subset) {
  return bond_graph_filtered(cm, subset, true);
}

Graph odd_bond_graph(const CoxeterMatrix& cm) {
  return odd_bond_graph(cm, cm.all_generators());
}

std::vector<int> odd_component(const CoxeterMatrix& cm, int x) {
  if (x < 0 || x >= cm.rank()) throw input_error("unknown generator index");
  return connected_component(odd_bond_graph(cm), x);
}

OuterSets outer_sets(const CoxeterMatrix& cm, int x) {
  OuterSets out;
  out.O = odd_component(cm, x);
  std::vector<char> in_o(cm.rank(), 0);
  for (int v : out.O) in_o[v] = 1;
  for (int s = 0; s < cm.rank(); ++s) {
    if (in_o[s]) continue;
    bool joined = false;
    for (int y : out.O)
      if (finite_order(cm.order(y, s))) {
        joined = true;
        // m(y, s) odd would have pulled s into the odd component.
        if (!even_order(cm.order(y, s)))
          throw internal_error(
              "bond between the odd component and its boundary is neither "
              "even nor infinite");
      }
    if (joined) out.E.push_back(s);
  }
  for (int s : out.E) {
    std::vector<int> o2;
    for (int y : out.O)
      if (cm.order(y, s) == 2) o2.push_back(y);
    out.O2[s] = std::move(o2);
  }
  return out;
}

bool is_type_A_tilde(const CoxeterMatrix& cm, const std::vector<int>& k) {
  const int n = static_cast<int>(k.size());
  if (n < 3) return false;
  int bonds3 = 0;
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int m = cm.order(k[i], k[j]);
      if (m != 2 && m != 3) return false;
      if (m == 3) {
        ++deg;
        if (i < j) ++bonds3;
      }
    }
    if (deg != 2) return false;
  }
  if (bonds3 != n) return false;
  // degree-2 everywhere with n bonds: a disjoint union of cycles; a single
  // cycle iff connected
  Graph g = induced_subgraph(full_bond_graph(cm, k), k);
  return is_connected(g);
}

std::optional<std::pair<int, int>> bipyramid_poles(
    const CoxeterMatrix& cm, const std::vector<int>& k) {
  const int n = static_cast<int>(k.size());
  if (n < 4) return std::nullopt;
  std::optional<std::pair<int, int>> found;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (cm.order(k[a], k[b]) != 2) continue;
      bool ok = true;
      for (int c = 0; c < n && ok; ++c) {
        if (c == a || c == b) continue;
        if (cm.order(k[a], k[c]) != 3 || cm.order(k[b], k[c]) != 3) ok = false;
        for (int d = c + 1; d < n && ok; ++d) {
          if (d == a || d == b) continue;
          if (cm.order(k[c], k[d]) != kInfiniteOrder) ok = false;
        }
      }
      if (ok) {
        if (found)
          throw internal_error("two distinct pole pairs matched");
        found = std::make_pair(k[a], k[b]);
      }
    }
  return found;
}

}  // namespace perpx
