#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "perpx/graph.hpp"

namespace perpx {

/* Sentinel for an infinite bond order. */
constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

inline bool finite_order(int m) { return m != kInfiniteOrder; }
inline bool even_order(int m) { return finite_order(m) && m % 2 == 0; }
inline bool odd_bond(int m) { return finite_order(m) && m % 2 == 1 && m >= 3; }

/* Symmetric bond-order table of a Coxeter system over named generators.
 * Unspecified off-diagonal entries default to 2; the diagonal is 1. */
class CoxeterMatrix {
 public:
  /* entries are (i, j, m) with i != j, m >= 2 or kInfiniteOrder. */
  static CoxeterMatrix build(
      std::vector<std::string> names,
      const std::vector<std::tuple<int, int, int>>& entries);

  int rank() const { return static_cast<int>(names_.size()); }
  int order(int i, int j) const;
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  /* Index of a named generator, or -1. */
  int find(const std::string& name) const;
  /* Index of a named generator; throws input_error when unknown. */
  int require(const std::string& name) const;
  std::vector<int> all_generators() const;

  /* The system on the sub-generator set `subset` (parent indices, sorted);
   * generator i of the result is subset[i]. */
  CoxeterMatrix restricted(const std::vector<int>& subset) const;
  /* Same system with generator i renamed/reordered to position perm[i]. */
  CoxeterMatrix relabeled(const std::vector<int>& perm,
                          std::vector<std::string> new_names) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> m_;  // rank x rank, row major
};

/* Graph with an edge for every pair of bond order >= 3 (infinity included),
 * restricted to `subset`.  Vertices are the full generator range; vertices
 * outside `subset` are isolated. */
Graph full_bond_graph(const CoxeterMatrix& cm, const std::vector<int>& subset);
Graph full_bond_graph(const CoxeterMatrix& cm);

/* Graph keeping only finite odd bonds (the view whose components group
 * conjugate generators). */
Graph odd_bond_graph(const CoxeterMatrix& cm, const std::vector<int>& subset);
Graph odd_bond_graph(const CoxeterMatrix& cm);

/* Sorted vertex set of the odd-bond component of x. */
std::vector<int> odd_component(const CoxeterMatrix& cm, int x);

/* The decomposition of the generator set around the odd component O of x:
 * E collects generators outside O joined to O by a finite bond, and O2
 * maps each s in E to its order-2 partners inside O. */
struct OuterSets {
  std::vector<int> O;
  std::vector<int> E;
  std::map<int, std::vector<int>> O2;
};
OuterSets outer_sets(const CoxeterMatrix& cm, int x);

/* True iff the bond graph restricted to `k` is a single cycle of |k| >= 3
 * vertices, every cycle bond 3 and every non-adjacent pair 2. */
bool is_type_A_tilde(const CoxeterMatrix& cm, const std::vector<int>& k);

/* Detects the bipyramid pattern on `k`: two poles with bond 2, bond 3 from
 * each pole to every other vertex, and bond infinity between all other
 * pairs.  Needs |k| >= 4; returns the pole pair when matched. */
std::optional<std::pair<int, int>> bipyramid_poles(const CoxeterMatrix& cm,
                                                   const std::vector<int>& k);

}  // namespace perpx
