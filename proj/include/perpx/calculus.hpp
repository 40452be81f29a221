#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "perpx/coxeter.hpp"
#include "perpx/geometry.hpp"
#include "perpx/graph.hpp"

namespace perpx {

/* State of the move calculus: the mover lives in the odd component under
 * study, the support is any other generator at an even bond. */
struct PerpPair {
  int mover = -1;
  int support = -1;
  friend bool operator==(const PerpPair&, const PerpPair&) = default;
};

/* All pairs (mover in the odd component of x, support at a finite even
 * bond), in lexicographic generator order. */
std::vector<PerpPair> perp_pairs(const CoxeterMatrix& cm, int x);

/* Unit root with nonnegative coefficients orthogonal to the mover's simple
 * root inside the dihedral span of the pair:
 * (cos(pi/m) a_mover + a_support) / sin(pi/m) for even bond m.
 * Throws input_error when the bond is odd or infinite. */
Vec pair_root(const CoxeterMatrix& cm, const PerpPair& p);

/* Reflection word along pair_root: the longest dihedral element times the
 * mover, i.e. (support mover)^(k-1) support for bond 2k. */
std::vector<int> pair_word(const CoxeterMatrix& cm, const PerpPair& p);

/* Dense square matrix acting on coefficient vectors. */
struct LinearMap {
  int n = 0;
  std::vector<double> a;  // row major
  static LinearMap identity(int n);
  Vec apply(const Vec& v) const;
  LinearMap then_apply(const LinearMap& rhs) const;  // this * rhs
};

/* The transport along one odd bond (y, z) with order 2k+1: the group
 * element (z y)^k, which carries the simple root of z to that of y and
 * keeps perpendicular positive roots positive. */
Vec edge_transport_apply(const BilinearForm& form, const CoxeterMatrix& cm,
                         int y, int z, const Vec& v);

/* Transport along a reduced path in the odd-bond graph: the composite of
 * its edge transports.  Functorial over path composition.  Throws
 * input_error when some step is not an odd bond. */
LinearMap path_transport(const CoxeterMatrix& cm, const ReducedPath& p);

/* Letters of the transport element, one edge after another. */
std::vector<int> path_transport_word(const CoxeterMatrix& cm,
                                     const ReducedPath& p);

struct Move {
  enum class Kind { sliding, switching };
  Kind kind;
  int at = -1;  // intermediate vertex of a switching
  PerpPair from, to;
  ReducedPath trace;  // mover trajectory in the odd-bond graph
};

/* The order-1 identifications leaving `p`: slidings move the mover along
 * an odd bond to a vertex commuting with the support; switchings exchange
 * mover and support through a common bond-3 neighbor.  Both need the pair
 * bond to be 2; otherwise there are no moves. */
std::vector<Move> available_moves(const CoxeterMatrix& cm, int x,
                                  const PerpPair& p);

/* One row of the local relation table: a third vertex z completing the
 * pair to one of the eleven finite patterns yields a partner pair, a
 * mover trace, and the order of the product of the two generators. */
struct PairRelation {
  int pattern = 0;  // 1..11
  int z = -1;
  PerpPair to;
  ReducedPath trace;
  int order = 0;  // 1 collapses the generators into one
};

std::vector<PairRelation> relation_configurations(const CoxeterMatrix& cm,
                                                  int x, const PerpPair& p);

struct Limits {
  int max_path_len = 16;
  std::size_t max_states = 200000;
};

struct GeneratorElement {
  PerpPair pair;
  ReducedPath path;  // from x to the mover, witnessing the root
  Vec root;
  std::vector<int> word;  // unreduced reflection word
};

struct GeneratorEnumeration {
  std::vector<GeneratorElement> generators;
  /* True when a whole breadth level added no root anywhere, which closes
   * the monotone transport recursion: the set is complete. */
  bool saturated = false;
  int levels_used = 0;
  int last_growth_level = 0;
};

/* The canonical generator roots of the orthogonal-to-x reflection
 * subgroup: transported pair roots over all reduced paths from x, merged
 * by root value.  Walks breadth-first up to limits.max_path_len. */
GeneratorEnumeration enumerate_generators(const CoxeterMatrix& cm, int x,
                                          const Limits& limits = {});

struct GeneratorPresentation {
  std::vector<GeneratorElement> generators;
  /* Pairwise product orders, kInfiniteOrder for infinite; diagonal 1.
   * Derived from the relation table via chain search and independently
   * cross-checked numerically; a mismatch raises internal_error. */
  std::vector<std::vector<int>> orders;
};

/* Requires a saturated enumeration; throws input_error otherwise. */
GeneratorPresentation presentation(const CoxeterMatrix& cm, int x,
                                   const Limits& limits = {});

struct MoveSequence {
  std::vector<Move> moves;
  ReducedPath trace;  // reduced mover trajectory of the whole sequence
};

/* Shortest nonempty move sequence from `p` back to `p` that never undoes
 * its previous move; nullopt when none exists within the limits. */
std::optional<MoveSequence> minimal_closed_move_sequence(
    const CoxeterMatrix& cm, int x, const PerpPair& p,
    const Limits& limits = {});

/* Breadth-first tree path from x to y inside the odd component of x, with
 * lexicographic tie-breaking (the fixed tree all path witnesses share). */
ReducedPath tree_path(const CoxeterMatrix& cm, int x, int y);

}  // namespace perpx
