#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "perpx/coxeter.hpp"

namespace perpx {

using Vec = std::vector<double>;

/* Coordinate tolerance for equality and orthogonality tests. */
constexpr double kTol = 1e-7;
/* Quantization step for the dedup grid (with boundary probing). */
constexpr double kGrid = 1e-6;

Vec basis_vector(int dim, int s);
bool same_vector(const Vec& a, const Vec& b, double tol = kTol);
/* +1 all coordinates >= -tol, -1 all <= tol, 0 mixed. */
int vector_sign(const Vec& v, double tol = kTol);

/* Gram matrix <a_s, a_t> = -cos(pi / m(s,t)), -1 for infinite bonds. */
class BilinearForm {
 public:
  explicit BilinearForm(const CoxeterMatrix& cm);
  int dim() const { return n_; }
  double entry(int i, int j) const { return g_[i * n_ + j]; }
  double inner(const Vec& a, const Vec& b) const;
  /* <a_s, v> */
  double simple_inner(int s, const Vec& v) const;
  Vec apply_simple_reflection(int s, const Vec& v) const;
  /* v - 2 <root, v> root; requires root of unit norm. */
  Vec reflect(const Vec& root, const Vec& v) const;

 private:
  int n_;
  std::vector<double> g_;
};

/* Tolerance-deduplicated vector set with stable insertion indices.  Two
 * vectors within kTol per coordinate are the same element; lookups probe
 * neighboring grid cells so boundary straddling cannot split an element. */
class VectorIndex {
 public:
  explicit VectorIndex(int dim) : dim_(dim) {}
  int find(const Vec& v) const;
  /* Index of v, inserting it if absent. */
  int insert(const Vec& v);
  const std::vector<Vec>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int64_t>& k) const;
  };
  std::vector<int64_t> primary_key(const Vec& v) const;
  std::vector<std::vector<int64_t>> probe_keys(const Vec& v) const;

  int dim_;
  std::vector<Vec> items_;
  std::unordered_map<std::vector<int64_t>, std::vector<int>, KeyHash> cells_;
};

struct RootEnumeration {
  std::vector<Vec> roots;   // level by level, canonical order inside a level
  std::vector<int> depth;   // first level where roots[i] appeared
  int positive_count = 0;
  /* True when a whole level produced nothing new, i.e. the orbit closed
   * and the set is the entire root system. */
  bool complete = false;
  int levels_used = 0;
};

/* Orbit of the simple roots under at most `depth` simple reflections.
 * Throws cap_exceeded past `cap` roots.  The parallel variant distributes
 * each level's frontier over threads; outputs are identical. */
RootEnumeration enumerate_roots(const CoxeterMatrix& cm, int depth,
                                std::size_t cap = 1000000,
                                bool parallel = false);

/* Positive enumerated roots orthogonal to the simple root of x. */
std::vector<Vec> perp_positive_roots(const CoxeterMatrix& cm, int x, int depth,
                                     std::size_t cap = 1000000);

struct CanonicalRootSet {
  std::vector<Vec> roots;
  /* Set when the enumeration was cut by the depth bound, so membership is
   * provisional; a complete enumeration clears it. */
  bool depth_limited = true;
};

/* Roots of the canonical generating reflections of the orthogonal-to-x
 * reflection subgroup, at the given enumeration depth: the perpendicular
 * positive roots whose reflection keeps every other one positive. */
CanonicalRootSet canonical_generators(const CoxeterMatrix& cm, int x,
                                      int depth, std::size_t cap = 1000000);

struct ProductOrder {
  enum class Kind { finite, infinite, unknown };
  Kind kind = Kind::unknown;
  int order = 0;  // q, when finite
  int turns = 0;  // p in the recognized angle p*pi/q
};

/* Order of the product of the two reflections along unit roots, recovered
 * from the pairing: |pairing| >= 1 means infinite, otherwise the angle is
 * matched against p*pi/q with q <= max_order. */
ProductOrder order_of_product(const BilinearForm& form, const Vec& a,
                              const Vec& b, int max_order = 60);

}  // namespace perpx
