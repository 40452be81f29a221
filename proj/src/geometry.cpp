#include "perpx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "perpx/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perpx {

Vec basis_vector(int dim, int s) {
  Vec v(dim, 0.0);
  v[s] = 1.0;
  return v;
}

bool same_vector(const Vec& a, const Vec& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return false;
  return true;
}

int vector_sign(const Vec& v, double tol) {
  bool nonneg = true, nonpos = true;
  for (double c : v) {
    if (c < -tol) nonneg = false;
    if (c > tol) nonpos = false;
  }
  if (nonneg && !nonpos) return 1;
  if (nonpos && !nonneg) return -1;
  return 0;
}

BilinearForm::BilinearForm(const CoxeterMatrix& cm) : n_(cm.rank()) {
  g_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      int m = cm.order(i, j);
      double e;
      if (i == j)
        e = 1.0;
      else if (!finite_order(m))
        e = -1.0;
      else
        e = -std::cos(M_PI / m);
      g_[i * n_ + j] = e;
    }
}

double BilinearForm::inner(const Vec& a, const Vec& b) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += g_[i * n_ + j] * b[j];
    s += a[i] * row;
  }
  return s;
}

double BilinearForm::simple_inner(int s, const Vec& v) const {
  double r = 0.0;
  for (int j = 0; j < n_; ++j) r += g_[s * n_ + j] * v[j];
  return r;
}

Vec BilinearForm::apply_simple_reflection(int s, const Vec& v) const {
  Vec out = v;
  out[s] -= 2.0 * simple_inner(s, v);
  return out;
}

Vec BilinearForm::reflect(const Vec& root, const Vec& v) const {
  if (std::fabs(inner(root, root) - 1.0) > 100 * kTol)
    throw input_error("reflection root is not of unit norm");
  double c = 2.0 * inner(root, v);
  Vec out = v;
  for (int i = 0; i < n_; ++i) out[i] -= c * root[i];
  return out;
}

std::size_t VectorIndex::KeyHash::operator()(
    const std::vector<int64_t>& k) const {
  std::size_t h = 1469598103934665603ull;
  for (int64_t x : k) {
    h ^= static_cast<std::size_t>(x);
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<int64_t> VectorIndex::primary_key(const Vec& v) const {
  std::vector<int64_t> k(dim_);
  for (int i = 0; i < dim_; ++i) k[i] = llround(v[i] / kGrid);
  return k;
}

std::vector<std::vector<int64_t>> VectorIndex::probe_keys(const Vec& v) const {
  // Cell boundaries sit at half-grid offsets; a coordinate close to one may
  // quantize either way for vectors equal within kTol.
  const double margin = 0.5 - 2.0 * kTol / kGrid;
  std::vector<std::vector<int64_t>> keys{primary_key(v)};
  for (int i = 0; i < dim_; ++i) {
    double q = v[i] / kGrid;
    int64_t k0 = llround(q);
    double off = q - static_cast<double>(k0);
    int64_t alt = 0;
    if (off > margin)
      alt = k0 + 1;
    else if (off < -margin)
      alt = k0 - 1;
    else
      continue;
    std::size_t count = keys.size();
    if (count * 2 > 4096) break;  // beyond this find() degrades to a scan
    for (std::size_t j = 0; j < count; ++j) {
      keys.push_back(keys[j]);
      keys.back()[i] = alt;
    }
  }
  return keys;
}

int VectorIndex::find(const Vec& v) const {
  for (const auto& key : probe_keys(v)) {
    auto it = cells_.find(key);
    if (it == cells_.end()) continue;
    for (int idx : it->second)
      if (same_vector(items_[idx], v)) return idx;
  }
  return -1;
}

int VectorIndex::insert(const Vec& v) {
  int idx = find(v);
  if (idx >= 0) return idx;
  idx = static_cast<int>(items_.size());
  items_.push_back(v);
  cells_[primary_key(v)].push_back(idx);
  return idx;
}

namespace {

std::vector<int64_t> quantized(const Vec& v) {
  std::vector<int64_t> k(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) k[i] = llround(v[i] / kGrid);
  return k;
}

/* Canonical in-level order: quantized key, then exact coordinates, which
 * is a total order independent of production order. */
void sort_level(std::vector<Vec>& level) {
  std::vector<std::pair<std::vector<int64_t>, std::size_t>> keyed;
  keyed.reserve(level.size());
  for (std::size_t i = 0; i < level.size(); ++i)
    keyed.emplace_back(quantized(level[i]), i);
  std::sort(keyed.begin(), keyed.end(),
            [&](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return level[a.second] < level[b.second];
            });
  std::vector<Vec> out;
  out.reserve(level.size());
  for (const auto& [key, i] : keyed) out.push_back(std::move(level[i]));
  level = std::move(out);
}

}  // namespace

RootEnumeration enumerate_roots(const CoxeterMatrix& cm, int depth,
                                std::size_t cap, bool parallel) {
  if (depth < 0) throw input_error("negative enumeration depth");
  const int n = cm.rank();
  BilinearForm form(cm);
  RootEnumeration out;
  VectorIndex index(n);

  std::vector<Vec> level;
  for (int s = 0; s < n; ++s) level.push_back(basis_vector(n, s));
  sort_level(level);
  std::vector<int> frontier;
  for (const auto& v : level) {
    int idx = index.insert(v);
    out.roots.push_back(v);
    out.depth.push_back(0);
    frontier.push_back(idx);
  }

  for (int lvl = 1; lvl <= depth; ++lvl) {
    // Reflect the frontier and drop candidates already present; the
    // read-only membership probe is safe from many threads.
    std::vector<Vec> candidates;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel
      {
        std::vector<Vec> local;
#pragma omp for schedule(static) nowait
        for (std::size_t fi = 0; fi < frontier.size(); ++fi)
          for (int s = 0; s < n; ++s) {
            Vec r =
                form.apply_simple_reflection(s, index.items()[frontier[fi]]);
            if (index.find(r) < 0) local.push_back(std::move(r));
          }
#pragma omp critical
        candidates.insert(candidates.end(),
                          std::make_move_iterator(local.begin()),
                          std::make_move_iterator(local.end()));
      }
    } else
#endif
    {
      (void)parallel;
      for (std::size_t fi = 0; fi < frontier.size(); ++fi)
        for (int s = 0; s < n; ++s) {
          Vec r =
              form.apply_simple_reflection(s, index.items()[frontier[fi]]);
          if (index.find(r) < 0) candidates.push_back(std::move(r));
        }
    }
    sort_level(candidates);
    std::vector<int> next;
    for (const auto& v : candidates) {
      if (index.find(v) >= 0) continue;
      int idx = index.insert(v);
      out.roots.push_back(v);
      out.depth.push_back(lvl);
      next.push_back(idx);
      if (out.roots.size() > cap)
        throw cap_exceeded("root cap of " + std::to_string(cap) +
                           " exceeded during enumeration");
    }
    out.levels_used = lvl;
    if (next.empty()) {
      out.complete = true;
      break;
    }
    frontier = std::move(next);
  }
  if (depth == 0) out.complete = (n == 0);

  for (const auto& v : out.roots) {
    int sign = vector_sign(v);
    if (sign == 0)
      throw internal_error("enumerated root with mixed coordinate signs");
    if (sign > 0) ++out.positive_count;
  }
  return out;
}

std::vector<Vec> perp_positive_roots(const CoxeterMatrix& cm, int x, int depth,
                                     std::size_t cap) {
  if (x < 0 || x >= cm.rank()) throw input_error("unknown generator index");
  BilinearForm form(cm);
  Vec ax = basis_vector(cm.rank(), x);
  auto en = enumerate_roots(cm, depth, cap);
  std::vector<Vec> out;
  for (const auto& r : en.roots)
    if (vector_sign(r) > 0 && std::fabs(form.inner(r, ax)) <= kTol)
      out.push_back(r);
  return out;
}

CanonicalRootSet canonical_generators(const CoxeterMatrix& cm, int x,
                                      int depth, std::size_t cap) {
  if (x < 0 || x >= cm.rank()) throw input_error("unknown generator index");
  BilinearForm form(cm);
  Vec ax = basis_vector(cm.rank(), x);
  auto en = enumerate_roots(cm, depth, cap);
  std::vector<Vec> perp;
  for (const auto& r : en.roots)
    if (vector_sign(r) > 0 && std::fabs(form.inner(r, ax)) <= kTol)
      perp.push_back(r);

  CanonicalRootSet out;
  out.depth_limited = !en.complete;
  for (const auto& g : perp) {
    bool canonical = true;
    for (const auto& d : perp) {
      if (&d == &g || same_vector(d, g)) continue;
      if (vector_sign(form.reflect(g, d)) < 0) {
        canonical = false;
        break;
      }
    }
    if (canonical) out.roots.push_back(g);
  }
  return out;
}

ProductOrder order_of_product(const BilinearForm& form, const Vec& a,
                              const Vec& b, int max_order) {
  if (std::fabs(form.inner(a, a) - 1.0) > 100 * kTol ||
      std::fabs(form.inner(b, b) - 1.0) > 100 * kTol)
    throw input_error("product order requires unit roots");
  double c = form.inner(a, b);
  ProductOrder out;
  if (same_vector(a, b)) {
    out.kind = ProductOrder::Kind::finite;
    out.order = 1;
    return out;
  }
  if (std::fabs(c) >= 1.0 - kTol) {
    out.kind = ProductOrder::Kind::infinite;
    return out;
  }
  // pairing = -cos(pi p / q) for reflections whose product has order q
  const double rec_tol = 1e-6;
  for (int q = 2; q <= max_order; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      if (std::fabs(-std::cos(M_PI * p / q) - c) <= rec_tol) {
        out.kind = ProductOrder::Kind::finite;
        out.order = q;
        out.turns = p;
        return out;
      }
    }
  }
  out.kind = ProductOrder::Kind::unknown;
  return out;
}

}  // namespace perpx
