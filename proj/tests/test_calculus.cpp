#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "perpx/calculus.hpp"
#include "perpx/decider.hpp"
#include "perpx/errors.hpp"
#include "perpx/geometry.hpp"
#include "perpx/samples.hpp"

using namespace perpx;

namespace {

Vec transported_pair_root(const CoxeterMatrix& cm, const ReducedPath& path,
                          const PerpPair& pr) {
  BilinearForm form(cm);
  Vec v = pair_root(cm, pr);
  const auto& verts = path.vertices();
  for (std::size_t i = verts.size(); i-- > 1;)
    v = edge_transport_apply(form, cm, verts[i - 1], verts[i], v);
  return v;
}

bool root_in(const std::vector<Vec>& set, const Vec& v, double tol = 1e-6) {
  for (const auto& r : set)
    if (same_vector(r, v, tol)) return true;
  return false;
}

}  // namespace

TEST_CASE("pair roots") {
  auto b2 = samples::b2();
  CHECK(same_vector(pair_root(b2, {0, 1}), Vec{1.0, std::sqrt(2.0)}, 1e-12));
  CHECK(pair_word(b2, {0, 1}) == std::vector<int>{1, 0, 1});

  auto a3 = samples::a3();
  CHECK(same_vector(pair_root(a3, {0, 2}), basis_vector(3, 2), 1e-12));
  CHECK(pair_word(a3, {0, 2}) == std::vector<int>{2});

  for (int m : {2, 4, 6, 8}) {
    auto cm = CoxeterMatrix::build({"u", "v"}, {{0, 1, m}});
    BilinearForm form(cm);
    Vec r = pair_root(cm, {0, 1});
    CHECK(std::fabs(form.inner(r, r) - 1.0) < 1e-12);
    CHECK(std::fabs(form.inner(r, basis_vector(2, 0))) < 1e-12);
    CHECK(vector_sign(r) == 1);
  }
  CHECK_THROWS_AS(pair_root(a3, {0, 1}), input_error);   // bond 3
  auto dia = samples::diamond();
  CHECK_THROWS_AS(pair_root(dia, {1, 3}), input_error);  // infinite bond
}

TEST_CASE("transport along odd bonds") {
  auto a3 = samples::a3();
  BilinearForm form(a3);
  // one bond-3 edge carries the far simple root to the near one
  Vec img = edge_transport_apply(form, a3, 0, 1, basis_vector(3, 1));
  CHECK(same_vector(img, basis_vector(3, 0), 1e-12));

  // identity path
  auto id = path_transport(a3, ReducedPath::at(1));
  CHECK(same_vector(id.apply(Vec{0.1, 0.2, 0.3}), Vec{0.1, 0.2, 0.3}, 1e-12));

  // the length-2 walk from one end carries the opposite pair root to the
  // far simple root
  auto p = ReducedPath::of_sequence({0, 1, 2});
  Vec root = transported_pair_root(a3, p, {2, 0});
  CHECK(same_vector(root, basis_vector(3, 2), 1e-12));

  CHECK_THROWS_AS(path_transport(a3, ReducedPath::of_sequence({0, 2})),
                  input_error);

  // functoriality over composition on random walks in the diamond cycle
  auto dia = samples::diamond();
  Graph odd = odd_bond_graph(dia);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, 100);
  auto random_walk = [&](int start, int len) {
    std::vector<int> walk{start};
    for (int i = 0; i < len; ++i) {
      const auto& nb = odd.neighbors(walk.back());
      walk.push_back(nb[pick(rng) % nb.size()]);
    }
    return ReducedPath::of_sequence(walk);
  };
  for (int trial = 0; trial < 25; ++trial) {
    auto pa = random_walk(0, 5);
    auto pb = random_walk(pa.end(), 4);
    auto lhs = path_transport(dia, compose(pa, pb));
    auto rhs = path_transport(dia, pa).then_apply(path_transport(dia, pb));
    Vec probe{0.2, -0.4, 1.0, 0.7};
    CHECK(same_vector(lhs.apply(probe), rhs.apply(probe), 1e-9));
  }
}

TEST_CASE("transport fixes the base root and preserves positivity") {
  auto dia = samples::diamond();
  BilinearForm form(dia);
  Graph odd = odd_bond_graph(dia);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(0, 100);
  auto perp = perp_positive_roots(dia, 1, 8);
  for (int trial = 0; trial < 20; ++trial) {
    // random reduced closed walk at y1
    std::vector<int> walk{1};
    for (int i = 0; i < 6; ++i) {
      const auto& nb = odd.neighbors(walk.back());
      walk.push_back(nb[pick(rng) % nb.size()]);
    }
    auto back = tree_path(dia, walk.back(), 1);
    auto loop = compose(ReducedPath::of_sequence(walk), back);
    auto map = path_transport(dia, loop);
    CHECK(same_vector(map.apply(basis_vector(4, 1)), basis_vector(4, 1),
                      1e-9));
    for (const auto& r : perp) CHECK(vector_sign(map.apply(r)) == 1);
  }
}

TEST_CASE("perp pairs") {
  auto a3 = samples::a3();
  auto pairs = perp_pairs(a3, 0);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == PerpPair{0, 2});
  CHECK(pairs[1] == PerpPair{2, 0});

  auto b2 = samples::b2();
  auto bp = perp_pairs(b2, 0);
  REQUIRE(bp.size() == 1);
  CHECK(bp[0] == PerpPair{0, 1});  // the mirrored pair has its mover outside

  auto dia = samples::diamond();
  auto dp = perp_pairs(dia, 1);
  REQUIRE(dp.size() == 2);
  CHECK(dp[0] == PerpPair{0, 2});
  CHECK(dp[1] == PerpPair{2, 0});
}

TEST_CASE("available moves") {
  auto sq = samples::all3_cycle(4);
  auto moves = available_moves(sq, 0, {0, 2});
  REQUIRE(moves.size() == 2);
  for (const auto& mv : moves) {
    CHECK(mv.kind == Move::Kind::switching);
    CHECK(mv.to == PerpPair{2, 0});
    CHECK(mv.trace.length() == 2);
  }
  CHECK(moves[0].at != moves[1].at);

  // no moves when the pair bond exceeds 2
  auto b2 = samples::b2();
  CHECK(available_moves(b2, 0, {0, 1}).empty());

  // a bond-3 path with commuting ends: one switching, no slidings
  auto path = parse_matrix("gens a b c\nm a b 3\nm b c 3\n", "path");
  auto pm = available_moves(path, 0, {0, 2});
  REQUIRE(pm.size() == 1);
  CHECK(pm[0].kind == Move::Kind::switching);
  CHECK(pm[0].at == 1);
  CHECK(pm[0].to == PerpPair{2, 0});

  // pendant pair with unbounded side bonds: no moves at all
  auto g4 = samples::odd_triangle_pendant();
  CHECK(available_moves(g4, 0, {0, 3}).empty());

  // sliding along the pentagon
  auto penta = samples::all3_cycle(5);
  auto sm = available_moves(penta, 0, {2, 0});
  REQUIRE(sm.size() == 2);  // one sliding to (3,0), one switching at y1
  bool saw_sliding = false, saw_switching = false;
  for (const auto& mv : sm) {
    if (mv.kind == Move::Kind::sliding) {
      saw_sliding = true;
      CHECK(mv.to == PerpPair{3, 0});
      CHECK(mv.trace.vertices() == std::vector<int>{2, 3});
    } else {
      saw_switching = true;
      CHECK(mv.to == PerpPair{0, 2});
      CHECK(mv.trace.vertices() == std::vector<int>{2, 1, 0});
    }
  }
  CHECK(saw_sliding);
  CHECK(saw_switching);
}

namespace {

struct PatternCase {
  int pattern;
  int a, b, c;  // bond orders (o,d), (o,z), (d,z)
  int expect_order;
  PerpPair expect_to;          // names o=0, d=1, z=2
  std::vector<int> expect_trace;
};

}  // namespace

TEST_CASE("the eleven local patterns and their orders") {
  const std::vector<PatternCase> cases = {
      {1, 2, 2, 2, 2, {0, 2}, {0}},
      {1, 2, 2, 3, 3, {0, 2}, {0}},
      {1, 2, 2, 5, 5, {0, 2}, {0}},
      {1, 2, 2, 6, 6, {0, 2}, {0}},
      {2, 2, 4, 2, 2, {0, 2}, {0}},
      {2, 2, 6, 2, 2, {0, 2}, {0}},
      {3, 2, 4, 3, 4, {0, 2}, {0}},
      {4, 2, 3, 2, 1, {2, 1}, {0, 2}},
      {4, 2, 5, 2, 1, {2, 1}, {0, 2}},
      {5, 2, 3, 3, 1, {1, 0}, {0, 2, 1}},
      {6, 2, 3, 5, 2, {1, 0}, {0, 2, 1}},
      {7, 2, 5, 3, 2, {1, 0}, {0, 2, 1}},
      {8, 2, 3, 4, 2, {2, 1}, {0, 2}},
      {9, 4, 2, 2, 2, {0, 2}, {0}},
      {9, 6, 2, 2, 2, {0, 2}, {0}},
      {10, 4, 2, 3, 4, {0, 2}, {0}},
      {11, 4, 3, 2, 2, {2, 1}, {0, 2}},
  };
  for (const auto& pc : cases) {
    CAPTURE(pc.pattern);
    CAPTURE(pc.a);
    CAPTURE(pc.b);
    CAPTURE(pc.c);
    auto cm = CoxeterMatrix::build(
        {"o", "d", "z"}, {{0, 1, pc.a}, {0, 2, pc.b}, {1, 2, pc.c}});
    auto rels = relation_configurations(cm, 0, {0, 1});
    REQUIRE(rels.size() == 1);
    const auto& rel = rels[0];
    CHECK(rel.pattern == pc.pattern);
    CHECK(rel.order == pc.expect_order);
    CHECK(rel.to == pc.expect_to);
    CHECK(rel.trace.vertices() == pc.expect_trace);

    // numerical order of the two generator roots matches the table
    BilinearForm form(cm);
    Vec g1 = pair_root(cm, {0, 1});
    Vec g2 = transported_pair_root(cm, rel.trace, rel.to);
    if (rel.order == 1) {
      CHECK(same_vector(g1, g2, 1e-9));
    } else {
      auto po = order_of_product(form, g1, g2);
      CHECK(po.kind == ProductOrder::Kind::finite);
      CHECK(po.order == rel.order);
    }
  }

  // label triples whose span is not finite yield no relation
  for (auto [a, b, c] : std::vector<std::tuple<int, int, int>>{
           {2, 3, 6},
           {2, 4, 4},
           {2, 6, 3},
           {4, 3, 3},
           {6, 2, 3},
           {2, kInfiniteOrder, 2},
           {2, 2, kInfiniteOrder},
           {4, 4, 2}}) {
    auto cm =
        CoxeterMatrix::build({"o", "d", "z"}, {{0, 1, a}, {0, 2, b}, {1, 2, c}});
    CHECK(relation_configurations(cm, 0, {0, 1}).empty());
  }
}

TEST_CASE("move soundness: order-1 relations equate the roots") {
  for (auto cm : {samples::diamond(), samples::all3_cycle(4),
                  samples::all3_cycle(5)}) {
    for (const auto& pr : perp_pairs(cm, 0)) {
      for (const auto& mv : available_moves(cm, 0, pr)) {
        Vec lhs = pair_root(cm, pr);
        Vec rhs = transported_pair_root(cm, mv.trace, mv.to);
        CHECK(same_vector(lhs, rhs, 1e-9));
      }
    }
  }
}

TEST_CASE("generator enumeration on the worked systems") {
  auto a3 = samples::a3();
  auto en = enumerate_generators(a3, 0);
  CHECK(en.saturated);
  REQUIRE(en.generators.size() == 1);
  CHECK(same_vector(en.generators[0].root, basis_vector(3, 2), 1e-9));

  auto b2 = samples::b2();
  auto ben = enumerate_generators(b2, 0);
  CHECK(ben.saturated);
  REQUIRE(ben.generators.size() == 1);
  CHECK(same_vector(ben.generators[0].root, Vec{1.0, std::sqrt(2.0)}, 1e-9));
  CHECK(ben.generators[0].word == std::vector<int>{1, 0, 1});

  // the transported family on the pendant triangle keeps growing
  auto g4 = samples::odd_triangle_pendant();
  auto gen = enumerate_generators(g4, 0, {12, 100000});
  CHECK_FALSE(gen.saturated);
  CHECK(gen.generators.size() > 4);

  // the diamond's two pair directions collapse through the apex
  // switchings into a single generator
  auto dia = samples::diamond();
  auto den = enumerate_generators(dia, dia.require("y1"));
  CHECK(den.saturated);
  REQUIRE(den.generators.size() == 1);
  CHECK(same_vector(den.generators[0].root, Vec{1.0, 1.0, 1.0, 0.0}, 1e-9));

  // every root is positive, unit and orthogonal to the base simple root
  for (const CoxeterMatrix& cm :
       {samples::diamond(), samples::all3_cycle(4), samples::all3_cycle(5)}) {
    BilinearForm form(cm);
    auto e = enumerate_generators(cm, 0);
    CHECK(e.saturated);
    for (const auto& ge : e.generators) {
      CHECK(vector_sign(ge.root) == 1);
      CHECK(std::fabs(form.inner(ge.root, ge.root) - 1.0) < 1e-9);
      CHECK(std::fabs(form.inner(ge.root, basis_vector(cm.rank(), 0))) <
            1e-9);
    }
  }
}

TEST_CASE("generator words act as the reflection along their root") {
  for (const CoxeterMatrix& cm :
       {samples::a3(), samples::b2(), samples::diamond(),
        samples::all3_cycle(5)}) {
    BilinearForm form(cm);
    auto en = enumerate_generators(cm, 0);
    Vec probe(cm.rank());
    for (int i = 0; i < cm.rank(); ++i) probe[i] = 0.3 + 0.41 * i;
    for (const auto& ge : en.generators) {
      Vec by_word = probe;
      for (std::size_t i = ge.word.size(); i-- > 0;)
        by_word = form.apply_simple_reflection(ge.word[i], by_word);
      CHECK(same_vector(by_word, form.reflect(ge.root, probe), 1e-9));
    }
  }
  // witness-family words too
  auto g4 = samples::odd_triangle_pendant();
  auto v = decide(g4, 0);
  std::string diag;
  auto family = infinite_witness_family(g4, 0, v, 4, &diag);
  REQUIRE(family.size() == 4);
  BilinearForm form(g4);
  Vec probe{0.2, 0.5, -0.3, 0.9};
  for (const auto& ge : family) {
    Vec by_word = probe;
    for (std::size_t i = ge.word.size(); i-- > 0;)
      by_word = form.apply_simple_reflection(ge.word[i], by_word);
    CHECK(same_vector(by_word, form.reflect(ge.root, probe), 1e-9));
  }
}

TEST_CASE("enumeration agrees with the root-orbit oracle when saturated") {
  for (const CoxeterMatrix& cm :
       {samples::a3(), samples::b2(), samples::diamond(),
        samples::all3_cycle(4), samples::all3_cycle(5)}) {
    auto en = enumerate_generators(cm, 0);
    REQUIRE(en.saturated);
    auto oracle = canonical_generators(cm, 0, 12);
    CHECK(en.generators.size() == oracle.roots.size());
    for (const auto& ge : en.generators)
      CHECK(root_in(oracle.roots, ge.root));
  }
}

TEST_CASE("restriction monotonicity on nested generator sets") {
  auto dia = samples::diamond();
  std::vector<int> sub{0, 1, 2};
  auto small = dia.restricted(sub);
  auto en_small = enumerate_generators(small, 1);
  auto en_big = enumerate_generators(dia, 1);
  REQUIRE(en_small.saturated);
  REQUIRE(en_big.saturated);
  for (const auto& ge : en_small.generators) {
    Vec padded(4, 0.0);
    for (int i = 0; i < 3; ++i) padded[sub[i]] = ge.root[i];
    bool found = false;
    for (const auto& big : en_big.generators)
      if (same_vector(big.root, padded, 1e-9)) found = true;
    CHECK(found);
  }
}

TEST_CASE("conjugate base points give transported generator sets") {
  for (const CoxeterMatrix& cm :
       {samples::diamond(), samples::all3_cycle(4), samples::a3()}) {
    auto O = odd_component(cm, 0);
    auto en_x = enumerate_generators(cm, 0);
    REQUIRE(en_x.saturated);
    for (int y : O) {
      auto en_y = enumerate_generators(cm, y);
      REQUIRE(en_y.saturated);
      REQUIRE(en_y.generators.size() == en_x.generators.size());
      auto w = path_transport(cm, tree_path(cm, y, 0));
      std::vector<Vec> mapped;
      for (const auto& ge : en_x.generators)
        mapped.push_back(w.apply(ge.root));
      for (const auto& ge : en_y.generators)
        CHECK(root_in(mapped, ge.root, 1e-9));
    }
  }
}

TEST_CASE("boundary generators: cycle core with a commuting hub") {
  // all-3 square plus a hub commuting with every cycle vertex: the hub
  // pairs all collapse into one extra generator orthogonal to the rest
  auto cm = parse_matrix(
      "gens y0 y1 y2 y3 e\n"
      "m y0 y1 3\nm y1 y2 3\nm y2 y3 3\nm y3 y0 3\n",
      "square-with-hub");
  auto v = decide(cm, 0);
  CHECK(v.finite);
  CHECK(v.det_case == "1b");
  CHECK(v.E == std::vector<int>{4});
  auto en = enumerate_generators(cm, 0);
  REQUIRE(en.saturated);
  CHECK(en.generators.size() == 3);
  bool has_hub_root = false;
  for (const auto& ge : en.generators)
    if (same_vector(ge.root, basis_vector(5, 4), 1e-9)) has_hub_root = true;
  CHECK(has_hub_root);
  auto oracle = canonical_generators(cm, 0, 12);
  CHECK(oracle.roots.size() == 3);
  auto pres = presentation(cm, 0);
  // the hub generator commutes with both cycle-chord generators
  int hub = -1;
  for (std::size_t i = 0; i < pres.generators.size(); ++i)
    if (same_vector(pres.generators[i].root, basis_vector(5, 4), 1e-9))
      hub = static_cast<int>(i);
  REQUIRE(hub >= 0);
  for (std::size_t j = 0; j < pres.generators.size(); ++j)
    if (static_cast<int>(j) != hub) CHECK(pres.orders[hub][j] == 2);
}

TEST_CASE("boundary generators: acyclic chain with a two-ended cap") {
  // bond-3 chain with a cap commuting with both ends and unbounded
  // against the middle: the cap's order-2 partner set falls into two
  // odd components, so the cap contributes two distinct generators
  auto cm = parse_matrix(
      "gens y0 y1 y2 e\n"
      "m y0 y1 3\nm y1 y2 3\n"
      "m y0 e 2\nm y2 e 2\nm y1 e inf\n",
      "capped-chain");
  auto v = decide(cm, 0);
  CHECK(v.finite);
  CHECK_FALSE(v.with_cycle);
  auto en = enumerate_generators(cm, 0);
  REQUIRE(en.saturated);
  REQUIRE(en.generators.size() == 3);
  auto oracle = canonical_generators(cm, 0, 12);
  CHECK(oracle.roots.size() == 3);
  // frozen roots: the cap simple root, the far transported cap root, and
  // the middle chord root
  bool cap = false, far = false, mid = false;
  for (const auto& ge : en.generators) {
    if (same_vector(ge.root, Vec{0, 0, 0, 1}, 1e-9)) cap = true;
    if (same_vector(ge.root, Vec{2, 4, 2, 1}, 1e-9)) far = true;
    if (same_vector(ge.root, Vec{0, 0, 1, 0}, 1e-9)) mid = true;
  }
  CHECK(cap);
  CHECK(far);
  CHECK(mid);
  auto pres = presentation(cm, 0);
  // orders: cap/mid 2, far/mid 2, cap/far unbounded
  std::vector<int> sorted_orders;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      sorted_orders.push_back(pres.orders[i][j]);
  std::sort(sorted_orders.begin(), sorted_orders.end());
  CHECK(sorted_orders == std::vector<int>({2, 2, kInfiniteOrder}));
}

TEST_CASE("presentations with a dual-route order check") {
  auto a3 = samples::a3();
  auto pres = presentation(a3, 0);
  REQUIRE(pres.orders.size() == 1);
  CHECK(pres.orders[0][0] == 1);

  auto b2 = samples::b2();
  CHECK(presentation(b2, 0).orders.size() == 1);

  // the two square generators pair to an unbounded product
  auto sq = samples::all3_cycle(4);
  auto sp = presentation(sq, 0);
  REQUIRE(sp.orders.size() == 2);
  CHECK(sp.orders[0][1] == kInfiniteOrder);

  // pentagon: three generators pairwise of order 3
  auto penta = samples::all3_cycle(5);
  auto pp = presentation(penta, 0);
  REQUIRE(pp.orders.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(pp.orders[i][j] == (i == j ? 1 : 3));

  // refuse on a truncated enumeration
  auto g4 = samples::odd_triangle_pendant();
  CHECK_THROWS_AS(presentation(g4, 0, {10, 50000}), input_error);
}

TEST_CASE("presentation dual-route stress over random finite systems") {
  std::mt19937 rng(987654);
  const int orders[] = {2, 3, 4, 5, 7, kInfiniteOrder};
  std::uniform_int_distribution<int> mdist(0, 5);
  int done = 0, inconclusive = 0;
  while (done < 120) {
    int n = 3 + mdist(rng) % 4;  // ranks 3..6
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
    std::vector<std::tuple<int, int, int>> entries;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        entries.emplace_back(i, j, orders[mdist(rng)]);
    auto cm = CoxeterMatrix::build(names, entries);
    int x = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (!decide(cm, x).finite) continue;
    ++done;
    try {
      auto pres = presentation(cm, x, Limits{24, 300000});
      // the order matrix is a legal bond table
      for (std::size_t i = 0; i < pres.orders.size(); ++i) {
        CHECK(pres.orders[i][i] == 1);
        for (std::size_t j = i + 1; j < pres.orders.size(); ++j) {
          CHECK(pres.orders[i][j] == pres.orders[j][i]);
          CHECK(pres.orders[i][j] >= 2);
        }
      }
    } catch (const cap_exceeded&) {
      ++inconclusive;  // capped sweep, not a disagreement
    }
  }
  CHECK(inconclusive < 10);
}

TEST_CASE("minimal closed move sequences and their windings") {
  auto sq = samples::all3_cycle(4);
  auto seq = minimal_closed_move_sequence(sq, 0, {0, 2});
  REQUIRE(seq.has_value());
  CHECK(seq->moves.size() == 2);
  CHECK(seq->trace.length() == 4);  // one lap of the square

  auto penta = samples::all3_cycle(5);
  auto pseq = minimal_closed_move_sequence(penta, 0, {2, 0});
  REQUIRE(pseq.has_value());
  CHECK(pseq->trace.length() == 15);  // three laps of the pentagon

  auto b2 = samples::b2();
  CHECK_FALSE(minimal_closed_move_sequence(b2, 0, {0, 1}).has_value());
}

TEST_CASE("tree paths") {
  auto a3 = samples::a3();
  CHECK(tree_path(a3, 0, 2).vertices() == std::vector<int>{0, 1, 2});
  CHECK(tree_path(a3, 0, 0).is_identity());
  auto b2 = samples::b2();
  CHECK_THROWS_AS(tree_path(b2, 0, 1), input_error);
}
