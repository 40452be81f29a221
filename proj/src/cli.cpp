#include "perpx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perpx/calculus.hpp"
#include "perpx/coxeter.hpp"
#include "perpx/decider.hpp"
#include "perpx/errors.hpp"
#include "perpx/geometry.hpp"
#include "perpx/io.hpp"
#include "perpx/samples.hpp"

namespace perpx {

namespace {

using nlohmann::ordered_json;

std::string root_text(const CoxeterMatrix& cm, const Vec& v) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < cm.rank(); ++i) {
    if (std::fabs(v[i]) <= kTol) continue;
    if (!first) out << " + ";
    first = false;
    out << v[i] << "*a[" << cm.name(i) << "]";
  }
  if (first) out << "0";
  return out.str();
}

void print_verdict_text(std::ostream& out, const CoxeterMatrix& cm,
                        const Verdict& v) {
  out << "decision: " << (v.finite ? "finite" : "infinite") << "\n";
  out << "branch: " << (v.with_cycle ? "with-cycle" : "acyclic") << "\n";
  out << "case: " << v.det_case << "\n";
  auto names = [&](const std::vector<int>& ids) {
    std::string s;
    for (int id : ids) s += (s.empty() ? "" : " ") + cm.name(id);
    return s;
  };
  out << "O: " << names(v.O) << "\n";
  out << "K: " << names(v.K) << "\n";
  out << "E: " << names(v.E) << "\n";
  for (const auto& [s, ys] : v.O2)
    out << "O2(" << cm.name(s) << "): " << names(ys) << "\n";
  for (const auto& c : v.conditions)
    out << "condition " << c.id << ": " << (c.holds ? "holds" : "fails")
        << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  if (v.violation)
    out << "violation: condition " << v.violation->condition << ": "
        << v.violation->detail << "\n";
}

int self_test(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };

  {
    auto cm = samples::a3();
    auto v = decide(cm, cm.require("1"));
    auto en = enumerate_generators(cm, cm.require("1"));
    Vec a3 = basis_vector(3, cm.require("3"));
    check("path system: finite, acyclic branch",
          v.finite && !v.with_cycle);
    check("path system: one generator with the far simple root",
          en.saturated && en.generators.size() == 1 &&
              same_vector(en.generators[0].root, a3, 1e-9));
  }
  {
    auto cm = samples::b2();
    auto v = decide(cm, cm.require("s"));
    auto en = enumerate_generators(cm, cm.require("s"));
    Vec expect{1.0, std::sqrt(2.0)};
    check("bond-4 dihedral: finite with the dihedral midroot",
          v.finite && en.saturated && en.generators.size() == 1 &&
              same_vector(en.generators[0].root, expect, 1e-9));
  }
  {
    auto cm = samples::diamond();
    int x = cm.require("y1");
    auto v = decide(cm, x);
    auto en = enumerate_generators(cm, x);
    auto oracle = canonical_generators(cm, x, 12);
    bool agree = en.generators.size() == oracle.roots.size();
    if (agree)
      for (const auto& ge : en.generators) {
        bool found = false;
        for (const auto& r : oracle.roots)
          if (same_vector(r, ge.root, 1e-6)) found = true;
        agree = agree && found;
      }
    check("diamond: finite via the bipyramid core", v.finite &&
          v.det_case == "1c");
    check("diamond: transport and root-orbit routes agree",
          en.saturated && agree);
  }
  {
    auto cm = samples::odd_triangle_pendant();
    int x = cm.require("a");
    auto v = decide(cm, x);
    std::string diag;
    auto family = infinite_witness_family(cm, x, v, 6, &diag);
    check("pendant triangle: infinite with a partner-set violation",
          !v.finite && v.violation && v.violation->condition == "4");
    check("pendant triangle: six distinct witness roots",
          family.size() == 6);
  }
  {
    auto cm = samples::all3_cycle(4);
    int x = 0;
    auto v = decide(cm, x);
    auto seq = minimal_closed_move_sequence(cm, x, {0, 2});
    check("all-3 square: finite via the all-3 cycle core",
          v.finite && v.det_case == "1b");
    check("all-3 square: shortest closed move sequence winds once",
          seq && seq->trace.length() == 4);
  }
  {
    auto cm = samples::all3_cycle(5);
    auto v = decide(cm, 0);
    auto seq = minimal_closed_move_sequence(cm, 0, {2, 0});
    check("all-3 pentagon: finite via the all-3 cycle core",
          v.finite && v.det_case == "1b");
    check("all-3 pentagon: shortest closed move sequence winds thrice",
          seq && seq->trace.length() == 15);
  }
  {
    // every local relation pattern carries its tabulated product order
    struct Row {
      int a, b, c, k;
    };
    const Row rows[] = {{2, 2, 5, 5}, {2, 4, 2, 2}, {2, 4, 3, 4},
                        {2, 3, 2, 1}, {2, 3, 3, 1}, {2, 3, 5, 2},
                        {2, 5, 3, 2}, {2, 3, 4, 2}, {6, 2, 2, 2},
                        {4, 2, 3, 4}, {4, 3, 2, 2}};
    bool ok = true;
    for (const auto& row : rows) {
      auto cm = CoxeterMatrix::build(
          {"o", "d", "z"}, {{0, 1, row.a}, {0, 2, row.b}, {1, 2, row.c}});
      auto rels = relation_configurations(cm, 0, {0, 1});
      if (rels.size() != 1 || rels[0].order != row.k) {
        ok = false;
        continue;
      }
      BilinearForm form(cm);
      Vec g1 = pair_root(cm, {0, 1});
      Vec g2 = pair_root(cm, rels[0].to);
      const auto& verts = rels[0].trace.vertices();
      for (std::size_t i = verts.size(); i-- > 1;)
        g2 = edge_transport_apply(form, cm, verts[i - 1], verts[i], g2);
      if (row.k == 1) {
        ok = ok && same_vector(g1, g2, 1e-9);
      } else {
        auto po = order_of_product(form, g1, g2);
        ok = ok && po.kind == ProductOrder::Kind::finite &&
             po.order == row.k;
      }
    }
    check("local relation patterns carry their tabulated orders", ok);
  }
  return failures == 0 ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"explorer for the reflections commuting with a generator"};
  app.require_subcommand(1);

  std::string file, xname, from_pair;
  bool json = false, dot = false, full = false, compare = false;
  int depth = 12, witnesses = 0;
  Limits limits;

  auto add_common = [&](CLI::App* sub, bool needs_x) {
    sub->add_option("file", file, "matrix file")->required();
    auto* xopt =
        sub->add_option("-x,--generator", xname, "distinguished generator");
    if (needs_x) xopt->required();
    sub->add_flag("--json", json, "machine-readable output");
    return sub;
  };

  auto* cmd_decide = add_common(
      app.add_subcommand(
          "decide",
          "finiteness of the commuting reflection subgroup, with witnesses"),
      true);
  cmd_decide->add_option("--witnesses", witnesses,
                         "emit this many distinct roots when infinite");
  auto* cmd_gens = add_common(
      app.add_subcommand("generators",
                         "canonical generator roots via the transport walk"),
      true);
  cmd_gens
      ->add_option("--max-path-len", limits.max_path_len,
                   "breadth bound of the transport walk")
      ->capture_default_str();
  cmd_gens->add_option("--max-states", limits.max_states, "state cap")
      ->capture_default_str();
  auto* cmd_pres = add_common(
      app.add_subcommand(
          "presentation",
          "pairwise product orders of the canonical generators"),
      true);
  cmd_pres->add_option("--max-path-len", limits.max_path_len, "")
      ->capture_default_str();
  cmd_pres->add_option("--max-states", limits.max_states, "")
      ->capture_default_str();
  auto* cmd_oracle = add_common(
      app.add_subcommand("oracle",
                         "brute-force canonical roots from the root orbit"),
      true);
  cmd_oracle->add_option("--depth", depth, "root enumeration depth")
      ->capture_default_str();
  cmd_oracle->add_flag("--compare", compare,
                       "also run the transport route and compare");
  auto* cmd_moves = add_common(
      app.add_subcommand("moves",
                         "pair states reachable by slidings and switchings"),
      true);
  cmd_moves
      ->add_option("--from", from_pair, "starting pair, written mover,support")
      ->required();
  auto* cmd_odd =
      app.add_subcommand("odd-graph", "odd-bond graph view (DOT or JSON)");
  cmd_odd->add_option("file", file, "matrix file")->required();
  cmd_odd->add_flag("--json", json, "machine-readable output");
  cmd_odd->add_flag("--dot", dot, "DOT output");
  cmd_odd->add_flag("--full", full, "draw every bond of order >= 3");
  auto* cmd_core = add_common(
      app.add_subcommand("cycle-core", "odd component and its cycle core"),
      true);
  cmd_core->add_flag("--dot", dot, "DOT output with core vertices doubled");
  auto* cmd_self =
      app.add_subcommand("selftest", "replay the worked structural examples");
  (void)cmd_self;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (app.got_subcommand("selftest")) return self_test(out);

    CoxeterMatrix cm = parse_matrix_file(file);

    if (app.got_subcommand("decide")) {
      int x = cm.require(xname);
      auto v = decide(cm, x);
      if (json) {
        auto j = verdict_json(cm, v);
        if (!v.finite && witnesses > 0) {
          std::string diag;
          auto family = infinite_witness_family(cm, x, v, witnesses, &diag);
          auto arr = ordered_json::array();
          for (const auto& ge : family) {
            ordered_json e;
            e["root"] = root_text(cm, ge.root);
            arr.push_back(e);
          }
          j["witness_family"] = family.empty() ? ordered_json(diag)
                                               : ordered_json(arr);
        }
        out << j.dump(2) << "\n";
      } else {
        print_verdict_text(out, cm, v);
        if (!v.finite && witnesses > 0) {
          std::string diag;
          auto family = infinite_witness_family(cm, x, v, witnesses, &diag);
          if (family.empty()) {
            out << "witness family: " << diag << "\n";
          } else {
            for (const auto& ge : family)
              out << "witness root: " << root_text(cm, ge.root) << "\n";
          }
        }
      }
      return 0;
    }

    if (app.got_subcommand("generators")) {
      int x = cm.require(xname);
      auto en = enumerate_generators(cm, x, limits);
      if (json) {
        out << generators_json(cm, en).dump(2) << "\n";
      } else {
        out << (en.saturated ? "saturated" : "truncated") << ", "
            << en.generators.size() << " generators\n";
        for (const auto& ge : en.generators) {
          out << "(" << cm.name(ge.pair.mover) << ","
              << cm.name(ge.pair.support) << ")  root " << root_text(cm, ge.root)
              << "  word";
          for (int s : ge.word) out << ' ' << cm.name(s);
          out << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand("presentation")) {
      int x = cm.require(xname);
      auto pres = presentation(cm, x, limits);
      if (json) {
        ordered_json j;
        auto names = ordered_json::array();
        for (const auto& ge : pres.generators)
          names.push_back(root_text(cm, ge.root));
        j["generators"] = names;
        auto rows = ordered_json::array();
        for (const auto& row : pres.orders) {
          auto r = ordered_json::array();
          for (int m : row)
            r.push_back(finite_order(m) ? ordered_json(m)
                                        : ordered_json("inf"));
          rows.push_back(r);
        }
        j["orders"] = rows;
        out << j.dump(2) << "\n";
      } else {
        out << pres.generators.size() << " generators\n";
        for (std::size_t i = 0; i < pres.orders.size(); ++i) {
          for (std::size_t j2 = 0; j2 < pres.orders.size(); ++j2)
            out << (j2 ? " " : "") << order_text(pres.orders[i][j2]);
          out << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand("oracle")) {
      int x = cm.require(xname);
      auto oracle = canonical_generators(cm, x, depth);
      if (json) {
        ordered_json j;
        j["depth"] = depth;
        j["depth_limited"] = oracle.depth_limited;
        auto arr = ordered_json::array();
        for (const auto& r : oracle.roots) arr.push_back(root_text(cm, r));
        j["roots"] = arr;
        if (compare) {
          auto en = enumerate_generators(cm, x, limits);
          bool match = en.saturated &&
                       en.generators.size() == oracle.roots.size();
          if (match)
            for (const auto& ge : en.generators) {
              bool found = false;
              for (const auto& r : oracle.roots)
                if (same_vector(r, ge.root, 1e-6)) found = true;
              match = match && found;
            }
          j["transport_route_matches"] = match;
          if (!match && en.saturated)
            throw internal_error(
                "transport route disagrees with the root-orbit oracle");
        }
        out << j.dump(2) << "\n";
      } else {
        out << oracle.roots.size() << " canonical roots at depth " << depth
            << (oracle.depth_limited ? " (depth-limited)" : "") << "\n";
        for (const auto& r : oracle.roots)
          out << "  " << root_text(cm, r) << "\n";
        if (compare) {
          auto en = enumerate_generators(cm, x, limits);
          bool match = en.saturated &&
                       en.generators.size() == oracle.roots.size();
          if (match)
            for (const auto& ge : en.generators) {
              bool found = false;
              for (const auto& r : oracle.roots)
                if (same_vector(r, ge.root, 1e-6)) found = true;
              match = match && found;
            }
          out << "transport route " << (match ? "matches" : "DIFFERS")
              << "\n";
          if (!match && en.saturated)
            throw internal_error(
                "transport route disagrees with the root-orbit oracle");
        }
      }
      return 0;
    }

    if (app.got_subcommand("moves")) {
      int x = cm.require(xname);
      auto comma = from_pair.find(',');
      if (comma == std::string::npos)
        throw input_error("--from expects mover,support");
      PerpPair start{cm.require(from_pair.substr(0, comma)),
                     cm.require(from_pair.substr(comma + 1))};
      // breadth-first closure of the move graph from the pair
      std::vector<PerpPair> todo{start}, seen{start};
      std::vector<Move> edges;
      while (!todo.empty()) {
        PerpPair p = todo.back();
        todo.pop_back();
        for (const auto& mv : available_moves(cm, x, p)) {
          edges.push_back(mv);
          if (std::find(seen.begin(), seen.end(), mv.to) == seen.end()) {
            seen.push_back(mv.to);
            todo.push_back(mv.to);
          }
        }
      }
      if (json) {
        ordered_json j;
        auto pairs = ordered_json::array();
        for (const auto& p : seen)
          pairs.push_back(ordered_json::array(
              {cm.name(p.mover), cm.name(p.support)}));
        j["reachable"] = pairs;
        auto arr = ordered_json::array();
        for (const auto& mv : edges) {
          ordered_json e;
          e["kind"] = mv.kind == Move::Kind::sliding ? "sliding" : "switching";
          e["from"] = ordered_json::array(
              {cm.name(mv.from.mover), cm.name(mv.from.support)});
          e["to"] = ordered_json::array(
              {cm.name(mv.to.mover), cm.name(mv.to.support)});
          auto tr = ordered_json::array();
          for (int v : mv.trace.vertices()) tr.push_back(cm.name(v));
          e["trace"] = tr;
          arr.push_back(e);
        }
        j["moves"] = arr;
        out << j.dump(2) << "\n";
      } else {
        out << seen.size() << " reachable pairs, " << edges.size()
            << " moves\n";
        for (const auto& mv : edges) {
          out << (mv.kind == Move::Kind::sliding ? "sliding  " : "switching")
              << "  (" << cm.name(mv.from.mover) << ","
              << cm.name(mv.from.support) << ") -> (" << cm.name(mv.to.mover)
              << "," << cm.name(mv.to.support) << ")  trace";
          for (int v : mv.trace.vertices()) out << ' ' << cm.name(v);
          out << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand("odd-graph")) {
      if (dot || !json) {
        out << bond_graph_dot(cm, full);
      } else {
        ordered_json j;
        auto arr = ordered_json::array();
        Graph g = full ? full_bond_graph(cm) : odd_bond_graph(cm);
        for (const auto& [u, v] : g.edges())
          arr.push_back(ordered_json::array(
              {cm.name(u), cm.name(v), order_text(cm.order(u, v))}));
        j["vertices"] = ordered_json::array();
        for (int i = 0; i < cm.rank(); ++i) j["vertices"].push_back(cm.name(i));
        j["edges"] = arr;
        out << j.dump(2) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand("cycle-core")) {
      int x = cm.require(xname);
      auto O = odd_component(cm, x);
      Graph sub = induced_subgraph(odd_bond_graph(cm, O), O);
      auto local = cycle_core(sub);
      std::vector<int> core;
      for (int v : local) core.push_back(O[v]);
      if (dot) {
        out << bond_graph_dot(cm, false, core);
      } else {
        ordered_json j;
        auto o = ordered_json::array();
        for (int v : O) o.push_back(cm.name(v));
        auto k = ordered_json::array();
        for (int v : core) k.push_back(cm.name(v));
        j["O"] = o;
        j["K"] = k;
        out << j.dump(2) << "\n";
      }
      return 0;
    }
  } catch (const input_error& e) {
    if (json)
      err << ordered_json{{"error", e.what()}}.dump() << "\n";
    else
      err << "error: " << e.what() << "\n";
    return 1;
  } catch (const cap_exceeded& e) {
    if (json)
      err << ordered_json{{"error", e.what()}}.dump() << "\n";
    else
      err << "error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    if (json)
      err << ordered_json{{"internal_error", e.what()}}.dump() << "\n";
    else
      err << "internal inconsistency: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace perpx
