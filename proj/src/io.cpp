#include "perpx/io.hpp"

#include <cmath>
#include <map>
#include <fstream>
#include <sstream>

#include "perpx/errors.hpp"

namespace perpx {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail_at(const std::string& source, int line,
                          const std::string& what) {
  throw input_error(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

CoxeterMatrix parse_matrix(const std::string& text,
                           const std::string& source_name) {
  std::vector<std::string> names;
  struct Entry {
    std::string a, b;
    int m;
    int line;
  };
  std::vector<Entry> entries;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "gens") {
      if (toks.size() < 2) fail_at(source_name, lineno, "gens needs names");
      names.insert(names.end(), toks.begin() + 1, toks.end());
    } else if (toks[0] == "m") {
      if (toks.size() != 4)
        fail_at(source_name, lineno, "expected: m <gen> <gen> <order>");
      int m;
      if (toks[3] == "inf" || toks[3] == "infinity") {
        m = kInfiniteOrder;
      } else {
        try {
          std::size_t used = 0;
          m = std::stoi(toks[3], &used);
          if (used != toks[3].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          fail_at(source_name, lineno, "bond order '" + toks[3] +
                                           "' is not a number or 'inf'");
        }
      }
      entries.push_back({toks[1], toks[2], m, lineno});
    } else {
      fail_at(source_name, lineno, "unknown directive '" + toks[0] + "'");
    }
  }

  CoxeterMatrix base;
  try {
    base = CoxeterMatrix::build(names, {});
  } catch (const input_error& e) {
    throw input_error(source_name + ": " + e.what());
  }
  std::vector<std::tuple<int, int, int>> resolved;
  std::map<std::pair<int, int>, int> seen;
  for (const auto& e : entries) {
    int i = base.find(e.a);
    int j = base.find(e.b);
    if (i < 0) fail_at(source_name, e.line, "unknown generator '" + e.a + "'");
    if (j < 0) fail_at(source_name, e.line, "unknown generator '" + e.b + "'");
    if (i == j)
      fail_at(source_name, e.line, "diagonal bond order is fixed at 1");
    if (e.m != kInfiniteOrder && e.m < 2)
      fail_at(source_name, e.line, "off-diagonal bond order must be >= 2");
    auto key = std::minmax(i, j);
    auto [it, fresh] = seen.emplace(std::pair(key.first, key.second), e.m);
    if (!fresh && it->second != e.m)
      fail_at(source_name, e.line,
              "conflicting bond order for " + e.a + "," + e.b);
    resolved.emplace_back(i, j, e.m);
  }
  try {
    return CoxeterMatrix::build(names, resolved);
  } catch (const input_error& e) {
    throw input_error(source_name + ": " + e.what());
  }
}

CoxeterMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), path);
}

std::string order_text(int m) {
  return finite_order(m) ? std::to_string(m) : "inf";
}

std::string render_matrix(const CoxeterMatrix& cm) {
  std::ostringstream out;
  out << "gens";
  for (int i = 0; i < cm.rank(); ++i) out << ' ' << cm.name(i);
  out << '\n';
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = i + 1; j < cm.rank(); ++j) {
      int m = cm.order(i, j);
      if (m == 2) continue;
      out << "m " << cm.name(i) << ' ' << cm.name(j) << ' ' << order_text(m)
          << '\n';
    }
  return out.str();
}

namespace {

nlohmann::ordered_json name_list(const CoxeterMatrix& cm,
                                 const std::vector<int>& ids) {
  auto arr = nlohmann::ordered_json::array();
  for (int v : ids) arr.push_back(cm.name(v));
  return arr;
}

}  // namespace

nlohmann::ordered_json verdict_json(const CoxeterMatrix& cm,
                                    const Verdict& v) {
  nlohmann::ordered_json j;
  j["decision"] = v.finite ? "finite" : "infinite";
  j["branch"] = v.with_cycle ? "with-cycle" : "acyclic";
  j["case"] = v.det_case;
  j["O"] = name_list(cm, v.O);
  j["K"] = name_list(cm, v.K);
  j["E"] = name_list(cm, v.E);
  auto o2 = nlohmann::ordered_json::object();
  for (const auto& [s, ys] : v.O2) o2[cm.name(s)] = name_list(cm, ys);
  j["O2"] = o2;
  if (v.violation) {
    nlohmann::ordered_json w;
    w["condition"] = v.violation->condition;
    w["pair"] = name_list(cm, v.violation->pair);
    w["vertex"] =
        v.violation->vertex >= 0
            ? nlohmann::ordered_json(cm.name(v.violation->vertex))
            : nlohmann::ordered_json(nullptr);
    w["detail"] = v.violation->detail;
    j["violation"] = w;
  } else {
    j["violation"] = nullptr;
  }
  auto conds = nlohmann::ordered_json::array();
  for (const auto& c : v.conditions) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["holds"] = c.holds;
    if (!c.detail.empty()) e["detail"] = c.detail;
    conds.push_back(e);
  }
  j["conditions"] = conds;
  return j;
}

nlohmann::ordered_json generators_json(const CoxeterMatrix& cm,
                                       const GeneratorEnumeration& en) {
  nlohmann::ordered_json j;
  j["saturated"] = en.saturated;
  j["count"] = en.generators.size();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& ge : en.generators) {
    nlohmann::ordered_json e;
    e["mover"] = cm.name(ge.pair.mover);
    e["support"] = cm.name(ge.pair.support);
    e["path"] = name_list(cm, ge.path.vertices());
    auto root = nlohmann::ordered_json::object();
    for (int i = 0; i < cm.rank(); ++i)
      if (std::abs(ge.root[i]) > kTol) root[cm.name(i)] = ge.root[i];
    e["root"] = root;
    e["word"] = name_list(cm, ge.word);
    arr.push_back(e);
  }
  j["generators"] = arr;
  return j;
}

std::string bond_graph_dot(const CoxeterMatrix& cm, bool full,
                           const std::vector<int>& core) {
  std::vector<char> in_core(cm.rank(), 0);
  for (int v : core) in_core[v] = 1;
  std::ostringstream out;
  out << "graph coxeter {\n";
  for (int i = 0; i < cm.rank(); ++i) {
    out << "  \"" << cm.name(i) << '"';
    if (in_core[i]) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = i + 1; j < cm.rank(); ++j) {
      int m = cm.order(i, j);
      bool keep = full ? m >= 3 : odd_bond(m);
      if (!keep) continue;
      out << "  \"" << cm.name(i) << "\" -- \"" << cm.name(j)
          << "\" [label=\"" << order_text(m) << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace perpx
