#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "perpx/cli.hpp"
#include "perpx/errors.hpp"
#include "perpx/io.hpp"
#include "perpx/samples.hpp"

using namespace perpx;

namespace {

std::string data_file(const std::string& name) {
  return std::string(PERPX_DATA_DIR) + "/" + name;
}

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matrix parsing") {
  auto b2 = parse_matrix("gens s t\nm s t 4\n");
  CHECK(b2.rank() == 2);
  CHECK(b2.order(0, 1) == 4);

  auto a3 = parse_matrix("gens a b c\nm a b 3\nm b c 3\n");
  CHECK(a3.order(a3.require("a"), a3.require("c")) == 2);

  auto inf = parse_matrix("# comment\ngens a b\nm a b inf\n");
  CHECK(inf.order(0, 1) == kInfiniteOrder);

  CHECK_THROWS_WITH_AS(parse_matrix("gens a b\nm a b 1\n"),
                       doctest::Contains(":2:"), input_error);
  CHECK_THROWS_AS(parse_matrix("gens a b\nm a q 3\n"), input_error);
  CHECK_THROWS_AS(parse_matrix("gens a b\nm a b 3\nm b a 4\n"), input_error);
  CHECK_THROWS_AS(parse_matrix("gens a b\nm a b 2\nm b a 3\n"), input_error);
  CHECK_NOTHROW(parse_matrix("gens a b\nm a b 3\nm b a 3\n"));
  CHECK_THROWS_AS(parse_matrix("gens a b\nm a b x\n"), input_error);
  CHECK_THROWS_AS(parse_matrix("nonsense a b\n"), input_error);
}

TEST_CASE("render round-trips") {
  for (const CoxeterMatrix& cm :
       {samples::a3(), samples::b2(), samples::diamond(),
        samples::odd_triangle_pendant(), samples::all3_cycle(5)}) {
    auto again = parse_matrix(render_matrix(cm));
    REQUIRE(again.rank() == cm.rank());
    for (int i = 0; i < cm.rank(); ++i) {
      CHECK(again.name(i) == cm.name(i));
      for (int j = 0; j < cm.rank(); ++j)
        CHECK(again.order(i, j) == cm.order(i, j));
    }
  }
}

TEST_CASE("verdict serialization") {
  auto dia = samples::diamond();
  auto v = decide(dia, dia.require("y1"));
  auto j = verdict_json(dia, v);
  CHECK(j["decision"] == "finite");
  CHECK(j["case"] == "1c");
  CHECK(j["branch"] == "with-cycle");
  CHECK(j["O"].size() == 4);
  CHECK(j["K"].size() == 4);
  CHECK(j["E"].empty());
  CHECK(j["violation"].is_null());

  auto g4 = samples::odd_triangle_pendant();
  auto vi = decide(g4, 0);
  auto ji = verdict_json(g4, vi);
  CHECK(ji["decision"] == "infinite");
  CHECK(ji["violation"]["condition"] == "4");
  CHECK(ji["O2"]["d"] == nlohmann::ordered_json::array({"a"}));
}

TEST_CASE("cli decide") {
  auto r = run_cli({"decide", "-x", "y1", "--json", data_file("diamond.cox")});
  CHECK(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["decision"] == "finite");
  CHECK(j["case"] == "1c");

  auto g = run_cli({"decide", "-x", "a", data_file("g4.cox")});
  CHECK(g.code == 0);
  CHECK(g.out.find("infinite") != std::string::npos);
  CHECK(g.out.find("condition 4") != std::string::npos);

  auto w = run_cli(
      {"decide", "-x", "a", "--witnesses", "3", data_file("g4.cox")});
  CHECK(w.code == 0);
  CHECK(std::count(w.out.begin(), w.out.end(), '\n') >
        std::count(g.out.begin(), g.out.end(), '\n'));
  auto wj = run_cli({"decide", "-x", "a", "--witnesses", "3", "--json",
                     data_file("g4.cox")});
  CHECK(wj.code == 0);
  auto jw = nlohmann::ordered_json::parse(wj.out);
  CHECK(jw["witness_family"].size() == 3);

  // byte stability across runs
  auto again =
      run_cli({"decide", "-x", "y1", "--json", data_file("diamond.cox")});
  CHECK(again.out == r.out);

  auto bad = run_cli({"decide", "-x", "zz", data_file("diamond.cox")});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());

  auto missing = run_cli({"decide", "-x", "a", "/nonexistent.cox"});
  CHECK(missing.code == 1);
}

TEST_CASE("cli oracle and generators agree") {
  auto r = run_cli({"oracle", "-x", "1", "--depth", "8", "--json", "--compare",
                    data_file("a3.cox")});
  CHECK(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["roots"].size() == 1);
  CHECK(j["transport_route_matches"] == true);

  auto g = run_cli({"generators", "-x", "s", "--json", data_file("b2.cox")});
  CHECK(g.code == 0);
  auto jg = nlohmann::ordered_json::parse(g.out);
  CHECK(jg["saturated"] == true);
  CHECK(jg["count"] == 1);

  auto g2 = run_cli(
      {"generators", "-x", "y0", "--json", data_file("atilde4.cox")});
  auto g3 = run_cli(
      {"generators", "-x", "y0", "--json", data_file("atilde4.cox")});
  CHECK(g2.code == 0);
  CHECK(g2.out == g3.out);
}

TEST_CASE("cli graph views") {
  auto d = run_cli({"odd-graph", "--dot", data_file("diamond.cox")});
  CHECK(d.code == 0);
  CHECK(d.out.find("graph coxeter {") != std::string::npos);
  CHECK(d.out.find("\"y0\" -- \"y1\"") != std::string::npos);
  // infinite bond only appears in the full view
  CHECK(d.out.find("inf") == std::string::npos);
  auto f = run_cli({"odd-graph", "--dot", "--full", data_file("diamond.cox")});
  CHECK(f.out.find("inf") != std::string::npos);

  auto c = run_cli({"cycle-core", "-x", "y0", data_file("diamond.cox")});
  CHECK(c.code == 0);
  auto jc = nlohmann::ordered_json::parse(c.out);
  CHECK(jc["K"].size() == 4);
}

TEST_CASE("cli moves") {
  auto r = run_cli({"moves", "-x", "y0", "--from", "y0,y2", "--json",
                    data_file("atilde3.cox")});
  CHECK(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["reachable"].size() == 2);
}

TEST_CASE("cli presentation refuses a truncated enumeration") {
  auto r = run_cli({"presentation", "-x", "a", "--max-path-len", "8",
                    data_file("g4.cox")});
  CHECK(r.code == 1);
  CHECK(r.err.find("saturated") != std::string::npos);
}

TEST_CASE("cli selftest") {
  auto r = run_cli({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
