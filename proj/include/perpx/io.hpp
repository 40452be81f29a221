#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "perpx/calculus.hpp"
#include "perpx/coxeter.hpp"
#include "perpx/decider.hpp"

namespace perpx {

/* Line-oriented matrix format:
 *   # comment
 *   gens a b c
 *   m a b 3
 *   m a d inf
 * Unlisted pairs default to bond order 2.  Errors carry line numbers. */
CoxeterMatrix parse_matrix(const std::string& text,
                           const std::string& source_name = "<input>");
CoxeterMatrix parse_matrix_file(const std::string& path);

/* Canonical text round-tripping through parse_matrix. */
std::string render_matrix(const CoxeterMatrix& cm);

std::string order_text(int m);  // "3", "inf", ...

nlohmann::ordered_json verdict_json(const CoxeterMatrix& cm,
                                    const Verdict& verdict);

nlohmann::ordered_json generators_json(const CoxeterMatrix& cm,
                                       const GeneratorEnumeration& en);

/* Odd-bond view, edges labelled with their orders; `core` vertices are
 * drawn doubled.  full=true renders every bond of order >= 3 instead. */
std::string bond_graph_dot(const CoxeterMatrix& cm, bool full,
                           const std::vector<int>& core = {});

}  // namespace perpx
