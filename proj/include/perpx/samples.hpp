#pragma once

#include <string>

#include "perpx/coxeter.hpp"
#include "perpx/io.hpp"

namespace perpx::samples {

/* The structural examples used by the self test and the test suite. */

inline CoxeterMatrix a3() {
  return parse_matrix("gens 1 2 3\nm 1 2 3\nm 2 3 3\n", "a3");
}

inline CoxeterMatrix b2() {
  return parse_matrix("gens s t\nm s t 4\n", "b2");
}

/* Four-cycle of bond 3 with one infinite diagonal; the other diagonal
 * commutes. */
inline CoxeterMatrix diamond() {
  return parse_matrix(
      "gens y0 y1 y2 y3\n"
      "m y0 y1 3\nm y1 y2 3\nm y2 y3 3\nm y3 y0 3\n"
      "m y1 y3 inf\n",
      "diamond");
}

/* Bond-3 triangle with a pendant vertex commuting with one corner and
 * unbounded against the other two. */
inline CoxeterMatrix odd_triangle_pendant() {
  return parse_matrix(
      "gens a b c d\n"
      "m a b 3\nm b c 3\nm a c 3\n"
      "m a d 2\nm b d inf\nm c d inf\n",
      "odd-triangle-pendant");
}

/* Cycle of n >= 3 vertices, every cycle bond 3, every chord 2. */
inline CoxeterMatrix all3_cycle(int n) {
  std::string text = "gens";
  for (int i = 0; i < n; ++i) text += " y" + std::to_string(i);
  text += "\n";
  for (int i = 0; i < n; ++i)
    text += "m y" + std::to_string(i) + " y" + std::to_string((i + 1) % n) +
            " 3\n";
  return parse_matrix(text, "all3-cycle");
}

}  // namespace perpx::samples
