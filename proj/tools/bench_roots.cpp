// Times the serial and the OpenMP root-orbit enumerations on a stress
// instance and checks that they produce identical output.

#include <chrono>
#include <iostream>

#include "perpx/geometry.hpp"
#include "perpx/io.hpp"

int main(int argc, char** argv) {
  int depth = argc > 1 ? std::atoi(argv[1]) : 9;
  auto cm = perpx::parse_matrix(
      "gens a b c d e f\n"
      "m a b 3\nm b c 3\nm c d 3\nm d e 3\nm e f 3\nm f a 3\n"
      "m a d 3\n",
      "bench");

  auto t0 = std::chrono::steady_clock::now();
  auto serial = perpx::enumerate_roots(cm, depth, 5000000, false);
  auto t1 = std::chrono::steady_clock::now();
  auto parallel = perpx::enumerate_roots(cm, depth, 5000000, true);
  auto t2 = std::chrono::steady_clock::now();

  auto ms = [](auto a, auto b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a)
        .count();
  };
  std::cout << "roots at depth " << depth << ": " << serial.roots.size()
            << " (" << serial.positive_count << " positive)\n";
  std::cout << "serial:   " << ms(t0, t1) << " ms\n";
  std::cout << "parallel: " << ms(t1, t2) << " ms\n";

  if (serial.roots.size() != parallel.roots.size()) {
    std::cerr << "size mismatch between serial and parallel runs\n";
    return 1;
  }
  for (std::size_t i = 0; i < serial.roots.size(); ++i)
    if (!perpx::same_vector(serial.roots[i], parallel.roots[i])) {
      std::cerr << "root " << i << " differs between serial and parallel\n";
      return 1;
    }
  std::cout << "outputs identical\n";
  return 0;
}
