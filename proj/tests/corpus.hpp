// Fans shared by the test suites and the acceptance runner.
#pragma once

#include "coxkernel/cones.hpp"
#include "test_util.hpp"

#include <string>
#include <utility>
#include <vector>

namespace corpus {

using coxkernel::Fan;
using testutil::vecs;

inline Fan p1() { return Fan{1, vecs({{1}, {-1}}), {{0}, {1}}}; }
inline Fan p2() { return Fan{2, vecs({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {2, 0}}}; }
inline Fan p121() { return Fan{2, vecs({{1, 0}, {0, 1}, {-1, -2}}), {{0, 1}, {1, 2}, {2, 0}}}; }
inline Fan hirzebruch1() { return Fan{2, vecs({{1, 0}, {0, 1}, {-1, 1}, {0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}; }
inline Fan a1_chart() { return Fan{2, vecs({{1, 0}, {1, 2}}), {{0, 1}}}; }
inline Fan quadric_cone() { return Fan{3, vecs({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}), {{0, 1, 2, 3}}}; }
inline Fan p1xp1() { return Fan{2, vecs({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}; }
inline Fan two_axes() { return Fan{2, vecs({{1, 0}, {0, 1}}), {{0}, {1}}}; }
inline Fan affine_plane() { return Fan{2, vecs({{1, 0}, {0, 1}}), {{0, 1}}}; }

/// The six class-group fans followed by P^1 x P^1 and the non-complete fan.
inline std::vector<std::pair<std::string, Fan>> verifier_fans() {
  return {{"P1", p1()},           {"P2", p2()},         {"P(1,2,1)", p121()},     {"F1", hirzebruch1()},
          {"A1-chart", a1_chart()}, {"quadric", quadric_cone()}, {"P1xP1", p1xp1()}, {"two-axes", two_axes()}};
}

inline std::vector<std::pair<std::string, Fan>> all_fans() {
  auto fans = verifier_fans();
  fans.emplace_back("A2", affine_plane());
  return fans;
}

}  // namespace corpus
