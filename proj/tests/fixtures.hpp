#pragma once

#include <vector>

#include "psifock/core.hpp"
#include "psifock/feynman.hpp"
#include "psifock/floors.hpp"
#include "psifock/fock.hpp"

namespace fixtures {

using namespace psifock;

/// F_1, degree ((-2,1),(-2,-1,1)), eight primary points.
inline DiscreteData primary_f1() {
  DiscreteData d;
  d.k = 1;
  d.g = 0;
  d.a = 3;
  d.psi.assign(8, 0);
  d.phi = {-2, 1};
  d.mu = {-2, -1, 1};
  d.connected = true;
  return d;
}

/// Same degree, four points with psi powers 0, 1, 3, 0.
inline DiscreteData descendant_f1() {
  DiscreteData d = primary_f1();
  d.psi = {0, 1, 3, 0};
  return d;
}

/// Fiber class of F_k through one point, fully tangent of order d on both sections.
inline DiscreteData fiber(int d, int k = 0) {
  DiscreteData data;
  data.k = k;
  data.a = 0;
  data.g = 0;
  data.psi = {0};
  data.mu = {-d, d};
  return data;
}

/// Bidegree (a, a) on F_0 with primary points, connected genus 0.
inline DiscreteData f0_bidegree(int a) {
  DiscreteData d;
  d.k = 0;
  d.a = a;
  d.g = 0;
  for (int i = 0; i < a; ++i) d.mu.push_back(-1);
  for (int i = 0; i < a; ++i) d.mu.push_back(1);
  d.psi.assign(static_cast<std::size_t>(2 * a + 2 * a - 1), 0);
  d.connected = true;
  return d;
}

/// Four floors: (psi, size) = (0,0), (1,1), (3,2), (0,0), all genus 0.
/// Labels index the sorted parts phi = (-2, 1), mu = (-2, -1, 1).
inline FloorDiagram descendant_f1_diagram() {
  FloorDiagram d;
  d.vertices = {{0, 0, 0}, {0, 1, 1}, {0, 2, 3}, {0, 0, 0}};
  d.edges = {
      {0, 2, 2, Direction::Left},
      {1, 2, 2, Direction::Right},
      {2, 3, 1, Direction::Right},
  };
  d.ends = {
      {0, Direction::Left, 2, true, {PartKind::Mu, 0}},
      {1, Direction::Left, 2, false, {PartKind::Phi, 0}},
      {1, Direction::Left, 1, true, {PartKind::Mu, 1}},
      {2, Direction::Right, 1, false, {PartKind::Phi, 1}},
      {3, Direction::Right, 1, true, {PartKind::Mu, 2}},
  };
  d.canonicalize();
  return d;
}

/// (b2 a1 a2) (b-2 b2) (a-2 b-1 a2) (b-2 a-2 a1 a1) (b-1 b1) (b-1 a-1)
inline FockProduct descendant_f1_product() {
  FockProduct p;
  p.plus = {gen_b(2), gen_a(1), gen_a(2)};
  p.plus_labels = {{PartKind::Phi, 0}, {PartKind::Mu, 1}, {PartKind::Mu, 0}};
  p.blocks = {
      {gen_b(-2), gen_b(2)},
      {gen_a(-2), gen_b(-1), gen_a(2)},
      {gen_b(-2), gen_a(-2), gen_a(1), gen_a(1)},
      {gen_b(-1), gen_b(1)},
  };
  p.minus = {gen_b(-1), gen_a(-1)};
  p.minus_labels = {{PartKind::Phi, 1}, {PartKind::Mu, 2}};
  return p;
}

inline std::vector<VertexDecoration> descendant_f1_decorations() {
  return {{0, 0, 0}, {1, 1, 0}, {3, 2, 0}, {0, 0, 0}};
}

}  // namespace fixtures
