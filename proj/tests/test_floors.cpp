#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "psifock/floors.hpp"
#include "psifock/grid.hpp"

using namespace psifock;

namespace {

FloorDiagram fiber_diagram(int d) {
  FloorDiagram D;
  D.vertices = {{0, 0, 0}};
  D.ends = {{0, Direction::Left, d, true, {PartKind::Mu, 0}}, {0, Direction::Right, d, true, {PartKind::Mu, 1}}};
  D.canonicalize();
  return D;
}

// Signed weight crossing the cut before vertex `cut`, from the left-hand side's bookkeeping.
long expected_flux(const FloorDiagram& D, const DiscreteData& data, int cut) {
  long flux = 0;
  for (int v = 0; v < cut; ++v) flux -= static_cast<long>(data.k) * D.vertices[static_cast<std::size_t>(v)].size;
  for (const auto& e : D.ends)
    if (e.vertex < cut) flux -= e.direction == Direction::Left ? -e.weight : e.weight;
  return flux;
}

}  // namespace

TEST_CASE("[PAPER] the F_1 four-floor diagram is valid") {
  auto report = is_valid(fixtures::descendant_f1_diagram(), fixtures::descendant_f1());
  CHECK_MESSAGE(report.ok(), report.to_string());
  CHECK(fixtures::descendant_f1_diagram().genus() == 0);
  CHECK(fixtures::descendant_f1_diagram().is_connected());
}

TEST_CASE("[DERIVED] single fiber vertex is a valid diagram; unthickening an end breaks it") {
  auto data = fixtures::fiber(2);
  CHECK(is_valid(fiber_diagram(2), data).ok());
  auto broken = fiber_diagram(2);
  broken.ends[0].thick = false;
  auto r = is_valid(broken, data);
  CHECK(r.has(FloorCondition::ThickCount));
  CHECK(r.has(FloorCondition::Degree));
}

TEST_CASE("[TRIVIAL] further perturbations are caught") {
  auto data = fixtures::descendant_f1();
  auto D = fixtures::descendant_f1_diagram();
  D.edges[0].weight = 3;
  CHECK(is_valid(D, data).has(FloorCondition::Balancing));
  D = fixtures::descendant_f1_diagram();
  D.vertices[2].psi = 2;
  CHECK(is_valid(D, data).has(FloorCondition::PsiPowers));
  D = fixtures::descendant_f1_diagram();
  D.ends[0].label = D.ends[1].label;
  CHECK(is_valid(D, data).has(FloorCondition::EndLabels));
  D = fixtures::descendant_f1_diagram();
  D.edges.push_back({5, 6, 1, Direction::Left});
  CHECK_THROWS_AS(is_valid(D, data), std::out_of_range);
}

TEST_CASE("[DERIVED] fiber data has exactly one diagram") {
  for (int d = 1; d <= 5; ++d) {
    auto all = enumerate(fixtures::fiber(d));
    REQUIRE(all.size() == 1);
    CHECK(all[0] == fiber_diagram(d));
    CHECK(multiplicity(all[0], VertexOracle::builtin()) == FormalValue(1));
    CHECK(invariant(fixtures::fiber(d), VertexOracle::builtin()) == FormalValue(1));
  }
}

TEST_CASE("[DERIVED] bidegree (1,1) on F_0 through three points counts 1") {
  auto data = fixtures::f0_bidegree(1);
  FormalValue total;
  for (const auto& D : enumerate(data)) total += multiplicity(D, VertexOracle::builtin());
  CHECK(total == FormalValue(1));
  CHECK(invariant(data, VertexOracle::builtin()) == FormalValue(1));
}

TEST_CASE("[TRIVIAL] multiplicity is the product of edge weights and vertex symbols") {
  // a size-one floor and a marked elevator joined by a weight-2 edge
  DiscreteData data;
  data.k = 0;
  data.a = 1;
  data.g = 0;
  data.psi = {0, 0};
  data.phi = {-2};
  data.mu = {2};
  data.connected = true;
  FloorDiagram two;
  two.vertices = {{0, 1, 0}, {0, 0, 0}};
  two.edges = {{0, 1, 2, Direction::Right}};
  two.ends = {{0, Direction::Left, 2, false, {PartKind::Phi, 0}}, {1, Direction::Right, 2, true, {PartKind::Mu, 0}}};
  two.canonicalize();
  CHECK(is_valid(two, data).ok());
  auto m = multiplicity(two, VertexOracle::formal());
  auto expected = FormalValue::symbol(two.vertex_symbol(0)) * FormalValue::symbol(two.vertex_symbol(1)) * Rational(2);
  CHECK(m == expected);

  auto all = enumerate(data);
  CHECK(std::find(all.begin(), all.end(), two) != all.end());
  for (const auto& D : all) {
    auto value = multiplicity(D, VertexOracle::formal());
    REQUIRE(value.size() == 1);
    auto [mono, coeff] = value.terms()[0];
    CHECK(mono.size() == D.vertices.size());
    long weights = 1;
    for (const auto& e : D.edges) weights *= e.weight;
    CHECK(coeff == ratio(weights, D.automorphisms()));
  }
}

TEST_CASE("[TRIVIAL] invalid data is rejected") {
  auto data = fixtures::fiber(1);
  data.psi = {0, 0};
  CHECK_THROWS_AS(enumerate(data), InvalidData);
}

TEST_CASE("[DERIVED] enumerated diagrams satisfy the structural invariants") {
  GridBounds b;
  b.k_max = 1;
  b.a_max = 2;
  b.n_max = 4;
  b.psi_sum_max = 2;
  b.entry_max = 2;
  b.ends_max = 2;
  int diagrams = 0;
  for_each_grid_point(b, [&](const DiscreteData& data) {
    std::set<FloorDiagram> seen;
    for (const auto& D : enumerate(data)) {
      ++diagrams;
      CHECK(seen.insert(D).second);
      CHECK(is_valid(D, data).ok());
      int sizes = 0;
      for (std::size_t v = 0; v < D.vertices.size(); ++v) {
        sizes += D.vertices[v].size;
        CHECK(D.vertices[v].psi == data.psi[v]);
      }
      CHECK(sizes == data.a);
      // through-edges are components without vertices or cycles
      CHECK(D.betti_number() == static_cast<int>(D.edges.size()) - static_cast<int>(D.vertices.size()) +
                                    D.components() - static_cast<int>(D.through.size()));
      CHECK(D.genus() == data.g);
      for (int cut = 1; cut < static_cast<int>(D.vertices.size()); ++cut)
        CHECK(cut_flux(D, cut) == expected_flux(D, data, cut));
    }
  });
  CHECK(diagrams > 1000);
}

TEST_CASE("[DERIVED] builtin specialization commutes with counting") {
  for (auto data : {fixtures::f0_bidegree(1), fixtures::descendant_f1(), fixtures::fiber(2)}) {
    data.connected = false;
    CHECK(substitute(invariant(data, VertexOracle::formal()), VertexOracle::builtin()) ==
          invariant(data, VertexOracle::builtin()));
  }
}

TEST_CASE("[TRIVIAL] enumeration is deterministic") {
  auto a = enumerate(fixtures::descendant_f1());
  auto b = enumerate(fixtures::descendant_f1());
  CHECK(a == b);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::find(a.begin(), a.end(), fixtures::descendant_f1_diagram()) != a.end());
}

TEST_CASE("[TRIVIAL] resource caps fail loudly") {
  EnumerationOptions options;
  options.max_diagrams = 3;
  CHECK_THROWS_AS(enumerate(fixtures::f0_bidegree(2), options), ResourceLimitExceeded);
  options = {};
  options.max_weight = 1;
  CHECK_THROWS_AS(enumerate(fixtures::fiber(2), options), ResourceLimitExceeded);
}
