#include "doctest.h"

#include <memory>

#include "fixtures.hpp"
#include "psifock/degeneration.hpp"
#include "psifock/grid.hpp"
#include "psifock/verify.hpp"

using namespace psifock;

namespace {

DiscreteData disconnected(DiscreteData d) {
  d.connected = false;
  return d;
}

long product(const std::vector<int>& v) {
  long p = 1;
  for (int x : v) p *= x;
  return p;
}

}  // namespace

TEST_CASE("[TRIVIAL] fiber data, split 1|0") {
  auto report = degeneration_check(disconnected(fixtures::fiber(2)), 1, VertexOracle::builtin());
  CHECK(report.lhs == FormalValue(1));
  CHECK(report.rhs == FormalValue(1));
  CHECK(report.holds());
}

TEST_CASE("[DERIVED] F_0 bidegree (1,1), split 2|1, formal") {
  auto report = degeneration_check(disconnected(fixtures::f0_bidegree(1)), 2, VertexOracle::formal());
  CHECK_FALSE(report.lhs.is_zero());
  CHECK(report.terms > 0);
  CHECK_MESSAGE(report.holds(), report.difference.to_string());
}

TEST_CASE("[DERIVED] F_1 descendant data, every split, formal") {
  auto data = disconnected(fixtures::descendant_f1());
  for (int split = 0; split <= data.n(); ++split) {
    auto report = degeneration_check(data, split, VertexOracle::formal());
    CHECK_MESSAGE(report.holds(), "split ", split, ": ", report.difference.to_string());
  }
}

TEST_CASE("[TRIVIAL] split out of range") {
  auto data = disconnected(fixtures::f0_bidegree(1));
  CHECK_THROWS_AS(gluing_terms(data, -1), std::out_of_range);
  CHECK_THROWS_AS(gluing_terms(data, 4), std::out_of_range);
  CHECK_THROWS_AS(degeneration_check(data, 4, VertexOracle::formal()), std::out_of_range);
}

TEST_CASE("[DERIVED] gluing terms: shapes, points and weights") {
  auto data = disconnected(fixtures::descendant_f1());
  for (int split = 0; split <= data.n(); ++split) {
    for (const auto& t : gluing_terms(data, split)) {
      CHECK(t.left.n() == split);
      CHECK(t.right.n() == data.n() - split);
      CHECK(validate(t.left).ok());
      CHECK(validate(t.right).ok());
      CHECK(t.left.a + t.right.a == data.a);
      // the glued parts appear negated on the right
      for (int l : t.lambda) CHECK(std::count(t.right.mu.begin(), t.right.mu.end(), -l) >= 1);
      for (int e : t.eta) CHECK(std::count(t.right.phi.begin(), t.right.phi.end(), -e) >= 1);
      CHECK(t.weight == ratio(product(t.lambda) * product(t.eta),
                                 automorphisms(t.lambda) * automorphisms(t.eta)));
    }
  }
}

TEST_CASE("[DERIVED] the identity also holds with the Fock matrix element as the invariant") {
  auto data = disconnected(fixtures::f0_bidegree(1));
  InvariantFunction fock = [](const DiscreteData& d) {
    return std::make_shared<const FormalValue>(matrix_element(d, VertexOracle::formal()));
  };
  for (int split = 0; split <= data.n(); ++split) CHECK(degeneration_check(data, split, VertexOracle::formal(), fock).holds());
}

TEST_CASE("[DERIVED] small grid, every split") {
  GridBounds b;
  b.k_max = 1;
  b.a_max = 1;
  b.n_max = 3;
  b.psi_sum_max = 2;
  b.entry_max = 2;
  b.ends_max = 2;
  auto report = verify_degeneration(grid_source(b));
  CHECK_MESSAGE(report.ok(), summary(report));
  CHECK(report.checked > 50);
}
