#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "psifock/core.hpp"

using namespace psifock;

namespace {

NewtonFan fan_of(std::initializer_list<std::pair<Vec2, int>> items) {
  NewtonFan f;
  for (const auto& [v, m] : items) f.vectors[v] += m;
  return f;
}

}  // namespace

TEST_CASE("[PAPER] both data sets of the F_1 example validate") {
  CHECK(validate(fixtures::primary_f1()).ok());
  CHECK(validate(fixtures::descendant_f1()).ok());
}

TEST_CASE("[TRIVIAL] fiber data: one point is fine, two points break the dimension count") {
  auto d = fixtures::fiber(1);
  CHECK(validate(d).ok());
  d.psi = {0, 0};
  auto r = validate(d);
  CHECK_FALSE(r.ok());
  CHECK(r.has(Violation::Dimension));
  CHECK_FALSE(r.has(Violation::CurveClass));
  CHECK(r.to_string().find("dimension") != std::string::npos);
}

TEST_CASE("[TRIVIAL] each violation is reported by name") {
  auto d = fixtures::descendant_f1();
  d.phi = {1, -2};
  CHECK(validate(d).has(Violation::PhiUnsorted));
  d = fixtures::descendant_f1();
  d.mu = {-2, 1, -1};
  CHECK(validate(d).has(Violation::MuUnsorted));
  d = fixtures::descendant_f1();
  d.a = 2;
  CHECK(validate(d).has(Violation::CurveClass));
  d = fixtures::fiber(2);
  d.mu = {-2, 0, 2};
  CHECK(validate(d).has(Violation::ZeroEntry));
  d = fixtures::fiber(2);
  d.psi = {-1};
  CHECK(validate(d).has(Violation::NegativeField));
}

TEST_CASE("[TRIVIAL] negative genus and empty point sets only in disconnected mode") {
  DiscreteData d;
  d.k = 0;
  d.a = 0;
  d.g = -1;
  d.mu = {-1, 1};
  d.connected = true;
  auto r = validate(d);
  CHECK(r.has(Violation::NegativeGenus));
  CHECK(r.has(Violation::NoPoints));
  d.connected = false;
  CHECK(validate(d).ok());
}

TEST_CASE("[TRIVIAL] derived quantities") {
  auto d = fixtures::descendant_f1();
  CHECK(d.n() == 4);
  CHECK(d.psi_sum() == 4);
  CHECK(d.u_degree() == 0 + 1 + 2 - 1);
  CHECK(d.flux_bound() == 2 + 1 + 2 + 1 + 1 + 3);
  CHECK(automorphisms({2, 1, 1, 2, 2}) == 12);
  CHECK(automorphisms({}) == 1);
}

TEST_CASE("[PAPER] Newton fan of the F_1 example") {
  auto fan = newton_fan(fixtures::primary_f1());
  auto expected = fan_of({{{0, -1}, 3}, {{1, 1}, 3}, {{-2, 0}, 2}, {{-1, 0}, 1}, {{1, 0}, 2}});
  CHECK(fan.vectors == expected.vectors);
  CHECK(fan.size() == 11);
  CHECK(fan.sum() == Vec2{0, 0});
}

TEST_CASE("[TRIVIAL] fiber fan and its degenerate polygon") {
  auto fan = newton_fan(fixtures::fiber(3));
  CHECK(fan.vectors == fan_of({{{-3, 0}, 1}, {{3, 0}, 1}}).vectors);
  auto poly = dual_polygon(fan);
  CHECK(poly.degenerate);
  CHECK_FALSE(poly.is_convex());
  REQUIRE(poly.edges.size() == 2);
  CHECK(std::abs(poly.edges[0].y) == 3);
  CHECK(poly.edges[0].x == 0);
}

TEST_CASE("[DERIVED] the four unit directions give the unit square") {
  auto poly = dual_polygon(fan_of({{{0, -1}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{-1, 0}, 1}}));
  CHECK_FALSE(poly.degenerate);
  CHECK(poly.is_convex());
  auto v = poly.vertices();
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<Vec2>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("[PAPER] Hirzebruch trapezoid: vertical sides of lengths differing by k a") {
  auto poly = dual_polygon(newton_fan(fixtures::primary_f1()));
  CHECK(poly.is_convex());
  long left = 0, right = 0;
  for (const auto& e : poly.edges) {
    if (e.x == 0 && e.y < 0) left = -e.y;
    if (e.x == 0 && e.y > 0) right = e.y;
  }
  CHECK(left == 5);
  CHECK(right == 2);
  CHECK(left - right == 1 * 3);
}

TEST_CASE("[TRIVIAL] dual_polygon rejects bad fans") {
  CHECK_THROWS_AS(dual_polygon(NewtonFan{}), std::invalid_argument);
  CHECK_THROWS_AS(dual_polygon(fan_of({{{1, 0}, 1}})), std::invalid_argument);
}

TEST_CASE("[DERIVED] random valid data: fan sums to zero, polygon closes and is convex") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(0, 3), entry(1, 3), coin(0, 1);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    DiscreteData d;
    d.k = small(rng);
    d.a = small(rng);
    d.connected = false;
    int count = small(rng) + 1;
    for (int i = 0; i < count; ++i) d.mu.push_back(entry(rng) * (coin(rng) ? 1 : -1));
    long s = static_cast<long>(d.k) * d.a;
    for (int x : d.mu) s += x;
    if (s == 0) continue;
    d.phi.push_back(static_cast<int>(-s));
    std::sort(d.mu.begin(), d.mu.end());
    d.g = 0;
    int rhs = static_cast<int>(d.mu.size()) + 2 * d.a - 1;
    if (rhs < 0) continue;
    d.psi.assign(static_cast<std::size_t>(rhs), 0);
    REQUIRE(validate(d).ok());
    CHECK(validate(d).violations == validate(d).violations);
    auto fan = newton_fan(d);
    CHECK(fan.sum() == Vec2{0, 0});
    auto poly = dual_polygon(fan);
    Vec2 total;
    for (const auto& e : poly.edges) total = total + e;
    CHECK(total == Vec2{0, 0});
    if (!poly.degenerate) CHECK(poly.is_convex());
    ++checked;
  }
  CHECK(checked > 100);
}
