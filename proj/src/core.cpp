#include "psifock/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace psifock {

int DiscreteData::psi_sum() const { return std::accumulate(psi.begin(), psi.end(), 0); }

int DiscreteData::u_degree() const {
  auto negatives = [](const std::vector<int>& xs) {
    return static_cast<int>(std::count_if(xs.begin(), xs.end(), [](int x) { return x < 0; }));
  };
  return g + negatives(phi) + negatives(mu) - 1;
}

int DiscreteData::flux_bound() const {
  int total = k * a;
  for (int x : phi) total += std::abs(x);
  for (int x : mu) total += std::abs(x);
  return total;
}

std::string describe(Violation v) {
  switch (v) {
    case Violation::CurveClass: return "curve class: sum(phi) + sum(mu) + k*a != 0";
    case Violation::Dimension: return "dimension: n2 + 2a + g - 1 != n + sum(psi)";
    case Violation::PhiUnsorted: return "phi is not non-decreasing";
    case Violation::MuUnsorted: return "mu is not non-decreasing";
    case Violation::ZeroEntry: return "phi and mu must not contain 0";
    case Violation::NegativeField: return "k, a and psi powers must be non-negative";
    case Violation::NegativeGenus: return "connected genus must be non-negative";
    case Violation::NoPoints: return "a connected count needs at least one point";
  }
  return "unknown violation";
}

bool ValidationReport::has(Violation v) const {
  return std::find(violations.begin(), violations.end(), v) != violations.end();
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) os << (i ? "; " : "") << describe(violations[i]);
  return os.str();
}

ValidationReport validate(const DiscreteData& data) {
  ValidationReport report;
  auto& out = report.violations;
  long curve = static_cast<long>(data.k) * data.a;
  for (int x : data.phi) curve += x;
  for (int x : data.mu) curve += x;
  if (curve != 0) out.push_back(Violation::CurveClass);
  if (static_cast<int>(data.mu.size()) + 2 * data.a + data.g - 1 != data.n() + data.psi_sum())
    out.push_back(Violation::Dimension);
  if (!std::is_sorted(data.phi.begin(), data.phi.end())) out.push_back(Violation::PhiUnsorted);
  if (!std::is_sorted(data.mu.begin(), data.mu.end())) out.push_back(Violation::MuUnsorted);
  auto has_zero = [](const std::vector<int>& xs) { return std::find(xs.begin(), xs.end(), 0) != xs.end(); };
  if (has_zero(data.phi) || has_zero(data.mu)) out.push_back(Violation::ZeroEntry);
  if (data.k < 0 || data.a < 0 ||
      std::any_of(data.psi.begin(), data.psi.end(), [](int x) { return x < 0; }))
    out.push_back(Violation::NegativeField);
  if (data.connected && data.g < 0) out.push_back(Violation::NegativeGenus);
  if (data.connected && data.n() == 0) out.push_back(Violation::NoPoints);
  return report;
}

void require_valid(const DiscreteData& data) {
  auto report = validate(data);
  if (!report.ok()) throw InvalidData(report);
}

Vec2 NewtonFan::sum() const {
  Vec2 s;
  for (const auto& [v, m] : vectors) s = s + v * m;
  return s;
}

int NewtonFan::size() const {
  int total = 0;
  for (const auto& [v, m] : vectors) total += m;
  return total;
}

NewtonFan newton_fan(const DiscreteData& data) {
  NewtonFan fan;
  if (data.a > 0) {
    fan.vectors[{0, -1}] += data.a;
    fan.vectors[{data.k, 1}] += data.a;
  }
  for (int x : data.phi) fan.vectors[{x, 0}] += 1;
  for (int x : data.mu) fan.vectors[{x, 0}] += 1;
  return fan;
}

namespace {

// Angular order on nonzero vectors, starting at the positive x axis.
bool angle_less(Vec2 p, Vec2 q) {
  auto half = [](Vec2 v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; };
  int hp = half(p), hq = half(q);
  if (hp != hq) return hp < hq;
  return p.x * q.y - p.y * q.x > 0;
}

long cross(Vec2 p, Vec2 q) { return p.x * q.y - p.y * q.x; }

}  // namespace

LatticePolygon dual_polygon(const NewtonFan& fan) {
  if (fan.vectors.empty()) throw std::invalid_argument("empty Newton fan");
  if (fan.sum() != Vec2{}) throw std::invalid_argument("Newton fan does not sum to zero");
  std::map<Vec2, long> weight_by_direction;
  for (const auto& [v, m] : fan.vectors) {
    long w = std::gcd(std::abs(v.x), std::abs(v.y));
    if (w == 0) throw std::invalid_argument("Newton fan contains the zero vector");
    weight_by_direction[{v.x / w, v.y / w}] += w * m;
  }
  LatticePolygon poly;
  for (const auto& [dir, w] : weight_by_direction) poly.edges.push_back(Vec2{-dir.y, dir.x} * w);
  std::sort(poly.edges.begin(), poly.edges.end(), angle_less);
  poly.degenerate = true;
  for (std::size_t i = 1; i < poly.edges.size(); ++i)
    if (cross(poly.edges[0], poly.edges[i]) != 0) poly.degenerate = false;
  return poly;
}

std::vector<Vec2> LatticePolygon::vertices() const {
  std::vector<Vec2> pts;
  Vec2 p;
  for (const auto& e : edges) {
    pts.push_back(p);
    p = p + e;
  }
  if (pts.empty()) return pts;
  long min_x = pts[0].x, min_y = pts[0].y;
  for (const auto& q : pts) {
    min_x = std::min(min_x, q.x);
    min_y = std::min(min_y, q.y);
  }
  for (auto& q : pts) q = {q.x - min_x, q.y - min_y};
  return pts;
}

bool LatticePolygon::is_convex() const {
  if (degenerate) return false;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (cross(edges[i], edges[(i + 1) % edges.size()]) <= 0) return false;
  return true;
}

long automorphisms(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  long result = 1;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    for (std::size_t f = 2; f <= j - i; ++f) result *= static_cast<long>(f);
    i = j;
  }
  return result;
}

}  // namespace psifock
