#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace psifock {

/// Discrete data of a stationary descendant invariant of the Hirzebruch surface F_k:
///   <(phi-, mu-) | tau_{k_1}(pt) ... tau_{k_n}(pt) | (phi+, mu+)>_g
/// phi are tangencies at fixed boundary points, mu at moving ones; negative
/// entries touch the zero section, positive ones the infinity section.
struct DiscreteData {
  int k = 0;  // Hirzebruch index
  int g = 0;  // genus; may be negative for disconnected counts
  int a = 0;  // horizontal degree (coefficient of B)
  std::vector<int> psi;
  std::vector<int> phi;
  std::vector<int> mu;
  bool connected = true;

  int n() const { return static_cast<int>(psi.size()); }
  int psi_sum() const;
  /// Power of u selected in the matrix element: g + l(phi-) + l(mu-) - 1.
  int u_degree() const;
  /// Sum of all |phi_i| + |mu_i| + k a; bounds every edge weight.
  int flux_bound() const;

  auto operator<=>(const DiscreteData&) const = default;
};

enum class Violation {
  CurveClass,      // sum(phi) + sum(mu) + k a = 0
  Dimension,       // n2 + 2a + g - 1 = n + sum(psi)
  PhiUnsorted,
  MuUnsorted,
  ZeroEntry,
  NegativeField,   // k, a or a psi power below zero
  NegativeGenus,   // only disconnected counts may have g < 0
  NoPoints,        // connected counts need n >= 1
};

std::string describe(Violation v);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(Violation v) const;
  std::string to_string() const;
};

ValidationReport validate(const DiscreteData& data);

/// Thrown by computations whose input data does not validate.
class InvalidData : public std::invalid_argument {
 public:
  explicit InvalidData(const ValidationReport& report)
      : std::invalid_argument("invalid discrete data: " + report.to_string()), report_(report) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

void require_valid(const DiscreteData& data);

struct Vec2 {
  long x = 0;
  long y = 0;
  auto operator<=>(const Vec2&) const = default;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator*(long s) const { return {x * s, y * s}; }
};

/// Multiset of integer vectors summing to zero.
struct NewtonFan {
  std::map<Vec2, int> vectors;  // vector -> multiplicity
  Vec2 sum() const;
  int size() const;
};

NewtonFan newton_fan(const DiscreteData& data);

/// Edge vectors of the dual polygon, counterclockwise starting from the
/// lowest-angle edge in [0, 2 pi). Degenerate when all directions are parallel.
struct LatticePolygon {
  std::vector<Vec2> edges;
  bool degenerate = false;

  /// Vertex coordinates, translated so the minimum x and y are zero.
  std::vector<Vec2> vertices() const;
  bool is_convex() const;
};

/// Throws std::invalid_argument on an empty fan or one that does not sum to zero.
LatticePolygon dual_polygon(const NewtonFan& fan);

/// Number of orderings of xs fixing it, i.e. the product of factorials of multiplicities.
long automorphisms(std::vector<int> xs);

}  // namespace psifock
