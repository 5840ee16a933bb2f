#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psifock/core.hpp"
#include "psifock/formal.hpp"

namespace psifock {

enum class PartKind { Phi, Mu };

/// Reference to one part of (phi, mu). Ends carry these as labels.
struct PartLabel {
  PartKind kind = PartKind::Phi;
  int index = 0;
  auto operator<=>(const PartLabel&) const = default;
};

std::string to_string(PartLabel label);

enum class Direction { Left, Right };

struct FloorVertex {
  int genus = 0;
  int size = 0;
  int psi = 0;
  auto operator<=>(const FloorVertex&) const = default;
};

/// Edge between two vertices, left < right. Exactly one half-edge is thick.
struct CompactEdge {
  int left = 0;
  int right = 0;
  int weight = 1;
  Direction thick = Direction::Left;  // which endpoint's half-edge is thickened
  auto operator<=>(const CompactEdge&) const = default;
};

/// Unbounded edge at a vertex, marked by the part of (phi, mu) it realizes.
struct End {
  int vertex = 0;
  Direction direction = Direction::Left;
  int weight = 1;
  bool thick = false;
  PartLabel label;
  auto operator<=>(const End&) const = default;
};

/// Vertex-free component of a disconnected diagram: a single edge running
/// from the zero section to the infinity section, pairing a negative part
/// with a positive part of the other kind (one fixed, one moving point).
struct ThroughEdge {
  PartLabel negative;
  PartLabel positive;
  int weight = 1;
  auto operator<=>(const ThroughEdge&) const = default;
};

/// Floor diagram on the linearly ordered vertex set 0..n-1. Vertex i carries
/// the i-th point condition.
struct FloorDiagram {
  std::vector<FloorVertex> vertices;
  std::vector<CompactEdge> edges;
  std::vector<End> ends;
  std::vector<ThroughEdge> through;

  /// Sorts edges, ends and through-edges into canonical order.
  void canonicalize();
  FloorDiagram canonical() const;

  int components() const;
  int betti_number() const;
  /// First Betti number plus vertex genera, minus (#components - 1).
  int genus() const;
  bool is_connected() const { return components() <= 1 && through.empty(); }

  /// Number of permutations of identical parallel compact edges.
  long automorphisms() const;

  /// One-point invariant attached to vertex v.
  VertexSymbol vertex_symbol(int v) const;

  auto operator<=>(const FloorDiagram&) const = default;
};

/// Conditions on a floor diagram, numbered as in the standard definition.
enum class FloorCondition {
  Decorations = 1,     // non-negative genus, size and psi power per vertex
  EdgeThickening = 2,  // one thick half-edge per compact edge
  ThickCount = 3,      // psi + 2 - 2 size - genus thick half-edges per vertex
  Weights = 4,         // positive expansion factors
  Balancing = 5,       // signed weight sum at a vertex is -k size
  Degree = 6,          // non-thick ends realize phi, thick ends realize mu
  EndLabels = 7,       // ends are marked bijectively by the parts
  Genus = 8,           // diagram genus equals data.g
  TotalSize = 9,       // sum of sizes equals a
  PsiPowers = 10,      // vertex psi powers equal data.psi in order
  Structure = 11,      // loop-free, left < right, connectedness when required
};

struct FloorReport {
  std::vector<FloorCondition> violations;
  bool ok() const { return violations.empty(); }
  bool has(FloorCondition c) const;
  std::string to_string() const;
};

/// Checks every condition. Throws std::out_of_range on dangling vertex indices.
FloorReport is_valid(const FloorDiagram& diagram, const DiscreteData& data);

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  int max_weight = -1;                 // -1: the flux bound of the data
  std::size_t max_diagrams = 50'000'000;
};

/// Calls visit on every floor diagram of the data, in canonical order per
/// vertex decoration branch. Throws InvalidData if the data does not validate.
void for_each_diagram(const DiscreteData& data, const std::function<void(const FloorDiagram&)>& visit,
                      const EnumerationOptions& options = {});

/// All floor diagrams of the data, canonicalized and sorted.
std::vector<FloorDiagram> enumerate(const DiscreteData& data, const EnumerationOptions& options = {});

/// prod_e w(e) * prod_V mult(V) / |Aut| * prod_{through} 1/w.
FormalValue multiplicity(const FloorDiagram& diagram, const VertexOracle& oracle);

/// Weighted count of floor diagrams (connected or disconnected as the data says).
FormalValue invariant(const DiscreteData& data, const VertexOracle& oracle,
                      const EnumerationOptions& options = {});

/// Signed flux across the cut between vertex i-1 and i, as the sum of the
/// weights of compact edges crossing it.
long cut_flux(const FloorDiagram& diagram, int cut);

}  // namespace psifock
