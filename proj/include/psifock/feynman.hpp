#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psifock/core.hpp"
#include "psifock/floors.hpp"
#include "psifock/fock.hpp"
#include "psifock/formal.hpp"

namespace psifock {

/// Half-edge of a star graph: a_z / b_z becomes a germ pointing left iff z < 0,
/// of weight |z|, thickened iff it comes from b.
struct Germ {
  Direction direction = Direction::Left;
  int weight = 1;
  bool thick = false;
  std::optional<PartLabel> label;  // boundary germs only
  auto operator<=>(const Germ&) const = default;
};

Germ germ_of(Generator g);

/// Product m_+ * m_1 * ... * m_n * m_-: a boundary block of annihilators, one
/// normally ordered block per vertex, and a boundary block of creators.
struct FockProduct {
  std::vector<Generator> plus;
  std::vector<std::vector<Generator>> blocks;
  std::vector<Generator> minus;
  std::vector<PartLabel> plus_labels;   // empty, or one label per element of plus
  std::vector<PartLabel> minus_labels;  // likewise for minus

  /// The product flattened into one word.
  FockWord word() const;
};

/// Boundary blocks for the data: a_{|mu_i|} and b_{|phi_i|} for the negative
/// parts on the left, a_{mu_i} and b_{phi_i} with negative index on the right.
FockProduct boundary_product(const DiscreteData& data);

/// Germ blocks: index 0 is m_+, 1..n the vertices, n+1 is m_-.
struct FeynmanFragment {
  std::vector<std::vector<Germ>> blocks;
  int vertex_count() const { return blocks.empty() ? 0 : static_cast<int>(blocks.size()) - 2; }
};

/// Throws std::invalid_argument when the block shape is violated.
FeynmanFragment fragment(const FockProduct& product);

/// Fragment of a bare word: empty boundary blocks and one block per
/// generator, so every pairing allowed by the commutators is a gluing.
FeynmanFragment word_fragment(const std::vector<Generator>& word);

struct GermRef {
  int block = 0;
  int index = 0;
  auto operator<=>(const GermRef&) const = default;
};

/// Glued pair: a right-pointing germ and a left-pointing germ in a later block.
struct GluedEdge {
  GermRef right;
  GermRef left;
  int weight = 1;
  auto operator<=>(const GluedEdge&) const = default;
};

struct FeynmanGraph {
  FeynmanFragment fragment;
  std::vector<GluedEdge> edges;

  bool is_complete() const;
  /// Components, counting each boundary germ as its own node.
  int components() const;
  bool is_connected() const { return components() <= 1; }
  long weight_product() const;
};

/// Every gluing of all germs: equal weights, exactly one thick germ per pair,
/// right-pointing germ in a strictly earlier block.
std::vector<FeynmanGraph> completions(const FeynmanFragment& fragment);

/// Sum over completions of the product of edge weights, by dynamic
/// programming over the multiset of open germ types.
FormalValue wick_sum(const FeynmanFragment& fragment);

struct VertexDecoration {
  int psi = 0;
  int size = 0;
  int genus = 0;
  auto operator<=>(const VertexDecoration&) const = default;
};

/// Vertex-vertex pairs become compact edges (thick on the b side), pairs with
/// a boundary germ become labeled ends, boundary-boundary pairs become
/// through-edges. Throws std::invalid_argument on an incomplete graph.
FloorDiagram to_floor_diagram(const FeynmanGraph& graph, const std::vector<VertexDecoration>& decorations);

/// A product of summands of prod M_{k_i} at the t^a u^h coefficient with at
/// least one completion, together with the product of its word coefficients.
struct ContributingProduct {
  FockProduct product;
  std::vector<VertexDecoration> decorations;
  FormalValue coefficient;
};

void for_each_contributing_product(const DiscreteData& data, const VertexOracle& oracle,
                                   const std::function<void(const ContributingProduct&)>& visit);

/// Floor diagram images of all completions, with the Feynman weight
/// coefficient * prod(edge weights) / prod|parts| summed per image.
/// Only connected graphs are kept when data.connected.
std::map<FloorDiagram, FormalValue> feynman_floor_images(const DiscreteData& data, const VertexOracle& oracle);

/// Sum of all Feynman weights; the connected part when data.connected.
FormalValue feynman_invariant(const DiscreteData& data, const VertexOracle& oracle);

/// Graphviz rendering: germs as small nodes, glued pairs dashed.
std::string to_dot(const FeynmanGraph& graph);

}  // namespace psifock
