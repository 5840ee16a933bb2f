#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "psifock/core.hpp"
#include "psifock/formal.hpp"

namespace psifock {

/// One gluing term: left data carries the first n_left points, the glued
/// parts lambda (non-thick) and eta (thick) leave it to the right.
struct GluingTerm {
  DiscreteData left;
  DiscreteData right;
  std::vector<int> lambda;
  std::vector<int> eta;
  Rational weight;  // prod lambda prod eta / (|Aut lambda| |Aut eta|)
};

/// Every admissible gluing for the split after n_left points.
/// Throws std::out_of_range unless 0 <= n_left <= n.
std::vector<GluingTerm> gluing_terms(const DiscreteData& data, int n_left);

struct DegenerationReport {
  FormalValue lhs;
  FormalValue rhs;
  FormalValue difference;
  std::size_t terms = 0;
  bool holds() const { return difference.is_zero(); }
};

/// Shared so that memoizing implementations can hand out values without copying.
using InvariantFunction = std::function<std::shared_ptr<const FormalValue>(const DiscreteData&)>;

/// Compares the disconnected invariant with the gluing sum. The invariant
/// defaults to the floor diagram count.
DegenerationReport degeneration_check(const DiscreteData& data, int n_left, const VertexOracle& oracle,
                                      const InvariantFunction& invariant = {});

}  // namespace psifock
