#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "psifock/core.hpp"
#include "psifock/fock.hpp"
#include "psifock/formal.hpp"
#include "psifock/grid.hpp"

namespace psifock {

struct SuiteReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<std::string> first_failure;  // re-runnable description
  double seconds = 0;
  double slowest = 0;  // seconds spent on the slowest single instance
  bool ok() const { return failed == 0; }
};

std::string summary(const SuiteReport& report);

using DataVisitor = std::function<void(const DiscreteData&)>;
using DataSource = std::function<void(const DataVisitor&)>;

DataSource grid_source(const GridBounds& bounds);
DataSource list_source(std::vector<DiscreteData> items);

/// Random word of the given length with nonzero indices in [-max_index, max_index].
/// Half of the words are built from index-matched a/b pairs so that the
/// expectation is often nonzero.
std::vector<Generator> random_word(std::mt19937_64& rng, int length, int max_index);

/// Commutator normal ordering against the Feynman pairing sum.
SuiteReport verify_wick(std::size_t count, std::uint64_t seed, int max_length = 10, int max_index = 4);

/// Floor diagram count against the Fock matrix element (disconnected, formal).
SuiteReport verify_identity(const DataSource& source);

/// Feynman completions against floor diagrams: same image set, same weights.
SuiteReport verify_bijection(const DataSource& source);

/// Gluing identity for every split of every instance with at least min_points points.
SuiteReport verify_degeneration(const DataSource& source, int min_points = 2);

}  // namespace psifock
