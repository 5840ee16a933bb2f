#pragma once

#include <cstddef>
#include <functional>

#include "psifock/core.hpp"

namespace psifock {

/// Finite parameter box for property sweeps. mu's length is fixed by the
/// dimension constraint; phi's is not, so it is capped explicitly.
struct GridBounds {
  int k_max = 2;
  int a_max = 3;
  int g_min = 0;
  int g_max = 2;
  int n_min = 0;
  int n_max = 6;
  int entry_max = 3;  // |phi_i|, |mu_i|
  int psi_sum_max = 4;
  int phi_length_max = 2;
  int mu_length_max = 4;
  int ends_max = 1 << 20;  // cap on len(phi) + len(mu)
  bool connected = false;
};

/// Visits every valid DiscreteData in the box, in a fixed order.
void for_each_grid_point(const GridBounds& bounds, const std::function<void(const DiscreteData&)>& visit);

std::size_t grid_size(const GridBounds& bounds);

}  // namespace psifock
