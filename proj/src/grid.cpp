#include "psifock/grid.hpp"

#include <numeric>
#include <vector>

namespace psifock {

namespace {

// Non-decreasing sequences of nonzero entries in [-m, m].
void sorted_entries(int length, int m, std::vector<int>& out, const std::function<void()>& emit) {
  if (static_cast<int>(out.size()) == length) {
    emit();
    return;
  }
  int lo = out.empty() ? -m : out.back();
  for (int x = lo; x <= m; ++x) {
    if (x == 0) continue;
    out.push_back(x);
    sorted_entries(length, m, out, emit);
    out.pop_back();
  }
}

// Compositions of at most `total` into n non-negative parts.
void psi_vectors(int n, int total, std::vector<int>& out, const std::function<void()>& emit) {
  if (static_cast<int>(out.size()) == n) {
    emit();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    out.push_back(x);
    psi_vectors(n, total - x, out, emit);
    out.pop_back();
  }
}

}  // namespace

void for_each_grid_point(const GridBounds& b, const std::function<void(const DiscreteData&)>& visit) {
  DiscreteData d;
  d.connected = b.connected;
  for (d.k = 0; d.k <= b.k_max; ++d.k)
    for (d.a = 0; d.a <= b.a_max; ++d.a)
      for (d.g = b.g_min; d.g <= b.g_max; ++d.g)
        for (int n = b.n_min; n <= b.n_max; ++n) {
          d.psi.clear();
          psi_vectors(n, b.psi_sum_max, d.psi, [&] {
            // dimension constraint fixes the length of mu
            const int mu_length = n + d.psi_sum() + 1 - 2 * d.a - d.g;
            if (mu_length < 0 || mu_length > b.mu_length_max) return;
            for (int phi_length = 0; phi_length <= b.phi_length_max && phi_length + mu_length <= b.ends_max; ++phi_length) {
              d.mu.clear();
              sorted_entries(mu_length, b.entry_max, d.mu, [&] {
                d.phi.clear();
                sorted_entries(phi_length, b.entry_max, d.phi, [&] {
                  if (validate(d).ok()) visit(d);
                });
              });
            }
          });
        }
}

std::size_t grid_size(const GridBounds& bounds) {
  std::size_t count = 0;
  for_each_grid_point(bounds, [&](const DiscreteData&) { ++count; });
  return count;
}

}  // namespace psifock
