#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "psifock/formal.hpp"

namespace psifock::detail {

// Calls emit(parts) for every non-increasing sequence of `count` positive
// integers, each at most `cap`, summing to `total`.
template <class Emit>
void partitions(int total, int count, int cap, std::vector<int>& parts, Emit&& emit) {
  if (count == 0) {
    if (total == 0) emit(parts);
    return;
  }
  if (total < count) return;
  int hi = std::min(cap, total - (count - 1));
  int lo = (total + count - 1) / count;  // the largest part is at least the average
  for (int p = hi; p >= lo; --p) {
    parts.push_back(p);
    partitions(total - p, count - 1, p, parts, emit);
    parts.pop_back();
  }
}

template <class Emit>
void partitions(int total, int count, int cap, Emit&& emit) {
  std::vector<int> parts;
  partitions(total, count, cap, parts, emit);
}

// Every multiset of exactly `count` values from 1..cap, non-increasing.
template <class Emit>
void multisets(int count, int cap, std::vector<int>& parts, Emit&& emit) {
  if (count == 0) {
    emit(parts);
    return;
  }
  int hi = parts.empty() ? cap : parts.back();
  for (int p = hi; p >= 1; --p) {
    parts.push_back(p);
    multisets(count - 1, cap, parts, emit);
    parts.pop_back();
  }
}

// Groups a sorted list into (value, multiplicity) runs.
inline std::vector<std::pair<int, int>> runs(const std::vector<int>& sorted) {
  std::vector<std::pair<int, int>> out;
  for (int x : sorted) {
    if (!out.empty() && out.back().first == x)
      ++out.back().second;
    else
      out.emplace_back(x, 1);
  }
  return out;
}

// Every sub-multiset of a sorted list with at most max_size elements.
template <class Emit>
void submultisets(const std::vector<std::pair<int, int>>& groups, std::size_t at, int max_size,
                  std::vector<int>& chosen, Emit&& emit) {
  if (at == groups.size()) {
    emit(chosen);
    return;
  }
  auto [value, count] = groups[at];
  for (int c = 0;; ++c) {
    submultisets(groups, at + 1, max_size - c, chosen, emit);
    if (c == count || c == max_size) {
      chosen.resize(chosen.size() - c);
      return;
    }
    chosen.push_back(value);
  }
}

inline Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

// Removes one copy of each element of `sub` from the sorted list `from`.
inline std::vector<int> remove_all(std::vector<int> from, const std::vector<int>& sub) {
  for (int x : sub) from.erase(std::lower_bound(from.begin(), from.end(), x));
  return from;
}

inline std::vector<int> merged(const std::vector<int>& x, std::vector<int> y) {
  std::sort(y.begin(), y.end());
  std::vector<int> out;
  out.reserve(x.size() + y.size());
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace psifock::detail
