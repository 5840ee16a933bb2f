#include "psifock/degeneration.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "psifock/floors.hpp"

#include "combinatorics.hpp"

namespace psifock {

namespace {

std::vector<int> negative_parts(const std::vector<int>& xs) {
  std::vector<int> out;
  for (int x : xs)
    if (x < 0) out.push_back(x);
  return out;
}

std::vector<int> positive_parts(const std::vector<int>& xs) {
  std::vector<int> out;
  for (int x : xs)
    if (x > 0) out.push_back(x);
  return out;
}

// dimension constraint solved for g
int genus_from_dimension(const DiscreteData& d) {
  return d.n() + d.psi_sum() + 1 - 2 * d.a - static_cast<int>(d.mu.size());
}

}  // namespace

std::vector<GluingTerm> gluing_terms(const DiscreteData& data, int n_left) {
  if (n_left < 0 || n_left > data.n())
    throw std::out_of_range("split " + std::to_string(n_left) + " is outside 0.." + std::to_string(data.n()));
  const auto phi_minus = negative_parts(data.phi), mu_minus = negative_parts(data.mu);
  const auto phi_plus = positive_parts(data.phi), mu_plus = positive_parts(data.mu);
  long incoming = 0;
  for (int x : phi_minus) incoming -= x;
  for (int x : mu_minus) incoming -= x;

  std::vector<GluingTerm> out;
  for (int a1 = 0; a1 <= data.a; ++a1) {
    const long total = incoming - static_cast<long>(data.k) * a1;
    if (total < 0) continue;
    const int T = static_cast<int>(total);
    for (int lambda_sum = 0; lambda_sum <= T; ++lambda_sum) {
      std::vector<int> lambda_parts, eta_parts;
      for (int r = (lambda_sum == 0 ? 0 : 1); r <= lambda_sum; ++r) {
        detail::partitions(lambda_sum, r, lambda_sum, lambda_parts, [&](const std::vector<int>& lam_desc) {
          const int eta_sum = T - lambda_sum;
          for (int s = (eta_sum == 0 ? 0 : 1); s <= eta_sum; ++s) {
            detail::partitions(eta_sum, s, eta_sum, eta_parts, [&](const std::vector<int>& eta_desc) {
              std::vector<int> lam(lam_desc.rbegin(), lam_desc.rend());
              std::vector<int> eta(eta_desc.rbegin(), eta_desc.rend());
              GluingTerm t;
              t.lambda = lam;
              t.eta = eta;
              t.left.k = t.right.k = data.k;
              t.left.connected = t.right.connected = false;
              t.left.a = a1;
              t.right.a = data.a - a1;
              t.left.psi.assign(data.psi.begin(), data.psi.begin() + n_left);
              t.right.psi.assign(data.psi.begin() + n_left, data.psi.end());
              t.left.phi = phi_minus;
              t.left.phi.insert(t.left.phi.end(), lam.begin(), lam.end());
              t.left.mu = mu_minus;
              t.left.mu.insert(t.left.mu.end(), eta.begin(), eta.end());
              for (auto it = eta.rbegin(); it != eta.rend(); ++it) t.right.phi.push_back(-*it);
              t.right.phi.insert(t.right.phi.end(), phi_plus.begin(), phi_plus.end());
              for (auto it = lam.rbegin(); it != lam.rend(); ++it) t.right.mu.push_back(-*it);
              t.right.mu.insert(t.right.mu.end(), mu_plus.begin(), mu_plus.end());
              t.left.g = genus_from_dimension(t.left);
              t.right.g = genus_from_dimension(t.right);
              if (!validate(t.left).ok() || !validate(t.right).ok()) return;
              Rational w = 1;
              for (int x : lam) w *= x;
              for (int x : eta) w *= x;
              w /= automorphisms(lam);
              w /= automorphisms(eta);
              t.weight = w;
              out.push_back(std::move(t));
            });
          }
        });
      }
    }
  }
  return out;
}

DegenerationReport degeneration_check(const DiscreteData& data, int n_left, const VertexOracle& oracle,
                                      const InvariantFunction& invariant_fn) {
  DiscreteData whole = data;
  whole.connected = false;
  require_valid(whole);
  InvariantFunction count = invariant_fn;
  if (!count) count = [&](const DiscreteData& d) { return std::make_shared<const FormalValue>(invariant(d, oracle)); };

  DegenerationReport report;
  report.lhs = *count(whole);
  for (const auto& t : gluing_terms(whole, n_left)) {
    const bool left_first = t.left.n() <= t.right.n();
    auto first = count(left_first ? t.left : t.right);
    if (first->is_zero()) continue;
    auto second = count(left_first ? t.right : t.left);
    if (second->is_zero()) continue;
    FormalValue term = *first * *second;
    term *= t.weight;
    report.rhs += term;
    ++report.terms;
  }
  report.difference = report.lhs - report.rhs;
  return report;
}

}  // namespace psifock
