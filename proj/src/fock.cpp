#include "psifock/fock.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "combinatorics.hpp"

namespace psifock {

std::string to_string(Generator g) {
  return (g.family == Family::A ? "a_" : "b_") + std::to_string(g.index);
}

std::string to_string(const std::vector<Generator>& ops) {
  if (ops.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ops.size(); ++i) out += (i ? " " : "") + to_string(ops[i]);
  return out;
}

Rational commutator(Generator x, Generator y) {
  if (x.family == y.family || x.index + y.index != 0) return 0;
  return x.index;
}

std::vector<Generator> normally_ordered(const std::vector<Generator>& ops) {
  std::vector<Generator> out = ops;
  std::stable_partition(out.begin(), out.end(), [](Generator g) { return g.index < 0; });
  return out;
}

std::vector<Generator> canonical_normal_form(std::vector<Generator> ops) {
  std::sort(ops.begin(), ops.end(), [](Generator x, Generator y) {
    bool cx = x.index < 0, cy = y.index < 0;
    if (cx != cy) return cx;
    return std::tie(x.family, x.index) < std::tie(y.family, y.index);
  });
  return ops;
}

WordCombination normal_order(const FockWord& word) {
  WordCombination result;
  for (auto g : word.ops)
    if (g.index == 0) return result;
  std::map<std::vector<Generator>, Rational> pending, done;
  pending[word.ops] = 1;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const auto& ops = node.key();
    const Rational& c = node.mapped();
    if (c == 0) continue;
    std::size_t j = 0;
    while (j + 1 < ops.size() && !(ops[j].index > 0 && ops[j + 1].index < 0)) ++j;
    if (j + 1 >= ops.size()) {
      done[canonical_normal_form(ops)] += c;
      continue;
    }
    std::vector<Generator> swapped = ops;
    std::swap(swapped[j], swapped[j + 1]);
    pending[swapped] += c;
    Rational comm = commutator(ops[j], ops[j + 1]);
    if (comm != 0) {
      std::vector<Generator> reduced;
      reduced.reserve(ops.size() - 2);
      for (std::size_t i = 0; i < ops.size(); ++i)
        if (i != j && i != j + 1) reduced.push_back(ops[i]);
      pending[reduced] += c * comm;
    }
  }
  for (auto& [ops, c] : done)
    if (c != 0) result.emplace(ops, word.coefficient * FormalValue(c));
  return result;
}

FormalValue vacuum_expectation(const FockWord& word) {
  auto combination = normal_order(word);
  auto it = combination.find({});
  return it == combination.end() ? FormalValue() : it->second;
}

FockVector FockVector::basis(std::vector<int> phi, std::vector<int> mu) {
  for (int x : phi)
    if (x <= 0) throw std::invalid_argument("basis partitions need positive parts");
  for (int x : mu)
    if (x <= 0) throw std::invalid_argument("basis partitions need positive parts");
  std::sort(phi.begin(), phi.end());
  std::sort(mu.begin(), mu.end());
  FockVector v;
  v.terms_.emplace(BasisKey{std::move(phi), std::move(mu)}, FormalValue(1));
  return v;
}

void FockVector::add(const BasisKey& key, const FormalValue& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& other) {
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

FockVector& FockVector::operator*=(const FormalValue& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c = c * factor;
  return *this;
}

namespace {

// Creator: multiplies into the partition; v-basis picks up (count + 1).
// Annihilator: derivative in the other family's creators; v-basis picks up n.
std::optional<std::pair<BasisKey, Rational>> act(Generator g, BasisKey key) {
  if (g.index == 0) return std::nullopt;
  int n = std::abs(g.index);
  bool on_phi = (g.family == Family::A) == (g.index < 0);
  auto& part = on_phi ? key.phi : key.mu;
  if (g.index < 0) {
    auto range = std::equal_range(part.begin(), part.end(), n);
    Rational factor = static_cast<long>(range.second - range.first) + 1;
    part.insert(range.second, n);
    return std::make_pair(std::move(key), factor);
  }
  auto it = std::lower_bound(part.begin(), part.end(), n);
  if (it == part.end() || *it != n) return std::nullopt;
  part.erase(it);
  return std::make_pair(std::move(key), Rational(n));
}

}  // namespace

FockVector apply(Generator g, const FockVector& v) {
  FockVector out;
  for (const auto& [key, c] : v.terms()) {
    auto moved = act(g, key);
    if (moved) out.add(moved->first, c * FormalValue(moved->second));
  }
  return out;
}

FockVector apply(const FockWord& word, const FockVector& v) {
  FockVector out = v;
  for (auto it = word.ops.rbegin(); it != word.ops.rend(); ++it) out = apply(*it, out);
  out *= word.coefficient;
  return out;
}

FormalValue inner_product(const FockVector& x, const FockVector& y) {
  FormalValue total;
  for (const auto& [kx, cx] : x.terms()) {
    auto it = y.terms().find(BasisKey{kx.mu, kx.phi});
    if (it == y.terms().end()) continue;
    Rational constant = 1;
    for (int p : kx.phi) constant *= p;
    for (int p : kx.mu) constant *= p;
    constant /= automorphisms(kx.phi) * automorphisms(kx.mu);
    total += cx * it->second * FormalValue(constant);
  }
  return total;
}

FormalValue OperatorSeries::coefficient(const std::vector<Generator>& ops, int t, int u) const {
  auto key = canonical_normal_form(ops);
  FormalValue total;
  for (const auto& w : words)
    if (w.t == t && w.u == u && w.ops == key) total += w.coefficient;
  return total;
}

VertexSymbol word_symbol(int l, int genus, const std::vector<int>& bs, const std::vector<int>& as) {
  std::vector<int> phi_minus, phi_plus, mu_minus, mu_plus;
  for (int z : as) (z < 0 ? phi_minus : phi_plus).push_back(std::abs(z));
  for (int z : bs) (z < 0 ? mu_minus : mu_plus).push_back(std::abs(z));
  return VertexSymbol::make(genus, l, std::move(phi_minus), std::move(mu_minus), std::move(phi_plus),
                            std::move(mu_plus));
}

Rational word_normalization(const std::vector<Generator>& ops) {
  std::vector<Generator> sorted = ops;
  std::sort(sorted.begin(), sorted.end());
  Rational norm = 1;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    norm /= detail::factorial(static_cast<int>(j - i));
    i = j;
  }
  return norm;
}

namespace {

std::vector<Generator> make_ops(const std::vector<int>& bs, const std::vector<int>& as) {
  std::vector<Generator> ops;
  for (int z : bs) ops.push_back(gen_b(z));
  for (int z : as) ops.push_back(gen_a(z));
  return canonical_normal_form(std::move(ops));
}

std::vector<int> negated(const std::vector<int>& xs) {
  std::vector<int> out;
  for (int x : xs) out.push_back(-x);
  return out;
}

std::vector<int> concat(std::vector<int> x, const std::vector<int>& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

class OracleCache {
 public:
  explicit OracleCache(const VertexOracle& oracle) : oracle_(oracle) {}
  const FormalValue& operator()(const VertexSymbol& v) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, oracle_.evaluate(v)).first;
    return it->second;
  }

 private:
  const VertexOracle& oracle_;
  std::map<VertexSymbol, FormalValue> cache_;
};

}  // namespace

OperatorSeries build_M(int l, const Bounds& bounds, int k, const VertexOracle& oracle) {
  OperatorSeries series;
  OracleCache value(oracle);
  const int w = bounds.w_max;
  for (int s = 0; s <= bounds.t_max && 2 * s <= l + 2; ++s) {
    for (int g = 0; g <= l + 2 - 2 * s; ++g) {
      const int nb = l + 2 - 2 * s - g;
      const int neg_cap = bounds.u_max - g + 1;  // u = g - 1 + #negative indices
      if (neg_cap < 0) continue;
      for (int nb_neg = 0; nb_neg <= nb && nb_neg <= neg_cap; ++nb_neg) {
        std::vector<int> bn, bp;
        detail::multisets(nb_neg, w, bn, [&](const std::vector<int>& b_neg) {
          detail::multisets(nb - nb_neg, w, bp, [&](const std::vector<int>& b_pos) {
            std::vector<int> bs = concat(negated(b_neg), b_pos);
            long b_sum = 0;
            for (int z : bs) b_sum += z;
            for (int na_neg = 0; na_neg + nb_neg <= neg_cap; ++na_neg) {
              std::vector<int> an;
              detail::multisets(na_neg, w, an, [&](const std::vector<int>& a_neg) {
                long pos_total = -static_cast<long>(k) * s - b_sum;
                for (int z : a_neg) pos_total += z;
                if (pos_total < 0) return;
                auto emit = [&](const std::vector<int>& a_pos) {
                  std::vector<int> as = concat(negated(a_neg), a_pos);
                  const FormalValue& v = value(word_symbol(l, g, bs, as));
                  if (v.is_zero()) return;
                  FockWord word;
                  word.ops = make_ops(bs, as);
                  word.coefficient = v * FormalValue(word_normalization(word.ops));
                  word.t = s;
                  word.u = g - 1 + nb_neg + na_neg;
                  series.words.push_back(std::move(word));
                };
                if (pos_total == 0) {
                  emit({});
                  return;
                }
                for (int count = 1; count <= pos_total; ++count)
                  detail::partitions(static_cast<int>(pos_total), count, w, emit);
              });
            }
          });
        });
      }
    }
  }
  std::sort(series.words.begin(), series.words.end(), [](const FockWord& x, const FockWord& y) {
    return std::tie(x.t, x.u, x.ops) < std::tie(y.t, y.u, y.ops);
  });
  return series;
}

Bounds default_bounds(const DiscreteData& data) {
  return {data.a, data.u_degree(), data.flux_bound()};
}

namespace {

struct GradedKey {
  int t;
  int u;
  BasisKey key;
  auto operator<=>(const GradedKey&) const = default;
};

using GradedState = std::map<GradedKey, FormalValue>;

void add_to(GradedState& state, GradedKey key, const FormalValue& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = state.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) state.erase(it);
  }
}

// Factor picked up in the v-basis when the parts `added` are multiplied into `base`.
Rational creation_factor(const std::vector<int>& base, const std::vector<int>& added) {
  Rational factor = 1;
  for (auto [value, count] : detail::runs(added)) {
    auto range = std::equal_range(base.begin(), base.end(), value);
    long existing = range.second - range.first;
    for (long c = 1; c <= count; ++c) factor *= existing + c;
  }
  return factor;
}

Rational count_normalization(const std::vector<int>& sorted_parts) {
  Rational norm = 1;
  for (auto [value, count] : detail::runs(sorted_parts)) norm /= detail::factorial(count);
  return norm;
}

// Applies every summand of M_l that acts nontrivially on the state. Only
// terms that can still reach grading (t_target, u_target) after `left_over`
// further factors are kept; with left_over == 0 the basis key must be `target`.
class MStep {
 public:
  MStep(int l, int k, const Bounds& bounds, int t_target, int u_target, int left_over,
        const BasisKey& target, OracleCache& value)
      : l_(l), k_(k), bounds_(bounds), t_target_(t_target), u_target_(u_target),
        left_over_(left_over), target_(target), value_(value) {}

  GradedState operator()(const GradedState& state) {
    GradedState out;
    for (const auto& [gk, c] : state) expand(gk, c, out);
    return out;
  }

 private:
  void expand(const GradedKey& gk, const FormalValue& c, GradedState& out) {
    for (int s = 0; gk.t + s <= t_target_ && 2 * s <= l_ + 2; ++s) {
      if (left_over_ == 0 && gk.t + s != t_target_) continue;
      for (int g = 0; g <= l_ + 2 - 2 * s; ++g) {
        const int nb = l_ + 2 - 2 * s - g;
        const int base_u = gk.u + g - 1;
        auto phi_groups = detail::runs(gk.key.phi);
        auto mu_groups = detail::runs(gk.key.mu);
        std::vector<int> ab, aa;
        // b-annihilators remove a-creators (phi), a-annihilators remove b-creators (mu)
        detail::submultisets(phi_groups, 0, nb, ab, [&](const std::vector<int>& b_ann) {
          detail::submultisets(mu_groups, 0, static_cast<int>(gk.key.mu.size()), aa,
                               [&](const std::vector<int>& a_ann) {
                                 creators(gk, c, s, g, nb, base_u, b_ann, a_ann, out);
                               });
        });
      }
    }
  }

  void creators(const GradedKey& gk, const FormalValue& c, int s, int g, int nb, int base_u,
                const std::vector<int>& b_ann, const std::vector<int>& a_ann, GradedState& out) {
    const int cb = nb - static_cast<int>(b_ann.size());
    long total = static_cast<long>(k_) * s;
    Rational ann_factor = 1;
    for (int x : b_ann) total += x, ann_factor *= x;
    for (int x : a_ann) total += x, ann_factor *= x;
    const int u_room = u_target_ + left_over_ - base_u - cb;
    if (u_room < 0) return;
    BasisKey rest{detail::remove_all(gk.key.phi, b_ann), detail::remove_all(gk.key.mu, a_ann)};
    const int C = static_cast<int>(total);
    std::vector<int> bparts, aparts;
    for (int cb_sum = cb; cb_sum <= C; ++cb_sum) {
      if (cb == 0 && cb_sum > 0) break;
      const int ca_sum = C - cb_sum;
      detail::partitions(cb_sum, cb, bounds_.w_max, bparts, [&](const std::vector<int>& b_cre) {
        auto emit = [&](const std::vector<int>& a_cre) {
          const int ca = static_cast<int>(a_cre.size());
          GradedKey next{gk.t + s, base_u + cb + ca, {}};
          if (left_over_ == 0 && next.u != u_target_) return;
          std::vector<int> bs = concat(negated(b_cre), b_ann);
          std::vector<int> as = concat(negated(a_cre), a_ann);
          const FormalValue& v = value_(word_symbol(l_, g, bs, as));
          if (v.is_zero()) return;
          next.key.phi = detail::merged(rest.phi, a_cre);
          next.key.mu = detail::merged(rest.mu, b_cre);
          if (left_over_ == 0 && next.key != target_) return;
          std::vector<int> sorted_a_ann = a_ann, sorted_b_ann = b_ann, sorted_a = a_cre, sorted_b = b_cre;
          std::sort(sorted_a.begin(), sorted_a.end());
          std::sort(sorted_b.begin(), sorted_b.end());
          Rational scalar = ann_factor * creation_factor(rest.phi, sorted_a) *
                            creation_factor(rest.mu, sorted_b) * count_normalization(sorted_a) *
                            count_normalization(sorted_b) * count_normalization(sorted_a_ann) *
                            count_normalization(sorted_b_ann);
          add_to(out, std::move(next), c * v * FormalValue(scalar));
        };
        if (ca_sum == 0) {
          emit({});
          return;
        }
        for (int ca = 1; ca <= ca_sum && ca <= u_room; ++ca)
          detail::partitions(ca_sum, ca, bounds_.w_max, aparts, emit);
      });
    }
  }

  int l_, k_;
  Bounds bounds_;
  int t_target_, u_target_, left_over_;
  BasisKey target_;
  OracleCache& value_;
};

std::vector<int> abs_parts(const std::vector<int>& xs, bool negative) {
  std::vector<int> out;
  for (int x : xs)
    if ((x < 0) == negative) out.push_back(std::abs(x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FormalValue matrix_element(const DiscreteData& data, const VertexOracle& oracle, std::optional<Bounds> bounds,
                           bool unsafe) {
  require_valid(data);
  const Bounds safe = default_bounds(data);
  const Bounds used = bounds.value_or(safe);
  if (!unsafe) {
    if (used.w_max < safe.w_max)
      throw BoundsError("w_max " + std::to_string(used.w_max) + " is below the flux bound " +
                        std::to_string(safe.w_max));
    if (used.t_max < safe.t_max)
      throw BoundsError("t_max " + std::to_string(used.t_max) + " is below a = " + std::to_string(data.a));
    if (used.u_max < safe.u_max)
      throw BoundsError("u_max " + std::to_string(used.u_max) + " is below the required u-power " +
                        std::to_string(safe.u_max));
  }
  const int h = data.u_degree();
  if (used.t_max < data.a || used.u_max < h) return FormalValue();

  const auto phi_minus = abs_parts(data.phi, true), phi_plus = abs_parts(data.phi, false);
  const auto mu_minus = abs_parts(data.mu, true), mu_plus = abs_parts(data.mu, false);
  // ket v_{mu+, phi+}: a-creators from mu+, b-creators from phi+
  const BasisKey start{mu_plus, phi_plus};
  // the bra v_{mu-, phi-} pairs with kets whose a-part is phi- and b-part is mu-
  const BasisKey target{phi_minus, mu_minus};

  GradedState state;
  state.emplace(GradedKey{0, 0, start}, FormalValue(1));
  OracleCache value(oracle);
  for (int i = data.n() - 1; i >= 0 && !state.empty(); --i)
    state = MStep(data.psi[i], data.k, used, data.a, h, i, target, value)(state);

  FockVector ket;
  for (const auto& [gk, c] : state)
    if (gk.t == data.a && gk.u == h) ket.add(gk.key, c);
  FormalValue result = inner_product(FockVector::basis(mu_minus, phi_minus), ket);

  Rational prefactor = automorphisms(data.mu) * automorphisms(data.phi);
  for (int x : data.mu) prefactor /= std::abs(x);
  for (int x : data.phi) prefactor /= std::abs(x);
  result *= prefactor;
  return result;
}

}  // namespace psifock
