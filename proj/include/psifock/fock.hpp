#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psifock/core.hpp"
#include "psifock/formal.hpp"

namespace psifock {

enum class Family { A, B };

/// Heisenberg generator a_n or b_n, with [a_n, b_m] = n delta_{n,-m}.
struct Generator {
  Family family = Family::A;
  int index = 1;
  auto operator<=>(const Generator&) const = default;
};

inline Generator gen_a(int n) { return {Family::A, n}; }
inline Generator gen_b(int n) { return {Family::B, n}; }

std::string to_string(Generator g);
std::string to_string(const std::vector<Generator>& ops);

/// [x, y] as a scalar.
Rational commutator(Generator x, Generator y);

struct FockWord {
  std::vector<Generator> ops;
  FormalValue coefficient = FormalValue(1);
  int t = 0;
  int u = 0;  // may be negative: each operator factor contributes u^(g-1)
};

/// The :...: reordering: negative-index generators first, relative order kept.
std::vector<Generator> normally_ordered(const std::vector<Generator>& ops);

/// Canonical representative of a normally ordered product: creators sorted,
/// then annihilators sorted. Valid because creators commute among themselves,
/// as do annihilators.
std::vector<Generator> canonical_normal_form(std::vector<Generator> ops);

using WordCombination = std::map<std::vector<Generator>, FormalValue>;

/// Rewrites with the commutation relations until every positive-index
/// generator is rightmost. Keys are canonical normal forms; the empty key
/// holds the scalar part. Zero-index generators make the word vanish.
WordCombination normal_order(const FockWord& word);

FormalValue vacuum_expectation(const FockWord& word);

/// Pair of partitions (sorted positive parts): phi counts a-creators, mu b-creators.
struct BasisKey {
  std::vector<int> phi;
  std::vector<int> mu;
  auto operator<=>(const BasisKey&) const = default;
};

/// Linear combination of the normalized basis vectors
///   v_{phi,mu} = 1/(|Aut phi| |Aut mu|) prod a_{-phi_i} prod b_{-mu_j} v_empty.
class FockVector {
 public:
  FockVector() = default;
  static FockVector basis(std::vector<int> phi, std::vector<int> mu);
  static FockVector vacuum() { return basis({}, {}); }

  void add(const BasisKey& key, const FormalValue& coefficient);
  FockVector& operator+=(const FockVector& other);
  FockVector& operator*=(const FormalValue& factor);

  const std::map<BasisKey, FormalValue>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const FockVector& other) const { return terms_ == other.terms_; }

 private:
  std::map<BasisKey, FormalValue> terms_;
};

FockVector apply(Generator g, const FockVector& v);
/// Applies the word right to left and scales by its coefficient.
FockVector apply(const FockWord& word, const FockVector& v);

/// Bilinear form with <v_{phi,mu} | v_{phi',mu'}> =
///   prod phi prod mu / (|Aut phi| |Aut mu|) if phi = mu' and mu = phi', else 0.
FormalValue inner_product(const FockVector& x, const FockVector& y);

struct Bounds {
  int t_max = 0;
  int u_max = 0;
  int w_max = 0;
};

/// Raised when truncation bounds cannot contain every contributing term.
class BoundsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated M_l: words with their t,u grading and oracle coefficients.
struct OperatorSeries {
  std::vector<FockWord> words;  // canonical normal forms, sorted by (t, u, ops)

  /// Sum of all words with this grading whose ops equal the key.
  FormalValue coefficient(const std::vector<Generator>& ops, int t, int u) const;
};

/// One-point symbol of a summand of M_l. `bs` are the b-indices, `as` the a-indices.
VertexSymbol word_symbol(int l, int genus, const std::vector<int>& bs, const std::vector<int>& as);

/// 1 / prod (multiplicity of each distinct generator)!: the coefficient a
/// distinct normally ordered monomial receives per unit of oracle value.
Rational word_normalization(const std::vector<Generator>& ops);

/// All summands of M_l within bounds: s <= t_max, u-power <= u_max, |z| <= w_max.
/// The empty word (no generators) is included when sum z = -k s admits it.
OperatorSeries build_M(int l, const Bounds& bounds, int k, const VertexOracle& oracle);

/// Safe defaults: t_max = a, u_max = g + l(phi-) + l(mu-) - 1, w_max = flux bound.
Bounds default_bounds(const DiscreteData& data);

/// Prefactor times the t^a u^h coefficient of <v_{mu-,phi-}| prod M_{k_i} |v_{mu+,phi+}>,
/// i.e. the disconnected invariant. Throws InvalidData on invalid data and
/// BoundsError when explicit bounds fall below the safe defaults (unless unsafe).
FormalValue matrix_element(const DiscreteData& data, const VertexOracle& oracle,
                           std::optional<Bounds> bounds = std::nullopt, bool unsafe = false);

}  // namespace psifock
