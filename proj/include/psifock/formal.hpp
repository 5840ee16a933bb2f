#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace psifock {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a reduced rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
/// Reduced p/q; mpq_class(p, q) alone leaves the fraction unreduced.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// A one-point stationary relative invariant
///   <(phi-, mu-) | tau_k(pt) | (phi+, mu+)>_g
/// used as the multiplicity of a single vertex. All tangency lists hold
/// absolute contact orders and are kept sorted non-decreasing.
struct VertexSymbol {
  int genus = 0;
  int psi = 0;
  std::vector<int> phi_minus;
  std::vector<int> mu_minus;
  std::vector<int> phi_plus;
  std::vector<int> mu_plus;

  /// Builds a symbol, sorting each list.
  static VertexSymbol make(int genus, int psi, std::vector<int> phi_minus,
                           std::vector<int> mu_minus, std::vector<int> phi_plus,
                           std::vector<int> mu_plus);

  bool is_canonical() const;
  int thick_count() const { return static_cast<int>(mu_minus.size() + mu_plus.size()); }

  /// Size of the floor carrying the vertex, recovered from the word shape
  /// #thick = psi + 2 - 2 size - genus. Empty if the parity does not work out.
  std::optional<int> size() const;

  std::string to_string() const;

  auto operator<=>(const VertexSymbol&) const = default;
  bool operator==(const VertexSymbol&) const = default;
};

/// Multiset of vertex symbols, stored sorted with repetitions.
using Monomial = std::vector<VertexSymbol>;

Monomial make_monomial(std::vector<VertexSymbol> symbols);

/// Exact polynomial over vertex symbols with rational coefficients.
/// No term with zero coefficient is ever stored. Symbols are interned
/// process-wide, so monomials are compared as id lists.
class FormalValue {
 public:
  FormalValue() = default;
  FormalValue(const Rational& constant);  // NOLINT(implicit)
  FormalValue(long constant) : FormalValue(Rational(constant)) {}  // NOLINT(implicit)
  FormalValue(int constant) : FormalValue(Rational(constant)) {}   // NOLINT(implicit)

  static FormalValue symbol(const VertexSymbol& v);
  static FormalValue term(Monomial m, const Rational& coefficient);

  bool is_zero() const { return terms_.empty(); }
  /// True if the value has no symbolic part (possibly zero).
  bool is_constant() const;
  /// Constant term (coefficient of the empty monomial).
  Rational constant() const;
  Rational coefficient_of(const Monomial& m) const;
  std::size_t size() const { return terms_.size(); }
  /// Terms ordered by symbol content, independent of interning order.
  std::vector<std::pair<Monomial, Rational>> terms() const;

  FormalValue& operator+=(const FormalValue& other);
  FormalValue& operator-=(const FormalValue& other);
  FormalValue& operator*=(const FormalValue& other);
  FormalValue& operator*=(const Rational& factor);
  /// this += coefficient * m.
  void add_term(const Monomial& m, const Rational& coefficient);

  friend FormalValue operator+(FormalValue a, const FormalValue& b) { return a += b; }
  friend FormalValue operator-(FormalValue a, const FormalValue& b) { return a -= b; }
  friend FormalValue operator*(const FormalValue& a, const FormalValue& b);
  friend FormalValue operator*(FormalValue a, const Rational& b) { return a *= b; }
  friend FormalValue operator-(FormalValue a) { return a *= Rational(-1); }

  FormalValue scale(const Rational& factor) const { return *this * factor; }

  bool operator==(const FormalValue& other) const { return terms_ == other.terms_; }

  std::string to_string() const;

 private:
  using Key = std::vector<std::uint32_t>;  // sorted symbol ids
  static Key key_of(const Monomial& m);
  void add_key(const Key& k, const Rational& coefficient);

  std::map<Key, Rational> terms_;
};

class VertexOracle;

/// Replaces every symbol by its value under the oracle (ring homomorphism).
FormalValue substitute(const FormalValue& value, const VertexOracle& oracle);

enum class OracleMode { Formal, Builtin, Table };

/// Evaluation policy for vertex multiplicities.
///
/// Formal keeps every symbol. Builtin knows only the psi = 0 vertices, whose
/// values are pinned by the closed form of the operator M_0: the fiber vertex
/// <(d)|tau_0|(d)>_0 and the size-one primary floors are 1, every other psi = 0
/// symbol vanishes. Table consults user overrides first and falls back to Builtin.
class VertexOracle {
 public:
  VertexOracle() = default;
  explicit VertexOracle(OracleMode mode) : mode_(mode) {}

  static VertexOracle formal() { return VertexOracle(OracleMode::Formal); }
  static VertexOracle builtin() { return VertexOracle(OracleMode::Builtin); }
  static VertexOracle table(std::map<VertexSymbol, FormalValue> entries);

  OracleMode mode() const { return mode_; }
  const std::map<VertexSymbol, FormalValue>& entries() const { return entries_; }

  /// Throws std::invalid_argument for a non-canonical symbol.
  FormalValue evaluate(const VertexSymbol& v) const;

 private:
  OracleMode mode_ = OracleMode::Formal;
  std::map<VertexSymbol, FormalValue> entries_;
};

/// Value of a psi = 0 symbol according to the closed form of M_0.
Rational builtin_primary_value(const VertexSymbol& v);

}  // namespace psifock
