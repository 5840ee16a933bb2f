#include "psifock/formal.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <iterator>
#include <sstream>

namespace psifock {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid_integer = [](std::string_view digits, bool allow_sign) {
    if (allow_sign && !digits.empty() && (digits[0] == '-' || digits[0] == '+'))
      digits.remove_prefix(1);
    return !digits.empty() &&
           std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

VertexSymbol VertexSymbol::make(int genus, int psi, std::vector<int> phi_minus,
                                std::vector<int> mu_minus, std::vector<int> phi_plus,
                                std::vector<int> mu_plus) {
  VertexSymbol v{genus, psi, std::move(phi_minus), std::move(mu_minus), std::move(phi_plus),
                 std::move(mu_plus)};
  std::sort(v.phi_minus.begin(), v.phi_minus.end());
  std::sort(v.mu_minus.begin(), v.mu_minus.end());
  std::sort(v.phi_plus.begin(), v.phi_plus.end());
  std::sort(v.mu_plus.begin(), v.mu_plus.end());
  return v;
}

bool VertexSymbol::is_canonical() const {
  auto ok = [](const std::vector<int>& xs) {
    return std::is_sorted(xs.begin(), xs.end()) &&
           std::all_of(xs.begin(), xs.end(), [](int x) { return x > 0; });
  };
  return genus >= 0 && psi >= 0 && ok(phi_minus) && ok(mu_minus) && ok(phi_plus) && ok(mu_plus);
}

std::optional<int> VertexSymbol::size() const {
  int twice = psi + 2 - genus - thick_count();
  if (twice < 0 || twice % 2 != 0) return std::nullopt;
  return twice / 2;
}

namespace {

void print_list(std::ostream& os, const std::vector<int>& xs) {
  os << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << ')';
}

}  // namespace

std::string VertexSymbol::to_string() const {
  std::ostringstream os;
  os << '<';
  print_list(os, phi_minus);
  os << ',';
  print_list(os, mu_minus);
  os << "|tau_" << psi << '|';
  print_list(os, phi_plus);
  os << ',';
  print_list(os, mu_plus);
  os << ">_" << genus;
  return os.str();
}

Monomial make_monomial(std::vector<VertexSymbol> symbols) {
  std::sort(symbols.begin(), symbols.end());
  return symbols;
}

namespace {

class SymbolTable {
 public:
  std::uint32_t intern(const VertexSymbol& v) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(v, static_cast<std::uint32_t>(symbols_.size()));
    if (inserted) symbols_.push_back(v);
    return it->second;
  }
  VertexSymbol lookup(std::uint32_t id) {
    std::lock_guard lock(mutex_);
    return symbols_.at(id);
  }

 private:
  std::mutex mutex_;
  std::map<VertexSymbol, std::uint32_t> ids_;
  std::deque<VertexSymbol> symbols_;
};

SymbolTable& symbol_table() {
  static SymbolTable table;
  return table;
}

}  // namespace

FormalValue::Key FormalValue::key_of(const Monomial& m) {
  Key k;
  k.reserve(m.size());
  for (const auto& v : m) k.push_back(symbol_table().intern(v));
  std::sort(k.begin(), k.end());
  return k;
}

FormalValue::FormalValue(const Rational& constant) {
  if (constant != 0) terms_.emplace(Key{}, constant);
}

FormalValue FormalValue::symbol(const VertexSymbol& v) {
  FormalValue f;
  f.terms_.emplace(Key{symbol_table().intern(v)}, 1);
  return f;
}

FormalValue FormalValue::term(Monomial m, const Rational& coefficient) {
  FormalValue f;
  if (coefficient != 0) f.terms_.emplace(key_of(m), coefficient);
  return f;
}

bool FormalValue::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational FormalValue::constant() const {
  auto it = terms_.find(Key{});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational FormalValue::coefficient_of(const Monomial& m) const {
  auto it = terms_.find(key_of(m));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<Monomial, Rational>> FormalValue::terms() const {
  std::vector<std::pair<Monomial, Rational>> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    Monomial m;
    for (auto id : k) m.push_back(symbol_table().lookup(id));
    out.emplace_back(make_monomial(std::move(m)), c);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

void FormalValue::add_key(const Key& k, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void FormalValue::add_term(const Monomial& m, const Rational& coefficient) { add_key(key_of(m), coefficient); }

FormalValue& FormalValue::operator+=(const FormalValue& other) {
  for (const auto& [k, c] : other.terms_) add_key(k, c);
  return *this;
}

FormalValue& FormalValue::operator-=(const FormalValue& other) {
  for (const auto& [k, c] : other.terms_) add_key(k, -c);
  return *this;
}

FormalValue& FormalValue::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
  } else {
    for (auto& [k, c] : terms_) c *= factor;
  }
  return *this;
}

FormalValue operator*(const FormalValue& a, const FormalValue& b) {
  FormalValue out;
  FormalValue::Key k;
  Rational c;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      k.clear();
      std::merge(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(k));
      mpq_mul(c.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      out.add_key(k, c);
    }
  }
  return out;
}

FormalValue& FormalValue::operator*=(const FormalValue& other) {
  if (other.is_constant()) return *this *= other.constant();
  return *this = *this * other;
}

std::string FormalValue::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms()) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = magnitude == 1;
    if (!unit || m.empty()) os << magnitude.get_str();
    // print repeated symbols as powers
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (!unit || i > 0) os << '*';
      os << m[i].to_string();
      if (j - i > 1) os << '^' << (j - i);
      i = j;
    }
  }
  return os.str();
}

FormalValue substitute(const FormalValue& value, const VertexOracle& oracle) {
  FormalValue out;
  for (const auto& [m, c] : value.terms()) {
    FormalValue product(c);
    for (const auto& v : m) {
      product *= oracle.evaluate(v);
      if (product.is_zero()) break;
    }
    out += product;
  }
  return out;
}

VertexOracle VertexOracle::table(std::map<VertexSymbol, FormalValue> entries) {
  VertexOracle o(OracleMode::Table);
  for (auto& [v, value] : entries) {
    if (!v.is_canonical()) throw std::invalid_argument("table entry " + v.to_string() + " is not canonical");
    o.entries_.emplace(v, std::move(value));
  }
  return o;
}

Rational builtin_primary_value(const VertexSymbol& v) {
  auto size = v.size();
  if (!size) return 0;
  if (*size == 0) {
    // fiber vertex: a d-fold cover of the fiber through the point
    bool fiber = v.genus == 0 && v.phi_minus.empty() && v.phi_plus.empty() &&
                 v.mu_minus.size() == 1 && v.mu_plus.size() == 1 && v.mu_minus[0] == v.mu_plus[0];
    return fiber ? 1 : 0;
  }
  if (*size == 1 && v.genus == 0 && v.thick_count() == 0) return 1;
  return 0;
}

FormalValue VertexOracle::evaluate(const VertexSymbol& v) const {
  if (!v.is_canonical()) throw std::invalid_argument("malformed vertex symbol " + v.to_string());
  switch (mode_) {
    case OracleMode::Formal:
      return FormalValue::symbol(v);
    case OracleMode::Table:
      if (auto it = entries_.find(v); it != entries_.end()) return it->second;
      [[fallthrough]];
    case OracleMode::Builtin:
      if (v.psi == 0) return FormalValue(builtin_primary_value(v));
      return FormalValue::symbol(v);
  }
  return FormalValue::symbol(v);
}

}  // namespace psifock
