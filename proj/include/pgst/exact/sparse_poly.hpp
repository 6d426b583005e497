#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/rational.hpp"

namespace pgst::exact {

inline constexpr std::size_t kMaxSymbols = 2;

// Slot 0 is the spectral variable t, slots 1.. follow the sorted symbol list.
using Exponents = std::array<std::uint32_t, 1 + kMaxSymbols>;

// Graded lexicographic, t highest. Used as "greater", so maps iterate leading term first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial over Q in t and up to two named parameter symbols.
///
/// Symbols are kept sorted by name. Two polynomials with different symbol lists combine by
/// taking the union; unused symbols are dropped only when the union would exceed the cap.
class SparsePoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  SparsePoly() = default;
  SparsePoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Exponents{}, c);
  }
  SparsePoly(long c) : SparsePoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  SparsePoly(int c) : SparsePoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static SparsePoly t(std::uint32_t power = 1) {
    SparsePoly p;
    Exponents e{};
    e[0] = power;
    p.terms_.emplace(e, Rational(1));
    return p;
  }

  static SparsePoly symbol(const std::string& name, std::uint32_t power = 1) {
    check_symbol_name(name);
    SparsePoly p;
    p.symbols_ = {name};
    Exponents e{};
    e[1] = power;
    p.terms_.emplace(e, Rational(1));
    return p;
  }

  static bool valid_symbol_name(std::string_view name) {
    if (name.empty() || name == "t") return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

  static void check_symbol_name(std::string_view name) {
    if (!valid_symbol_name(name))
      throw DomainError("invalid parameter symbol name '" + std::string(name) + "'");
  }

  const std::vector<std::string>& symbols() const { return symbols_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Symbols that occur with a nonzero exponent, in sorted order.
  std::vector<std::string> used_symbols() const {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < symbols_.size(); ++s) {
      bool used = std::any_of(terms_.begin(), terms_.end(),
                              [&](const auto& kv) { return kv.first[s + 1] != 0; });
      if (used) out.push_back(symbols_[s]);
    }
    return out;
  }

  bool contains(const std::string& sym) const { return degree(sym) > 0; }

  std::uint32_t degree_t() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0]);
    return d;
  }

  std::uint32_t degree(const std::string& sym) const {
    auto slot = slot_of(sym);
    if (!slot) return 0;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[*slot]);
    return d;
  }

  bool free_of_t() const { return degree_t() == 0; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
  }

  Rational constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_value() const {
    if (!is_constant()) throw DomainError("polynomial " + to_string() + " is not a constant");
    return constant_term();
  }

  // Coefficient of t^k as a polynomial in the symbols.
  SparsePoly coeff_t(std::uint32_t k) const {
    SparsePoly out;
    out.symbols_ = symbols_;
    for (const auto& [e, c] : terms_) {
      if (e[0] != k) continue;
      Exponents f = e;
      f[0] = 0;
      out.terms_.emplace(f, c);
    }
    return out;
  }

  // Low-to-high coefficients in t; element k multiplies t^k.
  std::vector<SparsePoly> t_coefficients() const {
    std::vector<SparsePoly> out(is_zero() ? 0 : degree_t() + 1);
    for (auto& c : out) c.symbols_ = symbols_;
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[0] = 0;
      out[e[0]].terms_.emplace(f, c);
    }
    return out;
  }

  static SparsePoly from_t_coefficients(const std::vector<SparsePoly>& coeffs) {
    SparsePoly out;
    for (std::uint32_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      if (!coeffs[k].free_of_t()) throw DomainError("t-coefficient must be free of t");
      out += coeffs[k] * t(k);
    }
    return out;
  }

  SparsePoly leading_coeff_t() const { return coeff_t(degree_t()); }

  bool is_monic_t() const {
    if (is_zero()) return false;
    SparsePoly lc = leading_coeff_t();
    return lc.is_constant() && lc.constant_term() == 1;
  }

  // Replaces sym by a rational value; the symbol disappears from the result.
  SparsePoly substitute(const std::string& sym, const Rational& value) const {
    auto slot = slot_of(sym);
    if (!slot) return *this;
    SparsePoly out;
    out.symbols_ = symbols_;
    out.symbols_.erase(out.symbols_.begin() + static_cast<long>(*slot - 1));
    for (const auto& [e, c] : terms_) {
      Rational factor = c;
      if (e[*slot] != 0) {
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e[*slot]);
        mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e[*slot]);
        factor *= pw;
      }
      if (factor == 0) continue;
      Exponents f{};
      f[0] = e[0];
      std::size_t w = 1;
      for (std::size_t r = 1; r <= symbols_.size(); ++r)
        if (r != *slot) f[w++] = e[r];
      out.add_term(f, factor);
    }
    return out;
  }

  // Evaluates t and every symbol; missing symbol values are an error.
  template <typename Real, typename Lookup>
  Real evaluate(Real t_value, const Lookup& symbol_value) const {
    std::vector<Real> sym_values;
    for (const auto& s : symbols_) sym_values.push_back(static_cast<Real>(symbol_value(s)));
    Real acc = 0;
    for (const auto& [e, c] : terms_) {
      Real term = static_cast<Real>(c.get_num().get_d()) / static_cast<Real>(c.get_den().get_d());
      for (std::uint32_t i = 0; i < e[0]; ++i) term *= t_value;
      for (std::size_t s = 0; s < symbols_.size(); ++s)
        for (std::uint32_t i = 0; i < e[s + 1]; ++i) term *= sym_values[s];
      acc += term;
    }
    return acc;
  }

  // Exact evaluation at t = x for a polynomial free of symbols.
  Rational evaluate_exact(const Rational& x) const {
    if (!used_symbols().empty()) throw DomainError("evaluate_exact needs a symbol-free polynomial");
    auto coeffs = t_coefficients();
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->constant_term();
    return acc;
  }

  SparsePoly derivative_t() const {
    SparsePoly out;
    out.symbols_ = symbols_;
    for (const auto& [e, c] : terms_) {
      if (e[0] == 0) continue;
      Exponents f = e;
      f[0] -= 1;
      out.terms_.emplace(f, c * e[0]);
    }
    return out;
  }

  SparsePoly pow(std::uint32_t k) const {
    SparsePoly result(1);
    SparsePoly base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  SparsePoly operator-() const {
    SparsePoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  SparsePoly& operator+=(const SparsePoly& o) { return accumulate(o, false); }
  SparsePoly& operator-=(const SparsePoly& o) { return accumulate(o, true); }

  SparsePoly& operator*=(const SparsePoly& o) {
    *this = *this * o;
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return SparsePoly();
    if (a.is_constant()) return b.scaled(a.constant_term());
    if (b.is_constant()) return a.scaled(b.constant_term());
    auto [x, y] = unify(a, b);
    SparsePoly out;
    out.symbols_ = x.symbols_;
    Rational prod;
    for (const auto& [ea, ca] : x.terms_) {
      for (const auto& [eb, cb] : y.terms_) {
        Exponents e;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        prod = ca * cb;
        out.add_term(e, prod);
      }
    }
    return out;
  }

  SparsePoly scaled(const Rational& c) const {
    if (c == 0) return SparsePoly();
    SparsePoly out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.symbols_ == b.symbols_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

  /// Exact quotient a / d, or nullopt when d does not divide a.
  std::optional<SparsePoly> try_divide(const SparsePoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
    if (divisor.is_constant()) return scaled(Rational(1) / divisor.constant_term());
    auto [rem, d] = unify(*this, divisor);
    SparsePoly quotient;
    quotient.symbols_ = rem.symbols_;
    const auto& [lead_d, lead_c] = *d.terms_.begin();
    while (!rem.is_zero()) {
      const auto& [lead_r, lead_rc] = *rem.terms_.begin();
      Exponents q{};
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (lead_r[i] < lead_d[i]) return std::nullopt;
        q[i] = lead_r[i] - lead_d[i];
      }
      Rational qc = lead_rc / lead_c;
      quotient.add_term(q, qc);
      for (const auto& [e, c] : d.terms_) {
        Exponents f;
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = e[i] + q[i];
        rem.add_term(f, Rational(-qc * c));
      }
    }
    return quotient;
  }

  SparsePoly divide_exact(const SparsePoly& divisor) const {
    auto q = try_divide(divisor);
    if (!q)
      throw InternalError("inexact polynomial division: (" + to_string() + ") / (" +
                          divisor.to_string() + ")");
    return *q;
  }

  /// Canonical text: terms in graded-lex order (t highest), symbols before t in each monomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      bool negative = c < 0;
      Rational mag = negative ? Rational(-c) : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono = monomial_string(e);
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const SparsePoly& p) {
    return os << p.to_string();
  }

  // Copy of p carrying exactly the given (sorted) symbol list; p's used symbols must be a subset.
  static SparsePoly with_symbols(const SparsePoly& p, const std::vector<std::string>& target) {
    if (p.symbols_ == target) return p;
    std::vector<std::size_t> map(p.symbols_.size(), 0);
    for (std::size_t s = 0; s < p.symbols_.size(); ++s) {
      auto it = std::find(target.begin(), target.end(), p.symbols_[s]);
      map[s] = it == target.end() ? 0 : static_cast<std::size_t>(it - target.begin()) + 1;
    }
    SparsePoly out;
    out.symbols_ = target;
    for (const auto& [e, c] : p.terms_) {
      Exponents f{};
      f[0] = e[0];
      for (std::size_t s = 0; s < p.symbols_.size(); ++s) {
        if (e[s + 1] == 0) continue;
        if (map[s] == 0) throw InternalError("symbol remap lost '" + p.symbols_[s] + "'");
        f[map[s]] = e[s + 1];
      }
      out.terms_.emplace(f, c);
    }
    return out;
  }

 private:
  std::optional<std::size_t> slot_of(const std::string& sym) const {
    for (std::size_t s = 0; s < symbols_.size(); ++s)
      if (symbols_[s] == sym) return s + 1;
    return std::nullopt;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePoly& accumulate(const SparsePoly& o, bool subtract) {
    if (o.is_zero()) return *this;
    if (symbols_ != o.symbols_) {
      auto [x, y] = unify(*this, o);
      *this = std::move(x);
      return accumulate(y, subtract);
    }
    for (const auto& [e, c] : o.terms_) add_term(e, subtract ? Rational(-c) : c);
    return *this;
  }

  static std::vector<std::string> merged(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  static std::pair<SparsePoly, SparsePoly> unify(const SparsePoly& a, const SparsePoly& b) {
    if (a.symbols_ == b.symbols_) return {a, b};
    auto target = merged(a.symbols_, b.symbols_);
    if (target.size() > kMaxSymbols) target = merged(a.used_symbols(), b.used_symbols());
    if (target.size() > kMaxSymbols)
      throw DomainError("more than " + std::to_string(kMaxSymbols) + " parameter symbols");
    return {with_symbols(a, target), with_symbols(b, target)};
  }

  std::string monomial_string(const Exponents& e) const {
    std::string out;
    auto factor = [&](const std::string& name, std::uint32_t k) {
      if (k == 0) return;
      if (!out.empty()) out += "*";
      out += name;
      if (k > 1) out += "^" + std::to_string(k);
    };
    for (std::size_t s = 0; s < symbols_.size(); ++s) factor(symbols_[s], e[s + 1]);
    factor("t", e[0]);
    return out;
  }

  std::vector<std::string> symbols_;
  TermMap terms_;
};

namespace detail {

// Recursive-descent parser: sums, products, integer powers, parentheses, rational literals.
class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial '" + std::string(s_) + "': " + why + " at offset " +
                     std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly expr() {
    SparsePoly acc = term();
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  SparsePoly term() {
    SparsePoly acc = unary();
    while (eat('*')) acc *= unary();
    return acc;
  }

  SparsePoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  SparsePoly power() {
    SparsePoly base = atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      auto k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 100000) fail("exponent too large");
      base = base.pow(static_cast<std::uint32_t>(k));
    }
    return base;
  }

  SparsePoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      auto digits = [&] {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      };
      digits();
      if (pos_ + 1 < s_.size() && (s_[pos_] == '/' || s_[pos_] == '.') &&
          std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        digits();
      }
      return SparsePoly(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "t") return SparsePoly::t();
      return SparsePoly::symbol(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SparsePoly parse_poly(std::string_view text) {
  try {
    return detail::PolyParser(text).parse();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace pgst::exact
