#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "exotic/rational.hpp"

namespace exotic {

inline constexpr int kMaxDim = 3;

// Per-variable factor x^power * trig(k x) with trig in {1, cos, sin}.
struct VarFactor {
  enum Trig : std::uint8_t { one = 0, cos = 1, sin = 2 };
  std::uint8_t power = 0;
  Trig trig = one;
  std::uint16_t k = 0;  // frequency, 0 iff trig == one

  friend bool operator<(const VarFactor& a, const VarFactor& b) {
    if (a.power != b.power) return a.power < b.power;
    if (a.trig != b.trig) return a.trig < b.trig;
    return a.k < b.k;
  }
  friend bool operator==(const VarFactor& a, const VarFactor& b) {
    return a.power == b.power && a.trig == b.trig && a.k == b.k;
  }
};

using Monomial = std::array<VarFactor, kMaxDim>;

// Trigonometric polynomial over x1..x3 with rational coefficients, kept in
// the expanded basis of products of VarFactor.
class Expr {
 public:
  Expr() = default;
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Expr var(int i);
  static Expr cos(int i, int k);
  static Expr sin(int i, int k);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Highest variable index used, plus one.
  int dimension() const;
  bool periodic() const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Rational& c);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator-(Expr a) { return a *= -1; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  void add_term(const Monomial& m, const Rational& c);

 private:
  std::map<Monomial, Rational> terms_;
};

Expr pow(const Expr& e, int n);
// k-fold partial derivative with respect to x_{i+1} (i is zero based).
Expr partial(const Expr& e, int i, int k = 1);
Expr partial(const Expr& e, const std::vector<int>& indices);

double eval_at(const Expr& e, const std::array<double, kMaxDim>& x);
std::string to_string(const Expr& e);

// Grammar: rationals, x1..x3 (x, y, z accepted), sin(k*xi), cos(k*xi),
// + - * /, ^ with nonnegative integer exponent, parentheses.
Expr parse_expr(std::string_view text);

// Fast double evaluation of a fixed expression.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const Expr& e);
  double operator()(const std::array<double, kMaxDim>& x) const;

 private:
  struct Term {
    double coeff;
    Monomial mono;
  };
  std::vector<Term> terms_;
};

}  // namespace exotic
