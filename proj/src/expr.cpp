#include "exotic/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace exotic {

namespace {

struct Piece {
  Rational c;
  VarFactor f;
};

// trig(k) with signed k, normalized to k >= 0.
Piece make_trig(VarFactor::Trig t, int k, std::uint8_t power, const Rational& c) {
  if (t == VarFactor::sin) {
    if (k == 0) return {0, {}};
    if (k < 0) return {-c, {power, VarFactor::sin, static_cast<std::uint16_t>(-k)}};
    return {c, {power, VarFactor::sin, static_cast<std::uint16_t>(k)}};
  }
  if (k == 0) return {c, {power, VarFactor::one, 0}};
  return {c, {power, VarFactor::cos, static_cast<std::uint16_t>(k < 0 ? -k : k)}};
}

std::vector<Piece> multiply(const VarFactor& a, const VarFactor& b) {
  const auto p = static_cast<std::uint8_t>(a.power + b.power);
  if (a.trig == VarFactor::one) return {{1, {p, b.trig, b.k}}};
  if (b.trig == VarFactor::one) return {{1, {p, a.trig, a.k}}};
  const int x = a.k, y = b.k;
  const Rational h(1, 2);
  if (a.trig == VarFactor::cos && b.trig == VarFactor::cos)
    return {make_trig(VarFactor::cos, x - y, p, h), make_trig(VarFactor::cos, x + y, p, h)};
  if (a.trig == VarFactor::sin && b.trig == VarFactor::sin)
    return {make_trig(VarFactor::cos, x - y, p, h), make_trig(VarFactor::cos, x + y, p, -h)};
  if (a.trig == VarFactor::sin)  // sin x cos y
    return {make_trig(VarFactor::sin, x + y, p, h), make_trig(VarFactor::sin, x - y, p, h)};
  // cos x sin y
  return {make_trig(VarFactor::sin, x + y, p, h), make_trig(VarFactor::sin, y - x, p, h)};
}

}  // namespace

Expr::Expr(const Rational& c) {
  if (c != 0) terms_[Monomial{}] = c;
}

Expr Expr::var(int i) {
  Monomial m{};
  m.at(static_cast<std::size_t>(i)).power = 1;
  Expr e;
  e.terms_[m] = 1;
  return e;
}

Expr Expr::cos(int i, int k) {
  Monomial m{};
  Piece p = make_trig(VarFactor::cos, k, 0, 1);
  m.at(static_cast<std::size_t>(i)) = p.f;
  Expr e;
  e.add_term(m, p.c);
  return e;
}

Expr Expr::sin(int i, int k) {
  Monomial m{};
  Piece p = make_trig(VarFactor::sin, k, 0, 1);
  m.at(static_cast<std::size_t>(i)) = p.f;
  Expr e;
  e.add_term(m, p.c);
  return e;
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

int Expr::dimension() const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kMaxDim; ++i)
      if (!(m[static_cast<std::size_t>(i)] == VarFactor{})) d = std::max(d, i + 1);
  return d;
}

bool Expr::periodic() const {
  for (const auto& [m, c] : terms_)
    for (const auto& f : m)
      if (f.power) return false;
  return true;
}

void Expr::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Expr& Expr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      std::array<std::vector<Piece>, kMaxDim> per;
      for (std::size_t i = 0; i < kMaxDim; ++i) per[i] = multiply(ma[i], mb[i]);
      for (const Piece& p0 : per[0])
        for (const Piece& p1 : per[1])
          for (const Piece& p2 : per[2]) out.add_term({p0.f, p1.f, p2.f}, ca * cb * p0.c * p1.c * p2.c);
    }
  return out;
}

Expr pow(const Expr& e, int n) {
  if (n < 0) throw std::invalid_argument("negative exponent");
  Expr r(1);
  for (int i = 0; i < n; ++i) r = r * e;
  return r;
}

Expr partial(const Expr& e, int i, int k) {
  Expr cur = e;
  const auto ui = static_cast<std::size_t>(i);
  for (int step = 0; step < k; ++step) {
    Expr next;
    for (const auto& [m, c] : cur.terms()) {
      const VarFactor& f = m[ui];
      if (f.power) {
        Monomial d = m;
        d[ui].power = static_cast<std::uint8_t>(f.power - 1);
        next.add_term(d, c * f.power);
      }
      if (f.trig != VarFactor::one) {
        Monomial d = m;
        if (f.trig == VarFactor::cos) {
          d[ui].trig = VarFactor::sin;
          next.add_term(d, -c * f.k);
        } else {
          d[ui].trig = VarFactor::cos;
          next.add_term(d, c * f.k);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Expr partial(const Expr& e, const std::vector<int>& indices) {
  Expr cur = e;
  for (int i : indices) cur = partial(cur, i, 1);
  return cur;
}

namespace {

double factor_value(const VarFactor& f, double x) {
  double v = f.power ? std::pow(x, f.power) : 1.0;
  if (f.trig == VarFactor::cos) v *= std::cos(f.k * x);
  if (f.trig == VarFactor::sin) v *= std::sin(f.k * x);
  return v;
}

}  // namespace

double eval_at(const Expr& e, const std::array<double, kMaxDim>& x) {
  double s = 0;
  for (const auto& [m, c] : e.terms()) {
    double t = c.get_d();
    for (std::size_t i = 0; i < kMaxDim; ++i) t *= factor_value(m[i], x[i]);
    s += t;
  }
  return s;
}

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : e.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < kMaxDim; ++i) {
      const VarFactor& f = m[i];
      std::string var = "x" + std::to_string(i + 1);
      if (f.power) {
        if (!mono.empty()) mono += "*";
        mono += var;
        if (f.power > 1) mono += "^" + std::to_string(f.power);
      }
      if (f.trig != VarFactor::one) {
        if (!mono.empty()) mono += "*";
        mono += f.trig == VarFactor::cos ? "cos(" : "sin(";
        if (f.k != 1) mono += std::to_string(f.k) + "*";
        mono += var + ")";
      }
    }
    Rational a = abs(c);
    std::string coeff = a.get_str();
    std::string term = mono.empty() ? coeff : (a == 1 ? mono : coeff + "*" + mono);
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr run() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression: " + what + " at position " + std::to_string(pos_) + " in '" +
                                std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr e = product();
    while (true) {
      if (eat('+'))
        e += product();
      else if (eat('-'))
        e -= product();
      else
        return e;
    }
  }

  Expr product() {
    Expr e = unary();
    while (true) {
      if (eat('*')) {
        e = e * unary();
      } else if (eat('/')) {
        Expr d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        e *= 1 / d.terms().begin()->second;
      } else {
        return e;
      }
    }
  }

  Expr power() {
    Expr base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      return exotic::pow(base, std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr primary() {
    skip();
    if (eat('(')) {
      Expr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Expr(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string word(s_.substr(start, pos_ - start));
      if (word == "sin" || word == "cos") {
        if (!eat('(')) fail("expected '('");
        Expr arg = sum();
        if (!eat(')')) fail("expected ')'");
        auto [var, k] = linear_argument(arg);
        return word == "sin" ? Expr::sin(var, k) : Expr::cos(var, k);
      }
      if (word == "x") return Expr::var(0);
      if (word == "y") return Expr::var(1);
      if (word == "z") return Expr::var(2);
      if (word.size() == 2 && word[0] == 'x' && word[1] >= '1' && word[1] <= '3') return Expr::var(word[1] - '1');
      fail("unknown identifier '" + word + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::pair<int, int> linear_argument(const Expr& arg) {
    if (arg.terms().size() != 1) fail("trigonometric argument must be k*xi");
    const auto& [m, c] = *arg.terms().begin();
    int var = -1;
    for (int i = 0; i < kMaxDim; ++i) {
      const VarFactor& f = m[static_cast<std::size_t>(i)];
      if (f == VarFactor{}) continue;
      if (var >= 0 || f.power != 1 || f.trig != VarFactor::one) fail("trigonometric argument must be k*xi");
      var = i;
    }
    if (var < 0 || c.get_den() != 1) fail("trigonometric argument must be k*xi with integer k");
    return {var, static_cast<int>(c.get_num().get_si())};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return ExprParser(text).run(); }

CompiledExpr::CompiledExpr(const Expr& e) {
  for (const auto& [m, c] : e.terms()) terms_.push_back({c.get_d(), m});
}

double CompiledExpr::operator()(const std::array<double, kMaxDim>& x) const {
  double s = 0;
  for (const Term& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < kMaxDim; ++i) v *= factor_value(t.mono[i], x[i]);
    s += v;
  }
  return s;
}

}  // namespace exotic
