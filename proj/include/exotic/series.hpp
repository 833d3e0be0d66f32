#pragma once

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exotic/forest.hpp"
#include "exotic/rational.hpp"

namespace exotic {

inline constexpr int kNoTruncation = INT_MAX;

// Finite linear combination of forests with exact coefficients.
class Series {
 public:
  Series() = default;
  explicit Series(int truncation) : truncation_(truncation) {}
  Series(const Forest& f, const Rational& c, int truncation = kNoTruncation);

  void add(const Forest& f, const Rational& c);
  Rational coeff(const Forest& f) const;
  const std::map<Forest, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int truncation() const { return truncation_; }
  void set_truncation(int n);
  int max_order() const;

  Series of_order(int n) const;
  Series filtered(const std::function<bool(const Forest&)>& keep) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Rational& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Forest, Rational> terms_;
  int truncation_ = kNoTruncation;
};

// Concatenation product of series.
Series multiply(const Series& a, const Series& b);

// Linear functional a on forests. Characters store only their values on
// connected forests and extend multiplicatively.
class Functional {
 public:
  Functional() = default;
  Functional(int truncation, bool character) : truncation_(truncation), character_(character) {}

  Rational operator()(const Forest& f) const;
  void set(const Forest& f, const Rational& value);
  void add(const Forest& f, const Rational& value);
  const std::map<Forest, Rational>& stored() const { return values_; }
  int truncation() const { return truncation_; }
  bool character() const { return character_; }
  void set_truncation(int n) { truncation_ = n; }

  // Explicit (non-character) copy carrying values on the given forests.
  Functional materialize(const std::vector<Forest>& forests) const;

 private:
  std::map<Forest, Rational> values_;
  int truncation_ = kNoTruncation;
  bool character_ = false;
};

Functional delta_one();
Functional delta_bullet();
Functional operator+(const Functional& a, const Functional& b);
Functional operator-(const Functional& a, const Functional& b);
Functional operator*(const Rational& c, const Functional& a);

// delta_sigma(a) = sum a(pi)/sigma(pi) pi over the given forests.
Series delta_sigma(const Functional& a, const std::vector<Forest>& forests);
Series delta_sigma(const Functional& a);  // over stored forests (explicit) or enumeration
Functional delta_sigma_inv(const Series& s);

// Character determined by its values on connected forests.
Functional character_extend(const std::map<Forest, Rational>& generators, int truncation);
bool is_character(const Functional& a, const std::vector<Forest>& forests);

// a_s(pi) = a(pi) s^{|pi|}
Functional scale_step(const Functional& a, const Rational& s);

// Left factors of coproducts: either plain forests or clumped forests.
template <class L>
class Tensor {
 public:
  void add(const L& left, const Forest& right, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_pair(left, right);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  Rational coeff(const L& left, const Forest& right) const {
    auto it = terms_.find(std::make_pair(left, right));
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const std::map<std::pair<L, Forest>, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.terms_ == b.terms_; }

 private:
  std::map<std::pair<L, Forest>, Rational> terms_;
};

using ForestTensor = Tensor<Forest>;

}  // namespace exotic
