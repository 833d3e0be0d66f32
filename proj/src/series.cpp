#include "exotic/series.hpp"

#include <algorithm>

#include "exotic/enumerate.hpp"

namespace exotic {

Series::Series(const Forest& f, const Rational& c, int truncation) : truncation_(truncation) {
  add(f, c);
}

void Series::add(const Forest& f, const Rational& c) {
  if (c == 0 || f.order() > truncation_) return;
  auto it = terms_.find(f);
  if (it == terms_.end()) {
    terms_.emplace(f, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Series::coeff(const Forest& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Series::set_truncation(int n) {
  truncation_ = n;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.order() > n)
      it = terms_.erase(it);
    else
      ++it;
  }
}

int Series::max_order() const {
  int m = -1;
  for (const auto& [f, c] : terms_) m = std::max(m, f.order());
  return m;
}

Series Series::of_order(int n) const {
  return filtered([n](const Forest& f) { return f.order() == n; });
}

Series Series::filtered(const std::function<bool(const Forest&)>& keep) const {
  Series out(truncation_);
  for (const auto& [f, c] : terms_)
    if (keep(f)) out.terms_.emplace(f, c);
  return out;
}

Series& Series::operator+=(const Series& o) {
  truncation_ = std::min(truncation_, o.truncation_);
  set_truncation(truncation_);
  for (const auto& [f, c] : o.terms_) add(f, c);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  truncation_ = std::min(truncation_, o.truncation_);
  set_truncation(truncation_);
  for (const auto& [f, c] : o.terms_) add(f, -c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [f, v] : terms_) v *= c;
  return *this;
}

Series multiply(const Series& a, const Series& b) {
  Series out(std::min(a.truncation(), b.truncation()));
  for (const auto& [fa, ca] : a.terms())
    for (const auto& [fb, cb] : b.terms()) {
      if (fa.order() + fb.order() > out.truncation()) continue;
      out.add(concat(fa, fb), ca * cb);
    }
  return out;
}

Rational Functional::operator()(const Forest& f) const {
  if (f.order() > truncation_) return 0;
  if (!character_) {
    auto it = values_.find(f);
    return it == values_.end() ? Rational(0) : it->second;
  }
  if (f.empty()) return 1;
  Rational r = 1;
  for (const Forest& g : factors(f)) {
    auto it = values_.find(g);
    if (it == values_.end()) return 0;
    r *= it->second;
  }
  return r;
}

void Functional::set(const Forest& f, const Rational& value) {
  if (character_ && !f.empty() && !is_connected(f))
    throw ForestError("character values are stored on connected forests only: " + f.key());
  if (value == 0)
    values_.erase(f);
  else
    values_[f] = value;
}

void Functional::add(const Forest& f, const Rational& value) {
  Rational cur = 0;
  if (auto it = values_.find(f); it != values_.end()) cur = it->second;
  set(f, cur + value);
}

Functional Functional::materialize(const std::vector<Forest>& forests) const {
  Functional out(truncation_, false);
  for (const Forest& f : forests) {
    Rational v = (*this)(f);
    if (v != 0) out.values_[f] = v;
  }
  return out;
}

Functional delta_one() {
  Functional a(kNoTruncation, false);
  a.set(Forest(), 1);
  return a;
}

Functional delta_bullet() {
  Functional a(kNoTruncation, false);
  a.set(parse("b"), 1);
  return a;
}

namespace {

std::vector<Forest> support_forests(const Functional& a, const Functional& b) {
  std::vector<Forest> fs;
  int trunc = std::min(a.truncation(), b.truncation());
  if (a.character() || b.character()) {
    if (trunc == kNoTruncation) throw ForestError("character arithmetic needs a truncation order");
    fs = enumerate(trunc);
  } else {
    for (const auto& [f, c] : a.stored()) fs.push_back(f);
    for (const auto& [f, c] : b.stored()) fs.push_back(f);
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  }
  return fs;
}

}  // namespace

Functional operator+(const Functional& a, const Functional& b) {
  Functional out(std::min(a.truncation(), b.truncation()), false);
  for (const Forest& f : support_forests(a, b))
    if (f.order() <= out.truncation()) out.set(f, a(f) + b(f));
  return out;
}

Functional operator-(const Functional& a, const Functional& b) {
  Functional out(std::min(a.truncation(), b.truncation()), false);
  for (const Forest& f : support_forests(a, b))
    if (f.order() <= out.truncation()) out.set(f, a(f) - b(f));
  return out;
}

Functional operator*(const Rational& c, const Functional& a) {
  Functional out(a.truncation(), false);
  for (const Forest& f : support_forests(a, a)) out.set(f, c * a(f));
  return out;
}

Series delta_sigma(const Functional& a, const std::vector<Forest>& forests) {
  Series s(a.truncation());
  for (const Forest& f : forests) {
    Rational v = a(f);
    if (v != 0) s.add(f, v / Rational(static_cast<unsigned long>(symmetry_sigma(f))));
  }
  return s;
}

Series delta_sigma(const Functional& a) { return delta_sigma(a, support_forests(a, a)); }

Functional delta_sigma_inv(const Series& s) {
  Functional a(s.truncation(), false);
  for (const auto& [f, c] : s.terms())
    a.set(f, c * Rational(static_cast<unsigned long>(symmetry_sigma(f))));
  return a;
}

Functional character_extend(const std::map<Forest, Rational>& generators, int truncation) {
  Functional a(truncation, true);
  for (const auto& [f, v] : generators) a.set(f, v);
  return a;
}

bool is_character(const Functional& a, const std::vector<Forest>& forests) {
  if (a(Forest()) != 1) return false;
  for (const Forest& f : forests) {
    if (f.empty()) continue;
    Rational prod = 1;
    for (const Forest& g : factors(f)) prod *= a(g);
    if (prod != a(f)) return false;
  }
  return true;
}

Functional scale_step(const Functional& a, const Rational& s) {
  Functional out(a.truncation(), a.character());
  for (const auto& [f, v] : a.stored()) out.set(f, v * rational_pow(s, f.order()));
  return out;
}

}  // namespace exotic
