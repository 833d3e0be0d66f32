#include "exotic/elementary.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <stdexcept>

namespace exotic {

VectorField VectorField::gradient(const Expr& v, int dim) {
  VectorField f;
  for (int i = 0; i < dim; ++i) f.comps.push_back(-partial(v, i));
  f.potential = v;
  return f;
}

bool VectorField::is_gradient() const {
  if (!potential) return false;
  for (int i = 0; i < dim(); ++i)
    if (comps[static_cast<std::size_t>(i)] != -partial(*potential, i)) return false;
  return true;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector fields of different dimension");
  VectorField out;
  for (int i = 0; i < a.dim(); ++i)
    out.comps.push_back(a.comps[static_cast<std::size_t>(i)] + b.comps[static_cast<std::size_t>(i)]);
  return out;
}

VectorField operator*(const Rational& c, const VectorField& a) {
  VectorField out = a;
  out.potential.reset();
  for (auto& e : out.comps) e *= c;
  return out;
}

namespace {

std::size_t U(int i) { return static_cast<std::size_t>(i); }

struct IndexClasses {
  std::vector<int> cls;  // vertex -> class
  int count = 0;
};

IndexClasses index_classes(const Forest& pi) {
  const ForestData& d = pi.data();
  const int n = pi.size();
  std::vector<int> uf(U(n));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[U(x)] != x) x = uf[U(x)] = uf[U(uf[U(x)])];
    return x;
  };
  for (int v = 0; v < n; ++v) {
    if (pi.vertex(v).deco == Deco::letter) throw std::invalid_argument("elementary differentials need exotic forests");
    int q = d.partner[U(v)] >= 0 ? d.partner[U(v)] : d.mate[U(v)];
    if (q >= 0) uf[U(find(v))] = find(q);
  }
  IndexClasses out;
  out.cls.assign(U(n), -1);
  std::map<int, int> number;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    auto [it, inserted] = number.emplace(r, out.count);
    if (inserted) ++out.count;
    out.cls[U(v)] = it->second;
  }
  return out;
}

class DerivativeCache {
 public:
  const Expr& get(const Expr& base, const void* owner, int comp, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    auto key = std::make_tuple(owner, comp, idx);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, partial(base, idx)).first->second;
  }

 private:
  std::map<std::tuple<const void*, int, std::vector<int>>, Expr> cache_;
};

// Sum over index assignments; free_root >= 0 leaves that vertex's class as
// the output component instead of differentiating phi.
std::vector<Expr> contract(const Forest& pi, const std::vector<const VectorField*>& fields, const Expr* phi,
                           int dim, int free_root) {
  const int n = pi.size();
  const ForestData& d = pi.data();
  IndexClasses ic = index_classes(pi);
  std::vector<int> phi_slots;
  for (int v = 0; v < n; ++v)
    if (pi.vertex(v).parent < 0 && d.mate[U(v)] < 0 && v != free_root) phi_slots.push_back(v);

  std::vector<Expr> out(free_root >= 0 ? U(dim) : 1);
  std::vector<int> assign(U(ic.count), 0);
  DerivativeCache cache;
  while (true) {
    Expr term(1);
    for (int v = 0; v < n && !term.is_zero(); ++v) {
      if (!pi.is_black(v)) continue;
      std::vector<int> idx;
      for (int c : d.preds[U(v)]) idx.push_back(assign[U(ic.cls[U(c)])]);
      int comp = assign[U(ic.cls[U(v)])];
      const VectorField* f = fields[U(v)];
      term = term * cache.get(f->comps[U(comp)], f, comp, idx);
    }
    if (!term.is_zero() && phi) {
      std::vector<int> idx;
      for (int v : phi_slots) idx.push_back(assign[U(ic.cls[U(v)])]);
      term = term * cache.get(*phi, phi, -1, idx);
    }
    std::size_t slot = free_root >= 0 ? U(assign[U(ic.cls[U(free_root)])]) : 0;
    out[slot] += term;

    std::size_t k = 0;
    while (k < assign.size() && ++assign[k] == dim) assign[k++] = 0;
    if (k == assign.size()) break;
  }
  return out;
}

std::vector<const VectorField*> uniform(const Forest& pi, const VectorField& f) {
  return std::vector<const VectorField*>(U(pi.size()), &f);
}

std::vector<const VectorField*> pointers(const Forest& pi, const std::vector<VectorField>& fields) {
  if (static_cast<int>(fields.size()) < pi.size()) throw std::invalid_argument("one field per vertex expected");
  std::vector<const VectorField*> out;
  for (const auto& f : fields) out.push_back(&f);
  return out;
}

int field_dim(const std::vector<const VectorField*>& fields, const Forest& pi) {
  int dim = -1;
  for (int v = 0; v < pi.size(); ++v) {
    if (!pi.is_black(v)) continue;
    int d = fields[U(v)]->dim();
    if (dim >= 0 && d != dim) throw std::invalid_argument("fields of different dimension");
    dim = d;
  }
  return dim;
}

}  // namespace

Expr elementary(const Forest& pi, const VectorField& f, const Expr& phi) {
  return contract(pi, uniform(pi, f), &phi, f.dim(), -1).front();
}

Expr elementary(const Forest& pi, const std::vector<VectorField>& fields, const Expr& phi) {
  auto ptrs = pointers(pi, fields);
  int dim = field_dim(ptrs, pi);
  if (dim < 0) dim = std::max(1, phi.dimension());
  return contract(pi, ptrs, &phi, dim, -1).front();
}

VectorField elementary_field(const Forest& tau, const VectorField& f) {
  if (!tau.single_root()) throw std::invalid_argument("vector fields come from single-root forests");
  VectorField out;
  out.comps = contract(tau, uniform(tau, f), nullptr, f.dim(), tau.data().roots.front());
  return out;
}

VectorField elementary_field(const Forest& tau, const std::vector<VectorField>& fields) {
  if (!tau.single_root()) throw std::invalid_argument("vector fields come from single-root forests");
  auto ptrs = pointers(tau, fields);
  VectorField out;
  out.comps = contract(tau, ptrs, nullptr, field_dim(ptrs, tau), tau.data().roots.front());
  return out;
}

std::string index_notation(const Forest& pi) {
  static const char* names[] = {"i", "j", "k", "l", "m", "n", "p", "q", "r", "s", "t", "u"};
  const ForestData& d = pi.data();
  const IndexClasses ic = index_classes(pi);
  auto name = [&](int v) {
    int c = ic.cls[U(v)];
    return c < 12 ? std::string(names[c]) : "i" + std::to_string(c - 11);
  };
  auto lower = [&](const std::vector<int>& vs) {
    std::string s;
    for (int v : vs) s += name(v);
    return vs.empty() ? s : "_{" + s + "}";
  };
  std::string body;
  std::vector<char> used(U(ic.count), 0);
  std::vector<int> phi_slots;
  for (int v = 0; v < pi.size(); ++v) {
    if (pi.vertex(v).parent < 0 && d.mate[U(v)] < 0) phi_slots.push_back(v);
    if (pi.is_liana(v)) {
      used[U(ic.cls[U(v)])] = 1;
      continue;
    }
    used[U(ic.cls[U(v)])] = 1;
    body += " f^" + name(v) + lower(d.preds[U(v)]);
  }
  body += " phi" + lower(phi_slots);
  std::string sum;
  for (int c = 0; c < ic.count; ++c)
    if (used[U(c)]) sum += (sum.empty() ? "" : ",") + std::string(c < 12 ? names[c] : "i" + std::to_string(c - 11));
  return sum.empty() ? body.substr(1) : "sum_{" + sum + "}" + body;
}

Expr eval_series(const Series& s, const VectorField& f, const Expr& phi) {
  Expr out;
  for (const auto& [pi, c] : s.terms()) {
    Expr e = elementary(pi, f, phi);
    e *= c;
    out += e;
  }
  return out;
}

}  // namespace exotic
