#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exotic/expr.hpp"
#include "exotic/forest.hpp"
#include "exotic/series.hpp"

namespace exotic {

struct VectorField {
  std::vector<Expr> comps;
  std::optional<Expr> potential;  // set when comps = -grad V

  int dim() const { return static_cast<int>(comps.size()); }
  static VectorField gradient(const Expr& v, int dim);
  bool is_gradient() const;
};

// F(pi)[phi]: every black vertex carries the same field f.
Expr elementary(const Forest& pi, const VectorField& f, const Expr& phi);
// Per-vertex fields, indexed by vertex id of pi (only black vertices read).
Expr elementary(const Forest& pi, const std::vector<VectorField>& fields, const Expr& phi);
// Single-root forest read as a vector field: the root index is free.
VectorField elementary_field(const Forest& tau, const VectorField& f);
VectorField elementary_field(const Forest& tau, const std::vector<VectorField>& fields);

// F(pi)[phi] in index notation, e.g. "sum_{i,j} f^i_{j} f^j phi_{i}" for b[b].
std::string index_notation(const Forest& pi);

// sum_pi c_pi F(pi)[phi]
Expr eval_series(const Series& s, const VectorField& f, const Expr& phi);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const Rational& c, const VectorField& a);

}  // namespace exotic
