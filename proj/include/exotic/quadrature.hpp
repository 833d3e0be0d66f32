#pragma once

#include <vector>

#include "exotic/expr.hpp"
#include "exotic/series.hpp"

namespace exotic {

// Tensor trapezoid rule on the torus [0, 2pi)^d, d <= 2, against the
// normalized weight exp(-2V).
struct QuadratureGrid {
  QuadratureGrid(const Expr& potential, int dim, int points);

  // int g rho_inf dx
  double integrate(const Expr& g) const;
  int dim() const { return dim_; }
  int points() const { return points_; }

 private:
  int dim_;
  int points_;
  std::vector<std::array<double, kMaxDim>> nodes_;
  std::vector<double> weights_;  // normalized
};

struct QuadratureResult {
  double value = 0;
  // Sum of the absolute values of the individual term integrals; the
  // reference magnitude for relative comparisons.
  double scale = 0;
  double relative() const { return scale > 0 ? value / scale : value; }
};

// int F(S)[phi] rho_inf dx with f = -grad V, S carrying F-weighted coefficients.
QuadratureResult quadrature_invariant_integral(const Series& s, const Expr& potential, const Expr& phi,
                                               int dim, int points);
QuadratureResult quadrature_invariant_integral(const Series& s, const Expr& phi, const QuadratureGrid& grid,
                                               const Expr& potential);

}  // namespace exotic
