#include "exotic/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exotic/elementary.hpp"

namespace exotic {

QuadratureGrid::QuadratureGrid(const Expr& potential, int dim, int points) : dim_(dim), points_(points) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("quadrature supports d = 1 or 2");
  if (points < 2 || (points & (points - 1)) != 0) throw std::invalid_argument("grid size must be a power of two");
  if (potential.dimension() > dim) throw std::invalid_argument("potential uses more variables than d");
  const CompiledExpr v(potential);
  const double step = 2 * std::numbers::pi / points;
  const int total = dim == 1 ? points : points * points;
  long double sum = 0;
  for (int k = 0; k < total; ++k) {
    std::array<double, kMaxDim> x{};
    x[0] = step * (k % points);
    if (dim == 2) x[1] = step * (k / points);
    double w = std::exp(-2 * v(x));
    nodes_.push_back(x);
    weights_.push_back(w);
    sum += w;
  }
  for (double& w : weights_) w = static_cast<double>(w / sum);
}

double QuadratureGrid::integrate(const Expr& g) const {
  const CompiledExpr c(g);
  long double acc = 0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) acc += static_cast<long double>(weights_[k]) * c(nodes_[k]);
  return static_cast<double>(acc);
}

QuadratureResult quadrature_invariant_integral(const Series& s, const Expr& phi, const QuadratureGrid& grid,
                                               const Expr& potential) {
  const VectorField f = VectorField::gradient(potential, grid.dim());
  QuadratureResult out;
  long double acc = 0;
  for (const auto& [pi, c] : s.terms()) {
    double term = grid.integrate(elementary(pi, f, phi)) * c.get_d();
    acc += term;
    out.scale += std::abs(term);
  }
  out.value = static_cast<double>(acc);
  return out;
}

QuadratureResult quadrature_invariant_integral(const Series& s, const Expr& potential, const Expr& phi, int dim,
                                               int points) {
  return quadrature_invariant_integral(s, phi, QuadratureGrid(potential, dim, points), potential);
}

}  // namespace exotic
