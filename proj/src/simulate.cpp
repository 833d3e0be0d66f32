#include "exotic/simulate.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "exotic/enumerate.hpp"

namespace exotic {

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EXOTIC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

VectorField modified_vector_field(const Functional& b, const Expr& potential, double h, int order) {
  const VectorField f = VectorField::gradient(potential, 1);
  VectorField out;
  out.comps.assign(1, Expr());
  // Rational step so that the field stays exact.
  const Rational hq(h);
  for (const Forest& tau : enumerate(order, Filter::et)) {
    Rational c = b(tau);
    if (c == 0) continue;
    for (int k = 1; k < tau.order(); ++k) c *= hq;
    c /= Rational(symmetry_sigma(tau));
    VectorField term = elementary_field(tau, f);
    out = out + c * term;
  }
  return out;
}

namespace {

struct Stepper {
  const SRKTableau& t;
  CompiledExpr f;
  std::vector<double> a, b, d;
  double d0;
  bool explicit_method;

  Stepper(const SRKTableau& tab, const VectorField& field)
      : t(tab), f(field.comps.at(0)), d0(tab.d0.get_d()), explicit_method(tab.explicit_method()) {
    for (const auto& row : tab.A)
      for (const auto& x : row) a.push_back(x.get_d());
    for (const auto& x : tab.b) b.push_back(x.get_d());
    for (const auto& x : tab.d) d.push_back(x.get_d());
  }

  double eval(double x) const { return f({x, 0, 0}); }

  double step(double x, double h, double xi, std::vector<double>& fy) const {
    const int s = t.s;
    const double sq = std::sqrt(h);
    if (explicit_method) {
      for (int i = 0; i < s; ++i) {
        double y = x + sq * d[static_cast<std::size_t>(i)] * xi;
        for (int j = 0; j < i; ++j) y += h * a[static_cast<std::size_t>(i * s + j)] * fy[static_cast<std::size_t>(j)];
        fy[static_cast<std::size_t>(i)] = eval(y);
      }
    } else {
      for (int i = 0; i < s; ++i) fy[static_cast<std::size_t>(i)] = eval(x);
      for (int it = 0; it < 100; ++it) {
        double change = 0;
        for (int i = 0; i < s; ++i) {
          double y = x + sq * d[static_cast<std::size_t>(i)] * xi;
          for (int j = 0; j < s; ++j) y += h * a[static_cast<std::size_t>(i * s + j)] * fy[static_cast<std::size_t>(j)];
          double v = eval(y);
          change = std::max(change, std::abs(v - fy[static_cast<std::size_t>(i)]));
          fy[static_cast<std::size_t>(i)] = v;
        }
        if (change < 1e-14) break;
      }
    }
    double next = x + sq * d0 * xi;
    for (int i = 0; i < s; ++i) next += h * b[static_cast<std::size_t>(i)] * fy[static_cast<std::size_t>(i)];
    return std::remainder(next, 2 * std::numbers::pi);
  }
};

}  // namespace

SimulationReport simulate(const SRKTableau& t, const VectorField& f, const Expr& phi, const SimulationConfig& cfg) {
  t.validate();
  if (f.dim() != 1) throw std::invalid_argument("simulation runs on the one-dimensional torus");
  if (cfg.h <= 0 || cfg.steps <= 0 || cfg.trajectories <= 0) throw std::invalid_argument("invalid simulation parameters");
  const Stepper stepper(t, f);
  const CompiledExpr obs(phi);
  std::vector<double> averages(static_cast<std::size_t>(cfg.trajectories), 0);

  auto run = [&](int traj) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(traj)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::vector<double> fy(static_cast<std::size_t>(t.s));
    double x = cfg.x0;
    for (std::int64_t n = 0; n < cfg.burn_in; ++n) x = stepper.step(x, cfg.h, normal(rng), fy);
    long double acc = 0;
    for (std::int64_t n = 0; n < cfg.steps; ++n) {
      x = stepper.step(x, cfg.h, normal(rng), fy);
      acc += obs({x, 0, 0});
    }
    averages[static_cast<std::size_t>(traj)] = static_cast<double>(acc / cfg.steps);
  };

  const int workers = std::min(thread_count(cfg.threads), cfg.trajectories);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int traj = w; traj < cfg.trajectories; traj += workers) run(traj);
    });
  for (auto& th : pool) th.join();

  SimulationReport rep;
  for (double v : averages) rep.mean += v;
  rep.mean /= cfg.trajectories;
  if (cfg.trajectories > 1) {
    double var = 0;
    for (double v : averages) var += (v - rep.mean) * (v - rep.mean);
    var /= cfg.trajectories - 1;
    rep.std_error = std::sqrt(var / cfg.trajectories);
  }
  rep.total_steps = cfg.steps * cfg.trajectories;
  return rep;
}

}  // namespace exotic
