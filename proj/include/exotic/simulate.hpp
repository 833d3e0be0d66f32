#pragma once

#include <cstdint>

#include "exotic/elementary.hpp"
#include "exotic/stochastic.hpp"

namespace exotic {

struct SimulationConfig {
  double h = 0.1;
  std::int64_t steps = 1000000;  // per trajectory, after burn-in
  std::int64_t burn_in = 1000;
  int trajectories = 8;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: EXOTIC_THREADS or hardware concurrency
  double x0 = 0;
};

struct SimulationReport {
  double mean = 0;
  double std_error = 0;  // over trajectory averages
  std::int64_t total_steps = 0;
};

// Ergodic average of phi along the SRK method applied to dX = f dt + dW on
// the one-dimensional torus. Each trajectory draws its noise from a stream
// keyed by (seed, trajectory index), so the result does not depend on the
// thread count.
SimulationReport simulate(const SRKTableau& t, const VectorField& f, const Expr& phi, const SimulationConfig& cfg);

// f_h = sum_{|tau| <= order} h^{|tau|-1} b(tau)/sigma(tau) F(tau), f = -V'.
VectorField modified_vector_field(const Functional& b, const Expr& potential, double h, int order);

int thread_count(int requested = 0);

}  // namespace exotic
