#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "superlin/canonical.hpp"
#include "superlin/model.hpp"

namespace superlin {

// Piecewise-constant scalar control. breakpoints are the interval edges
// (strictly increasing, first one at the start of the horizon), values has
// one level per interval. Integration snaps the edges to the step grid.
struct ControlSignal {
  std::vector<double> breakpoints;
  std::vector<double> values;

  static ControlSignal constant(double level, double horizon);
  static ControlSignal zero(double horizon) { return constant(0.0, horizon); }

  double at(double t) const;
};

// Fixed-step samples of one integration run.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

using ControlledField =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x, double u)>;

ControlledField system_field(const ControlSystem& sys);
ControlledField lifted_field(const Embedding& emb);
ControlledField canonical_field(const CanonicalForm& cf);

// Classical fixed-step fourth-order Runge-Kutta. Deterministic: no
// adaptivity, control levels constant across each step. Throws
// DivergenceError when the state leaves the finite range.
Trajectory integrate(const ControlledField& field, const Eigen::VectorXd& x0,
                     const ControlSignal& u, double horizon, double step);

// Integrates the system from x0 and the lifted system from (x0, p(x0)) and
// returns max_t || z1(t) - x(t) ||_inf over the sample grid: a numerical
// certificate that the lifted flow projects onto the original one.
double check_diagram(const ControlSystem& sys, const Embedding& emb,
                     const Eigen::VectorXd& x0, const ControlSignal& u,
                     double horizon, double step);

// max_t || G p(x(t)) - G z2(t) ||_inf along the same pair of runs.
double check_gp_identity(const ControlSystem& sys, const Embedding& emb,
                         const Eigen::VectorXd& x0, const ControlSignal& u,
                         double horizon, double step);

// Exact check of the k-th derivative identity for the visible observable:
// (L_{Ax})^k q at x0 minus e1^T M^k p(x0), both evaluated in rational
// arithmetic. Zero for every verified balanced single-visible embedding.
// k is capped small; the identity is polynomial so one point per k is a
// meaningful certificate only together with the symbolic checks, which is
// how the callers use it.
Rational check_derivative_identity(const ControlSystem& sys, const Embedding& emb,
                                   int k, const RatVector& x0);

// CSV export: header t,x_1..x_n[,z_1..z_{n+m}], 17 significant digits.
void write_csv(std::ostream& os, const Trajectory& base, const Trajectory* lifted = nullptr);

}  // namespace superlin
