#include "superlin/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace superlin {

ControlSignal ControlSignal::constant(double level, double horizon) {
  return ControlSignal{{0.0, horizon}, {level}};
}

double ControlSignal::at(double t) const {
  if (values.empty()) return 0.0;
  // interval i covers [breakpoints[i], breakpoints[i+1])
  size_t i = 0;
  while (i + 1 < values.size() && t >= breakpoints[i + 1]) ++i;
  return values[i];
}

ControlledField system_field(const ControlSystem& sys) {
  return [sys](const Eigen::VectorXd& x, double u) -> Eigen::VectorXd {
    return sys.f.eval(x) + u * sys.g.eval(x);
  };
}

ControlledField lifted_field(const Embedding& emb) {
  const Eigen::MatrixXd A = to_double(emb.A_ell);
  const Eigen::VectorXd B = to_double(emb.B_ell);
  const Eigen::VectorXd D = to_double(emb.D_ell);
  return [A, B, D](const Eigen::VectorXd& z, double u) -> Eigen::VectorXd {
    return A * z + u * B + D;
  };
}

ControlledField canonical_field(const CanonicalForm& cf) {
  const int n = static_cast<int>(cf.T.rows());
  const int k = cf.k;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  A.block(0, 0, k, k) = to_double(cf.A11);
  A.block(0, k, k, n - k) = to_double(cf.A12);
  A.block(k, k, n - k, n - k) = to_double(cf.A22);
  Eigen::VectorXd B = Eigen::VectorXd::Zero(n);
  B.head(k) = to_double(cf.Bp);
  Eigen::VectorXd G = Eigen::VectorXd::Zero(n);
  G.head(k) = to_double(cf.Gbar_p);
  const Eigen::VectorXd D = to_double(cf.Dp);
  const Polynomial q = cf.qp;
  return [A, B, G, D, q](const Eigen::VectorXd& x, double u) -> Eigen::VectorXd {
    return A * x + evaluate(q, x) * G + u * B + D;
  };
}

Trajectory integrate(const ControlledField& field, const Eigen::VectorXd& x0,
                     const ControlSignal& u, double horizon, double step) {
  if (step <= 0.0) throw DimensionMismatch("integration step must be positive");
  if (!u.values.empty()) {
    if (u.breakpoints.size() != u.values.size() + 1)
      throw DimensionMismatch("control signal needs one level per breakpoint interval");
    for (size_t i = 0; i + 1 < u.breakpoints.size(); ++i)
      if (!(u.breakpoints[i] < u.breakpoints[i + 1]))
        throw DimensionMismatch("control breakpoints must be strictly increasing");
  }
  const long n_steps = std::lround(horizon / step);

  // snap control edges to the grid so each step sees one constant level
  std::vector<long> edges;
  edges.reserve(u.breakpoints.size());
  for (double t : u.breakpoints) edges.push_back(std::lround(t / step));

  auto level_at = [&](long step_index) -> double {
    if (u.values.empty()) return 0.0;
    size_t i = 0;
    while (i + 1 < u.values.size() && step_index >= edges[i + 1]) ++i;
    return u.values[i];
  };

  Trajectory traj;
  traj.times.reserve(static_cast<size_t>(n_steps) + 1);
  traj.states.reserve(static_cast<size_t>(n_steps) + 1);
  Eigen::VectorXd x = x0;
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  for (long i = 0; i < n_steps; ++i) {
    const double ui = level_at(i);
    const Eigen::VectorXd k1 = field(x, ui);
    const Eigen::VectorXd k2 = field(x + 0.5 * step * k1, ui);
    const Eigen::VectorXd k3 = field(x + 0.5 * step * k2, ui);
    const Eigen::VectorXd k4 = field(x + step * k3, ui);
    x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(i + 1) * step;
    if (!x.allFinite()) throw DivergenceError("integration diverged", t);
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

namespace {

std::pair<Trajectory, Trajectory> run_pair(const ControlSystem& sys, const Embedding& emb,
                                           const Eigen::VectorXd& x0, const ControlSignal& u,
                                           double horizon, double step) {
  if (x0.size() != sys.n) throw DimensionMismatch("initial state has the wrong length");
  Eigen::VectorXd z0(emb.n + emb.m);
  z0.head(emb.n) = x0;
  z0.tail(emb.m) = emb.p.eval(x0);
  Trajectory base = integrate(system_field(sys), x0, u, horizon, step);
  Trajectory lifted = integrate(lifted_field(emb), z0, u, horizon, step);
  return {std::move(base), std::move(lifted)};
}

}  // namespace

double check_diagram(const ControlSystem& sys, const Embedding& emb,
                     const Eigen::VectorXd& x0, const ControlSignal& u,
                     double horizon, double step) {
  auto [base, lifted] = run_pair(sys, emb, x0, u, horizon, step);
  double worst = 0.0;
  for (size_t i = 0; i < base.states.size(); ++i) {
    const double err =
        (lifted.states[i].head(sys.n) - base.states[i]).lpNorm<Eigen::Infinity>();
    worst = std::max(worst, err);
  }
  return worst;
}

double check_gp_identity(const ControlSystem& sys, const Embedding& emb,
                         const Eigen::VectorXd& x0, const ControlSignal& u,
                         double horizon, double step) {
  auto [base, lifted] = run_pair(sys, emb, x0, u, horizon, step);
  const Eigen::MatrixXd G = to_double(RatMatrix(partition(emb).G));
  double worst = 0.0;
  for (size_t i = 0; i < base.states.size(); ++i) {
    const Eigen::VectorXd px = emb.p.eval(base.states[i]);
    const Eigen::VectorXd z2 = lifted.states[i].tail(emb.m);
    if (emb.m == 0) continue;
    const double err = (G * (px - z2)).lpNorm<Eigen::Infinity>();
    worst = std::max(worst, err);
  }
  return worst;
}

Rational check_derivative_identity(const ControlSystem& sys, const Embedding& emb,
                                   int k, const RatVector& x0) {
  if (k < 0) throw DimensionMismatch("derivative order must be non-negative");
  if (x0.size() != emb.n) throw DimensionMismatch("evaluation point has the wrong length");
  if (sys.n != emb.n) throw DimensionMismatch("system and embedding dimension differ");
  if (!is_single_visible_normalized(emb))
    throw NotSingleVisible("derivative identity needs the single-visible normalized form");

  const Blocks b = partition(emb);
  const Polynomial lhs = iterated_lie_scalar(b.A, emb.p[0], k);

  RatMatrix Mk = RatMatrix::Identity(emb.m, emb.m);
  for (int i = 0; i < k; ++i) Mk = Mk * b.M;
  const RatVector px = emb.p.eval(x0);
  Rational rhs(0);
  for (int j = 0; j < emb.m; ++j) rhs += Mk(0, j) * px(j);

  return evaluate(lhs, x0) - rhs;
}

void write_csv(std::ostream& os, const Trajectory& base, const Trajectory* lifted) {
  os << "t";
  for (Eigen::Index i = 0; i < (base.states.empty() ? 0 : base.states[0].size()); ++i)
    os << ",x_" << (i + 1);
  if (lifted)
    for (Eigen::Index i = 0; i < (lifted->states.empty() ? 0 : lifted->states[0].size()); ++i)
      os << ",z_" << (i + 1);
  os << "\n";

  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (size_t r = 0; r < base.times.size(); ++r) {
    put(base.times[r]);
    for (Eigen::Index i = 0; i < base.states[r].size(); ++i) {
      os << ",";
      put(base.states[r](i));
    }
    if (lifted)
      for (Eigen::Index i = 0; i < lifted->states[r].size(); ++i) {
        os << ",";
        put(lifted->states[r](i));
      }
    os << "\n";
  }
}

}  // namespace superlin
