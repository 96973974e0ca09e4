#include "bmwkz/monodromy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bmwkz {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

}  // namespace

MatrixXcd integrate_linear(const std::function<MatrixXcd(double)>& a,
                           MatrixXcd y, const OdeOptions& opt) {
  // Dormand-Prince 5(4) coefficients.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600,
                      e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640,
                      e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double t = 0.0;
  double h = std::min(opt.initial_step, 1.0);
  long steps = 0;
  while (t < 1.0) {
    if (++steps > opt.max_steps)
      throw std::runtime_error("ODE integration exceeded the step budget");
    h = std::min(h, 1.0 - t);
    MatrixXcd k1 = a(t) * y;
    MatrixXcd k2 = a(t + c2 * h) * (y + h * (a21 * k1));
    MatrixXcd k3 = a(t + c3 * h) * (y + h * (a31 * k1 + a32 * k2));
    MatrixXcd k4 = a(t + c4 * h) * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    MatrixXcd k5 =
        a(t + c5 * h) * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    MatrixXcd k6 = a(t + h) * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                        a64 * k4 + a65 * k5));
    MatrixXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    MatrixXcd k7 = a(t + h) * y5;
    MatrixXcd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 +
                         e7 * k7);
    double scale = opt.tol * (1.0 + y.norm());
    double ratio = err.norm() / scale;
    if (ratio <= 1.0) {
      t += h;
      y = std::move(y5);
    }
    double factor = (ratio > 0.0) ? 0.9 * std::pow(ratio, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    if (h < opt.min_step)
      throw std::runtime_error("ODE step size underflow (singular path?)");
  }
  return y;
}

PathPiece straight_piece(const Eigen::Vector2cd& from,
                         const Eigen::Vector2cd& to) {
  Eigen::Vector2cd d = to - from;
  return {[from, d](double t) -> Eigen::Vector2cd { return from + t * d; },
          [d](double) -> Eigen::Vector2cd { return d; }};
}

PathPiece half_turn_piece(const Eigen::Vector2cd& center,
                          const Eigen::Vector2cd& offset) {
  return {[center, offset](double t) -> Eigen::Vector2cd {
            return center + std::exp(kI * (kPi * t)) * offset;
          },
          [offset](double t) -> Eigen::Vector2cd {
            return (kI * kPi) * std::exp(kI * (kPi * t)) * offset;
          }};
}

MatrixXcd transport(const Dihedral& d, const ParameterSet& p,
                    const std::vector<PathPiece>& pieces,
                    const OdeOptions& opt) {
  std::vector<MatrixXcd> x;
  for (int i = 0; i < d.m; ++i) x.push_back(connection_term(d, p, i));
  MatrixXcd y = MatrixXcd::Identity(d.m, d.m);
  for (const auto& piece : pieces) {
    auto a = [&](double t) {
      Eigen::Vector2cd z = piece.gamma(t);
      Eigen::Vector2cd v = piece.velocity(t);
      MatrixXcd sum = MatrixXcd::Zero(d.m, d.m);
      for (int i = 0; i < d.m; ++i) sum += (d.form(i, v) / d.form(i, z)) * x[i];
      return sum;
    };
    y = integrate_linear(a, std::move(y), opt);
  }
  return y;
}

std::vector<PathPiece> generator_path(const Dihedral& d, int i,
                                      double approach) {
  const double theta = kPi / (2.0 * d.m);
  Eigen::Vector2d base(std::cos(theta), std::sin(theta));
  Eigen::Vector2d image = d.reflection_matrix(i) * base;
  Eigen::Vector2cd b = base.cast<cplx>(), s = image.cast<cplx>();
  Eigen::Vector2cd mid = 0.5 * (b + s);
  Eigen::Vector2cd delta = approach * (b - mid);
  return {straight_piece(b, mid + delta), half_turn_piece(mid, delta),
          straight_piece(mid - delta, s)};
}

double spectrum_residual(const MatrixXcd& t, const Dihedral& d,
                         const ParameterSet& p, int i, double tol) {
  const DerivedScalars s = p.derived(d.class_of(i));
  int fixed = 0;
  for (int j = 0; j < d.m; ++j)
    if (d.reflect_index(i, j) == j) ++fixed;
  const int n_plus = fixed + (d.m - fixed) / 2;
  const int n_minus = d.m - n_plus;

  auto match = [&](const std::vector<std::pair<cplx, int>>& targets) {
    std::vector<int> remaining;
    std::vector<cplx> vals;
    for (const auto& [v, mult] : targets) {
      vals.push_back(v);
      remaining.push_back(mult);
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(t, false);
    double worst = 0.0;
    for (int a = 0; a < d.m; ++a) {
      cplx ev = es.eigenvalues()(a);
      int best = -1;
      double bestd = 1e300;
      for (size_t b = 0; b < vals.size(); ++b) {
        if (remaining[b] == 0) continue;
        double dist = std::abs(ev - vals[b]);
        if (dist < bestd) {
          bestd = dist;
          best = (int)b;
        }
      }
      if (best < 0) return 1e300;
      --remaining[best];
      worst = std::max(worst, bestd);
    }
    return worst;
  };

  double res = match({{1.0 / s.l, 1}, {s.q, n_plus - 1}, {-1.0 / s.q, n_minus}});
  if (res > tol) {
    double rev =
        match({{s.l, 1}, {1.0 / s.q, n_plus - 1}, {-s.q, n_minus}});
    std::ostringstream msg;
    if (rev <= tol)
      msg << "braid image spectrum matches the inverse values (loop "
             "orientation reversed), residual "
          << res;
    else
      msg << "braid image spectrum does not match expected values, residual "
          << res;
    throw std::runtime_error(msg.str());
  }
  return res;
}

BraidMonodromy braid_monodromy(const Dihedral& d, const ParameterSet& p,
                               const MonodromyOptions& opt) {
  BraidMonodromy out;
  for (int i : {0, 1}) {
    MatrixXcd pt = transport(d, p, generator_path(d, i, opt.approach), opt.ode);
    MatrixXcd t = line_permutation(d, i) * pt;
    double res = spectrum_residual(t, d, p, i, opt.spectrum_tol);
    out.spectrum_residual = std::max(out.spectrum_residual, res);
    (i == 0 ? out.t0 : out.t1) = std::move(t);
  }
  return out;
}

ProjectorFactors extract_projector(const MatrixXcd& t,
                                   const DerivedScalars& s) {
  const int n = (int)t.rows();
  MatrixXcd id = MatrixXcd::Identity(n, n);
  MatrixXcd raw = (s.l / (1.0 / s.q - s.q)) * (t - s.q * id) *
                  (t + (1.0 / s.q) * id);
  Eigen::JacobiSVD<MatrixXcd> svd(raw,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
  ProjectorFactors f;
  f.rank_ratio = svd.singularValues()(1) / svd.singularValues()(0);
  f.u = svd.singularValues()(0) * svd.matrixU().col(0);
  f.w = svd.matrixV().col(0).adjoint();
  cplx trace = (f.w * f.u)(0, 0);
  f.trace_deviation = std::abs(trace - s.tau);
  f.w *= s.tau / trace;
  f.e = f.u * f.w;
  return f;
}

cplx abelian_circle_monodromy(cplx kappa_c, cplx center, double radius,
                              const OdeOptions& opt) {
  auto a = [&](double t) {
    cplx z = center + radius * std::exp(cplx(0.0, 2.0 * kPi * t));
    cplx v = radius * cplx(0.0, 2.0 * kPi) * std::exp(cplx(0.0, 2.0 * kPi * t));
    MatrixXcd m(1, 1);
    m(0, 0) = kappa_c * v / z;
    return m;
  };
  MatrixXcd y = MatrixXcd::Identity(1, 1);
  return integrate_linear(a, std::move(y), opt)(0, 0);
}

double degeneration_delta(const Dihedral& d, const ParameterSet& p,
                          cplx kappa_prime, const MonodromyOptions& opt) {
  ParameterSet q = p;
  q.kappa = kappa_prime;
  BraidMonodromy bm = braid_monodromy(d, q, opt);
  MatrixXcd id = MatrixXcd::Identity(d.m, d.m);
  double worst = 0.0;
  for (int i : {0, 1}) {
    const MatrixXcd& t = (i == 0) ? bm.t0 : bm.t1;
    MatrixXcd lhs = (t * t - id) / (2.0 * kPi * kI * kappa_prime);
    worst = std::max(worst, (lhs - connection_direction(d, q, i)).norm());
  }
  return worst;
}

}  // namespace bmwkz
