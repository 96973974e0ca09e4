// Monodromy of the flat connection sum_i X_i dlog f_i on the complement of
// the complexified line arrangement.
//
// Braid generator sigma_i (i = 0, 1) is realized as the path from the base
// point b = (cos(pi/2m), sin(pi/2m)) to s_i(b): straight to just before the
// crossing of H_i, a positive half-turn around the crossing (the form f_i
// acquires the factor e^{i pi t}), then straight on to s_i(b).  The braid
// image is T(sigma_i) = iota(s_i) * P(path).
//
// Eigenvalues of T(sigma_i) for parameter class c = class(i):
//   1/l_c  once,  q_c  with multiplicity (n_+ - 1),  -1/q_c  with n_-,
// where n_+/n_- count the +1/-1 eigenvalues of iota(s_i).  A reversed loop
// orientation swaps each eigenvalue for its inverse, which the spectrum
// check detects and reports as a hard error.
#pragma once

#include <functional>
#include <vector>

#include "bmwkz/lkrep.hpp"

namespace bmwkz {

struct OdeOptions {
  double tol = 1e-12;         // local error tolerance (mixed abs/rel)
  double initial_step = 1e-2;
  double min_step = 1e-12;
  long max_steps = 1000000;
};

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) for Y' = A(t) Y on
// [0, 1] with Y(0) = y.  Throws on step underflow or step-count overflow.
MatrixXcd integrate_linear(const std::function<MatrixXcd(double)>& a,
                           MatrixXcd y, const OdeOptions& opt = {});

// A path piece t in [0,1] with explicit velocity.
struct PathPiece {
  std::function<Eigen::Vector2cd(double)> gamma;
  std::function<Eigen::Vector2cd(double)> velocity;
};

PathPiece straight_piece(const Eigen::Vector2cd& from,
                         const Eigen::Vector2cd& to);
// center + e^{i pi t} * offset: a positive half-turn from center + offset
// to center - offset.
PathPiece half_turn_piece(const Eigen::Vector2cd& center,
                          const Eigen::Vector2cd& offset);

// Parallel transport along the concatenation of pieces (applied in order).
MatrixXcd transport(const Dihedral& d, const ParameterSet& p,
                    const std::vector<PathPiece>& pieces,
                    const OdeOptions& opt = {});

struct MonodromyOptions {
  OdeOptions ode;
  // Arc radius as a fraction of the distance from the base point to the
  // crossing point on H_i.
  double approach = 1e-2;
  // Eigenvalue matching tolerance for the spectrum check.
  double spectrum_tol = 1e-6;
};

// The three-piece loop realizing sigma_i from the standard base point.
std::vector<PathPiece> generator_path(const Dihedral& d, int i,
                                      double approach);

struct BraidMonodromy {
  MatrixXcd t0, t1;
  double spectrum_residual = 0.0;  // worst eigenvalue mismatch over both
};

// Computes T(sigma_0), T(sigma_1) and validates their spectra (throws on
// mismatch, with a dedicated message when the inverse spectrum matches).
BraidMonodromy braid_monodromy(const Dihedral& d, const ParameterSet& p,
                               const MonodromyOptions& opt = {});

// Worst distance between the eigenvalues of t and the expected multiset.
double spectrum_residual(const MatrixXcd& t, const Dihedral& d,
                         const ParameterSet& p, int i, double tol = 1e-6);

struct ProjectorFactors {
  MatrixXcd e;             // u * w, rank one, trace exactly tau
  Eigen::VectorXcd u;      // column factor
  Eigen::RowVectorXcd w;   // row factor (rescaled so that w u = tau)
  double rank_ratio = 0.0;       // sigma_2 / sigma_1 of the raw projector
  double trace_deviation = 0.0;  // |trace - tau| before rescaling
};

// e_i = l/(1/q - q) (T_i - q)(T_i + 1/q): the spectral projector onto the
// 1/l eigenline scaled to trace tau.  Checks rank-one-ness via SVD.
ProjectorFactors extract_projector(const MatrixXcd& t,
                                   const DerivedScalars& s);

// 1x1 oracle: transport of y' = kappa_c (gamma'/gamma) y around the circle
// center + radius e^{2 pi i t}.  Equals exp(2 pi i kappa_c) whenever the
// circle encloses the origin (and 1 otherwise).
cplx abelian_circle_monodromy(cplx kappa_c, cplx center, double radius,
                              const OdeOptions& opt = {});

// max_i || (T_i^2 - 1)/(2 pi i kappa') - (k_{class(i)} iota(s_i) - p_i) ||_F
// with the braid images computed at the deformation scale kappa'.
double degeneration_delta(const Dihedral& d, const ParameterSet& p,
                          cplx kappa_prime, const MonodromyOptions& opt = {});

}  // namespace bmwkz
