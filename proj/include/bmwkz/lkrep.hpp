// Deformed reflection representation on the span of the arrangement lines.
//
// The group acts by permuting lines: iota(s_t) v_j = v_{(2t-j) mod m}.
// Each line H_i carries a rank-one matrix p_i supported on row i:
//   p_i(i, i) = alpha_{class(i)}
//   p_i(i, j) = sum of k_{class(t)} over all t with s_t(H_j) = H_i  (j != i)
// and a connection coefficient X_i = kappa (k_{class(i)} iota(s_i) - p_i).
// The family {X_i} is equivariant (iota(w) X_i iota(w)^-1 = X_{w(i)}) and
// satisfies the flatness bracket condition ([X_i, sum_j X_j] = 0), which makes
// sum_i X_i dlog f_i a flat connection on the complexified complement.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bmwkz/coxeter.hpp"
#include "bmwkz/params.hpp"

namespace bmwkz {

using Eigen::MatrixXcd;

// Permutation matrix of s_t (or of an arbitrary group element) on lines.
MatrixXcd line_permutation(const Dihedral& d, int t);
MatrixXcd line_permutation(const Dihedral& d, const DihedralElement& g);

// Rank-one row matrix p_i attached to the line H_i.
MatrixXcd line_projector(const Dihedral& d, const ParameterSet& p, int i);

// k_{class(i)} iota(s_i) - p_i, the kappa-independent part of X_i.
MatrixXcd connection_direction(const Dihedral& d, const ParameterSet& p, int i);

// X_i = kappa * connection_direction(i).
MatrixXcd connection_term(const Dihedral& d, const ParameterSet& p, int i);

// max_i || [X_i, sum_j X_j] ||_F  (zero for a flat family).
double flatness_residual(const Dihedral& d, const ParameterSet& p);

// max over group elements w and lines i of
// || iota(w) X_i iota(w)^-1 - X_{w(i)} ||_F.
double equivariance_residual(const Dihedral& d, const ParameterSet& p);

// Dimension of { Z : A Z = Z A for every A in mats }, computed as the
// kernel dimension of the stacked Sylvester operators (SVD with a relative
// threshold on singular values).
int commutant_dimension(const std::vector<MatrixXcd>& mats,
                        double rel_tol = 1e-8);

// Residuals of the defining relations of the degenerate (Brauer-type)
// presentation under S_i -> iota(s_i), E_i -> p_i, for the two Coxeter
// generators s_0, s_1 of the dihedral group.  Labels identify relations.
struct PresentationResiduals {
  double max_residual = 0.0;
  std::vector<std::pair<std::string, double>> items;

  void add(std::string label, double r);
};

PresentationResiduals degenerate_presentation_residuals(const Dihedral& d,
                                                        const ParameterSet& p);

}  // namespace bmwkz
