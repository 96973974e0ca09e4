// Relation-level comparison of the constructed algebras with the standard
// two-parameter presentation: residuals of every relation family, the
// change-of-basis match between the rank-2 general build and the dihedral
// build of the same order, and the dimension bookkeeping for the degenerate
// specialization.
#pragma once

#include "bmwkz/general_algebra.hpp"

namespace bmwkz {

// Max residuals of the defining relation families, in coefficient norm.
// Each field is the maximum over all applicable nodes or node pairs of the
// graph; a family with no applicable pair reports 0.  The same relations
// hold verbatim in the Hecke quotient (every E-term reduces to zero there).
struct RelationResidualReport {
  double braid = 0.0;       // x_i x_j x_i = x_j x_i x_j        (m_ij = 3)
  double transport = 0.0;   // x_i x_j E_i = E_j x_i x_j        (m_ij = 3)
  double sandwich = 0.0;    // E_i x_j E_i = l_i E_i            (m_ij = 3)
  double projector = 0.0;   // E_i E_j E_i = E_i                (m_ij = 3)
  double commute_xx = 0.0;  // x_i x_j = x_j x_i                (m_ij = 2)
  double commute_xe = 0.0;  // x_i E_j = E_j x_i                (m_ij = 2)
  double quadratic = 0.0;   // l(x_i^2 + nu x_i - 1) = nu E_i   (all i)
  double absorb = 0.0;      // x_i E_i = l_i^{-1} E_i           (all i)
  double idempotent = 0.0;  // E_i^2 = tau_i E_i                (all i)

  double max() const;
};

// Residuals over the graph of a general build.  Pairs with m_ij > 3 carry
// relations outside the simply-laced families and are skipped; the per-node
// families are always checked.
RelationResidualReport presentation_residuals(GeneralAlgebra& alg);

// Residuals for a dihedral build, treated as the rank-2 graph with bond
// order m.  For m = 3 this exercises every family of the two-parameter
// presentation, including the quadratic trade of E_i for x_i^2.
RelationResidualReport presentation_residuals(DihedralAlgebra& alg);

// Match between the rank-2 general build and the dihedral build of the same
// bond order: each general basis word is reduced in the dihedral algebra
// (the generators are shared), giving a change of basis C, and the product
// tables are compared through it.
struct BasisMatchReport {
  // Every general basis word lands on a single dihedral basis word with
  // coefficient exactly 1, and the assignment is a bijection.
  bool permutation = false;
  // max over basis pairs (a, b) of
  //   || sum_d T[a][b][d] C[d]  -  C[a] C[b] ||.
  double residual = 0.0;
};
BasisMatchReport dihedral_match(GeneralAlgebra& general, DihedralAlgebra& d);

// Dimension bookkeeping for the degenerate specialization.  Two closed-form
// counts circulate for even order (2m + m^2/2, matching the deformed
// algebra, and m^2 + m/2); for odd order both equal m^2 + 2m.  The computed
// dimension is reported together with which count it matches, asserting
// neither.
struct BrauerDimensionReport {
  int m = 0;
  int computed = 0;
  int deformed_count = 0;     // 2m + m^2 (odd m), 2m + m^2/2 (even m)
  int alternative_count = 0;  // m^2 + 2m (odd m), m^2 + m/2  (even m)
  bool matches_deformed = false;
  bool matches_alternative = false;
};
BrauerDimensionReport brauer_dimensions(const DihedralAlgebra& alg);

}  // namespace bmwkz
