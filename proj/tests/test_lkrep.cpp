#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bmwkz/lkrep.hpp"

using namespace bmwkz;

namespace {

ParameterSet params_for(const Dihedral& d, std::uint64_t seed = 11) {
  return sample_generic_parameters(seed, d.num_classes());
}

}  // namespace

TEST_CASE("line permutations are involutive permutation matrices") {
  for (int m : {3, 4, 5, 6}) {
    Dihedral d(m);
    for (int t = 0; t < m; ++t) {
      MatrixXcd s = line_permutation(d, t);
      CHECK((s * s - MatrixXcd::Identity(m, m)).norm() == 0.0);
      for (int j = 0; j < m; ++j) CHECK(s(d.reflect_index(t, j), j) == 1.0);
    }
  }
}

TEST_CASE("projector rows match hand-computed values") {
  // Odd m: every off-diagonal entry of row i is k (unique reflection maps
  // H_j to H_i, single class).
  for (int m : {3, 5, 7}) {
    Dihedral d(m);
    ParameterSet p = params_for(d);
    const cplx k = p.classes[0].k, alpha = p.classes[0].alpha;
    for (int i = 0; i < m; ++i) {
      MatrixXcd pi = line_projector(d, p, i);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          cplx expected = 0.0;
          if (a == i) expected = (b == i) ? alpha : k;
          CHECK(std::abs(pi(a, b) - expected) == 0.0);
        }
    }
  }
  // m = 4: two reflections map H_{i+2} to H_i and they share a class, so
  // the only off-diagonal entry is 2k of the opposite class.
  {
    Dihedral d(4);
    ParameterSet p = params_for(d);
    const cplx k0 = p.classes[0].k, k1 = p.classes[1].k;
    const cplx a0 = p.classes[0].alpha, a1 = p.classes[1].alpha;
    MatrixXcd p0 = line_projector(d, p, 0);
    CHECK(p0(0, 0) == a0);
    CHECK(p0(0, 1) == cplx(0.0));
    CHECK(p0(0, 2) == 2.0 * k1);
    CHECK(p0(0, 3) == cplx(0.0));
    MatrixXcd p1 = line_projector(d, p, 1);
    CHECK(p1(1, 1) == a1);
    CHECK(p1(1, 3) == 2.0 * k0);
    CHECK(p1(1, 0) == cplx(0.0));
    CHECK(p1(1, 2) == cplx(0.0));
  }
  // m = 6: the two reflections taking H_j to H_i (j = i mod 2, j != i)
  // differ by the half-turn and land in opposite classes.
  {
    Dihedral d(6);
    ParameterSet p = params_for(d);
    const cplx ks = p.classes[0].k + p.classes[1].k;
    MatrixXcd p0 = line_projector(d, p, 0);
    CHECK(p0(0, 0) == p.classes[0].alpha);
    CHECK(p0(0, 2) == ks);
    CHECK(p0(0, 4) == ks);
    CHECK(p0(0, 1) == cplx(0.0));
    CHECK(p0(0, 3) == cplx(0.0));
    CHECK(p0(0, 5) == cplx(0.0));
    MatrixXcd p1 = line_projector(d, p, 1);
    CHECK(p1(1, 1) == p.classes[1].alpha);
    CHECK(p1(1, 3) == ks);
    CHECK(p1(1, 5) == ks);
  }
}

TEST_CASE("projector identities hold exactly") {
  for (int m : {3, 4, 5, 6}) {
    Dihedral d(m);
    ParameterSet p = params_for(d, 23);
    for (int i = 0; i < m; ++i) {
      MatrixXcd pi = line_projector(d, p, i);
      MatrixXcd si = line_permutation(d, i);
      cplx alpha = p.classes[d.class_of(i)].alpha;
      CHECK((pi * pi - alpha * pi).norm() < 1e-14);
      CHECK((si * pi - pi).norm() < 1e-14);
      CHECK((pi * si - pi).norm() < 1e-14);
    }
  }
}

TEST_CASE("connection terms are equivariant and flat") {
  for (int m : {3, 4, 5, 6, 7, 8}) {
    Dihedral d(m);
    ParameterSet p = params_for(d, 5 + m);
    CHECK(equivariance_residual(d, p) < 1e-12);
    CHECK(flatness_residual(d, p) < 1e-12);
  }
}

TEST_CASE("even m: connection terms preserve the line-parity split") {
  for (int m : {4, 6, 8}) {
    Dihedral d(m);
    ParameterSet p = params_for(d, 2);
    for (int i = 0; i < m; ++i) {
      MatrixXcd x = connection_term(d, p, i);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          if ((a + b) % 2 == 1) CHECK(std::abs(x(a, b)) == 0.0);
    }
  }
}

TEST_CASE("commutant dimension on known examples") {
  // Scalars: the full matrix algebra commutes.
  CHECK(commutant_dimension({MatrixXcd::Identity(3, 3)}) == 9);
  // A matrix with distinct eigenvalues: diagonal commutant.
  MatrixXcd diag = MatrixXcd::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  diag(2, 2) = 3.5;
  CHECK(commutant_dimension({diag}) == 3);
  // Line permutation actions: dimension equals the number of orbits on
  // ordered pairs of lines (computed by hand via orbit counting):
  // m=3 -> 2, m=4 -> 6, m=5 -> 3, m=6 -> 8.
  auto perm_commutant = [](int m) {
    Dihedral d(m);
    return commutant_dimension({line_permutation(d, 0),
                                line_permutation(d, 1)});
  };
  CHECK(perm_commutant(3) == 2);
  CHECK(perm_commutant(4) == 6);
  CHECK(perm_commutant(5) == 3);
  CHECK(perm_commutant(6) == 8);
}

TEST_CASE("degenerate presentation holds in the line representation") {
  for (int m : {3, 4, 5, 6, 7, 8}) {
    Dihedral d(m);
    ParameterSet p = params_for(d, 31 + m);
    PresentationResiduals r = degenerate_presentation_residuals(d, p);
    INFO("m = " << m);
    for (const auto& [label, res] : r.items) {
      INFO(label << " -> " << res);
      CHECK(res < 1e-12);
    }
    CHECK(r.max_residual < 1e-12);
  }
}
