#include "bmwkz/presentations.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmwkz {

namespace {

// Per-node scalars in the form every relation family consumes: the sandwich
// and absorption scalar l, the idempotent scalar (tau, or alpha in the
// degenerate limit), and nu for the quadratic trade.
struct NodeConstants {
  cplx l{1.0, 0.0};
  cplx idem{1.0, 0.0};
  cplx nu{0.0, 0.0};
  // Degenerate sandwich scalar e_i x_j e_i = k e_i; the deformed algebra
  // uses l there instead.
  cplx k{1.0, 0.0};
};

template <class A>
double word_residual(A& alg, const Word& lhs, const Word& rhs) {
  Element d = alg.normal_form(lhs);
  element_axpy(d, alg.normal_form(rhs), cplx(-1.0, 0.0));
  return element_norm(d);
}

// Shared core: residuals of every applicable relation family over `graph`.
// `constants_of(i)` supplies the scalars of node i.
template <class A, class ConstantsOf>
RelationResidualReport residuals_over(A& alg, const CoxeterMatrix& graph,
                                      ConstantsOf constants_of) {
  const bool degenerate = (alg.kind() == AlgebraKind::Degenerate);
  RelationResidualReport r;

  for (int i = 0; i < graph.rank; ++i) {
    const NodeConstants s = constants_of(i);

    if (degenerate) {
      // The quadratic trade collapses to the involution x_i^2 = 1.
      r.quadratic =
          std::max(r.quadratic, word_residual(alg, {xg(i), xg(i)}, {}));
    } else {
      Element d;
      element_axpy(d, alg.normal_form({xg(i), xg(i)}), s.l);
      element_axpy(d, alg.normal_form({xg(i)}), s.l * s.nu);
      element_axpy(d, alg.normal_form({}), -s.l);
      element_axpy(d, alg.normal_form({eg(i)}), -s.nu);
      r.quadratic = std::max(r.quadratic, element_norm(d));
    }

    const cplx absorb_scalar = degenerate ? cplx(1.0, 0.0) : 1.0 / s.l;
    for (const Word& w : {Word{xg(i), eg(i)}, Word{eg(i), xg(i)}}) {
      Element d = alg.normal_form(w);
      element_axpy(d, alg.normal_form({eg(i)}), -absorb_scalar);
      r.absorb = std::max(r.absorb, element_norm(d));
    }

    Element d = alg.normal_form({eg(i), eg(i)});
    element_axpy(d, alg.normal_form({eg(i)}), -s.idem);
    r.idempotent = std::max(r.idempotent, element_norm(d));
  }

  for (int i = 0; i < graph.rank; ++i) {
    for (int j = 0; j < graph.rank; ++j) {
      if (i == j) continue;
      const int mij = graph.m[(std::size_t)i][(std::size_t)j];
      if (mij == 2) {
        if (i < j)
          r.commute_xx = std::max(
              r.commute_xx,
              word_residual(alg, {xg(i), xg(j)}, {xg(j), xg(i)}));
        r.commute_xe = std::max(
            r.commute_xe, word_residual(alg, {xg(i), eg(j)}, {eg(j), xg(i)}));
      } else if (mij == 3) {
        if (i < j)
          r.braid = std::max(
              r.braid, word_residual(alg, {xg(i), xg(j), xg(i)},
                                     {xg(j), xg(i), xg(j)}));
        r.transport = std::max(
            r.transport,
            word_residual(alg, {xg(i), xg(j), eg(i)}, {eg(j), xg(i), xg(j)}));

        const NodeConstants s = constants_of(i);
        Element d = alg.normal_form({eg(i), xg(j), eg(i)});
        element_axpy(d, alg.normal_form({eg(i)}), degenerate ? -s.k : -s.l);
        r.sandwich = std::max(r.sandwich, element_norm(d));

        // Deformed: E_i E_j E_i = E_i.  The degenerate limit carries the
        // class constants of both nodes instead: e_i e_j e_i = k_i k_j e_i.
        Element pd = alg.normal_form({eg(i), eg(j), eg(i)});
        element_axpy(pd, alg.normal_form({eg(i)}),
                     degenerate ? -(s.k * constants_of(j).k)
                                : cplx(-1.0, 0.0));
        r.projector = std::max(r.projector, element_norm(pd));
      }
    }
  }
  return r;
}

}  // namespace

double RelationResidualReport::max() const {
  return std::max({braid, transport, sandwich, projector, commute_xx,
                   commute_xe, quadratic, absorb, idempotent});
}

RelationResidualReport presentation_residuals(GeneralAlgebra& alg) {
  return residuals_over(alg, alg.graph(), [&](int i) {
    NodeConstants s;
    const DerivedScalars d = alg.node_scalars(i);
    const ClassParams& c =
        alg.params().classes[(std::size_t)alg.class_of_node(i)];
    s.l = d.l;
    s.nu = d.nu;
    s.idem = (alg.kind() == AlgebraKind::Degenerate) ? c.alpha : d.tau;
    s.k = c.k;
    return s;
  });
}

RelationResidualReport presentation_residuals(DihedralAlgebra& alg) {
  const Dihedral dihedral(alg.m());
  return residuals_over(alg, CoxeterMatrix::dihedral(alg.m()), [&](int t) {
    NodeConstants s;
    const DerivedScalars d = alg.node_scalars(t);
    s.l = d.l;
    s.nu = d.nu;
    s.idem = (alg.kind() == AlgebraKind::Degenerate) ? alg.node_alpha(t)
                                                     : d.tau;
    s.k = alg.params().classes[(std::size_t)dihedral.class_of(t)].k;
    return s;
  });
}

BasisMatchReport dihedral_match(GeneralAlgebra& general, DihedralAlgebra& d) {
  if (general.rank() != 2)
    throw std::invalid_argument(
        "dihedral match requires a rank-2 general build");
  BasisMatchReport out;
  const int n = general.dimension();

  // Change of basis: the generators are shared, so each general basis word
  // reduces directly in the dihedral algebra.
  std::vector<Element> change((std::size_t)n);
  std::vector<int> hits((std::size_t)d.dimension(), 0);
  bool permutation = (n == d.dimension());
  for (int a = 0; a < n; ++a) {
    change[(std::size_t)a] = d.normal_form(general.basis()[(std::size_t)a]);
    const Element& c = change[(std::size_t)a];
    if (c.size() != 1 || c.begin()->second != cplx(1.0, 0.0))
      permutation = false;
    else if (++hits[(std::size_t)c.begin()->first] > 1)
      permutation = false;
  }
  out.permutation = permutation;

  const StructureTensor& t = general.structure_constants();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Element lhs;
      for (const auto& [c, coeff] : t[(std::size_t)a][(std::size_t)b])
        element_axpy(lhs, change[(std::size_t)c], coeff);
      element_axpy(lhs,
                   d.multiply(change[(std::size_t)a], change[(std::size_t)b]),
                   cplx(-1.0, 0.0));
      worst = std::max(worst, element_norm(lhs));
    }
  }
  out.residual = worst;
  return out;
}

BrauerDimensionReport brauer_dimensions(const DihedralAlgebra& alg) {
  BrauerDimensionReport r;
  r.m = alg.m();
  r.computed = alg.dimension();
  if (r.m % 2 == 1) {
    r.deformed_count = 2 * r.m + r.m * r.m;
    r.alternative_count = r.m * r.m + 2 * r.m;
  } else {
    r.deformed_count = 2 * r.m + r.m * r.m / 2;
    r.alternative_count = r.m * r.m + r.m / 2;
  }
  r.matches_deformed = (r.computed == r.deformed_count);
  r.matches_alternative = (r.computed == r.alternative_count);
  return r;
}

}  // namespace bmwkz
