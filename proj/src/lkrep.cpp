#include "bmwkz/lkrep.hpp"

#include <array>

#include <Eigen/SVD>

namespace bmwkz {

namespace {

int mod(int a, int m) { return (a % m + m) % m; }

}  // namespace

MatrixXcd line_permutation(const Dihedral& d, int t) {
  return line_permutation(d, DihedralElement::ref(t));
}

MatrixXcd line_permutation(const Dihedral& d, const DihedralElement& g) {
  MatrixXcd m = MatrixXcd::Zero(d.m, d.m);
  for (int j = 0; j < d.m; ++j) m(act_on_line(d, g, j), j) = 1.0;
  return m;
}

MatrixXcd line_projector(const Dihedral& d, const ParameterSet& p, int i) {
  MatrixXcd m = MatrixXcd::Zero(d.m, d.m);
  m(i, i) = p.classes[d.class_of(i)].alpha;
  for (int j = 0; j < d.m; ++j) {
    if (j == i) continue;
    cplx sum = 0.0;
    for (int t = 0; t < d.m; ++t)
      if (d.reflect_index(t, j) == i) sum += p.classes[d.class_of(t)].k;
    m(i, j) = sum;
  }
  return m;
}

MatrixXcd connection_direction(const Dihedral& d, const ParameterSet& p,
                               int i) {
  return p.classes[d.class_of(i)].k * line_permutation(d, i) -
         line_projector(d, p, i);
}

MatrixXcd connection_term(const Dihedral& d, const ParameterSet& p, int i) {
  return p.kappa * connection_direction(d, p, i);
}

double flatness_residual(const Dihedral& d, const ParameterSet& p) {
  std::vector<MatrixXcd> x;
  MatrixXcd total = MatrixXcd::Zero(d.m, d.m);
  for (int i = 0; i < d.m; ++i) {
    x.push_back(connection_term(d, p, i));
    total += x.back();
  }
  double worst = 0.0;
  for (const auto& xi : x)
    worst = std::max(worst, (xi * total - total * xi).norm());
  return worst;
}

double equivariance_residual(const Dihedral& d, const ParameterSet& p) {
  std::vector<MatrixXcd> x;
  for (int i = 0; i < d.m; ++i) x.push_back(connection_term(d, p, i));
  std::vector<DihedralElement> elems;
  for (int a = 0; a < d.m; ++a) elems.push_back(DihedralElement::rot(a));
  for (int t = 0; t < d.m; ++t) elems.push_back(DihedralElement::ref(t));
  double worst = 0.0;
  for (const auto& g : elems) {
    MatrixXcd gm = line_permutation(d, g);
    for (int i = 0; i < d.m; ++i) {
      int gi = act_on_line(d, g, i);
      worst = std::max(worst, (gm * x[i] * gm.transpose() - x[gi]).norm());
    }
  }
  return worst;
}

int commutant_dimension(const std::vector<MatrixXcd>& mats, double rel_tol) {
  if (mats.empty()) return 0;
  const int n = (int)mats.front().rows();
  const int nn = n * n;
  MatrixXcd stacked(nn * (int)mats.size(), nn);
  // Row block per matrix A: the operator Z -> A Z - Z A on vec(Z)
  // (column-major vec: vec(AZ) = (I (x) A) vec Z, vec(ZA) = (A^T (x) I) vec Z).
  for (int k = 0; k < (int)mats.size(); ++k) {
    const MatrixXcd& a = mats[k];
    MatrixXcd block = MatrixXcd::Zero(nn, nn);
    for (int j = 0; j < n; ++j) {
      block.block(j * n, j * n, n, n) += a;
      for (int l = 0; l < n; ++l)
        block.block(j * n, l * n, n, n) -=
            a(l, j) * MatrixXcd::Identity(n, n);
    }
    stacked.block(k * nn, 0, nn, nn) = block;
  }
  Eigen::JacobiSVD<MatrixXcd> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cut = rel_tol * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return nn - rank;
}

void PresentationResiduals::add(std::string label, double r) {
  max_residual = std::max(max_residual, r);
  items.emplace_back(std::move(label), r);
}

PresentationResiduals degenerate_presentation_residuals(
    const Dihedral& d, const ParameterSet& p) {
  const int m = d.m;
  PresentationResiduals out;
  MatrixXcd id = MatrixXcd::Identity(m, m);
  // Images of the two Coxeter generators and their idempotent partners.
  std::array<MatrixXcd, 2> S = {line_permutation(d, 0), line_permutation(d, 1)};
  std::array<MatrixXcd, 2> E = {line_projector(d, p, 0),
                                line_projector(d, p, 1)};
  auto alt = [&](int first, int len) {
    // Matrix of [s_first s_other s_first ...] with `len` letters.
    MatrixXcd r = id;
    for (int a = 0; a < len; ++a) r = r * S[(first + a) % 2];
    return r;
  };
  auto k_of = [&](int t) { return p.classes[d.class_of(mod(t, m))].k; };

  for (int i : {0, 1}) {
    out.add("involution_" + std::to_string(i), (S[i] * S[i] - id).norm());
    out.add("unit_left_" + std::to_string(i), (S[i] * E[i] - E[i]).norm());
    out.add("unit_right_" + std::to_string(i), (E[i] * S[i] - E[i]).norm());
    cplx alpha = p.classes[d.class_of(i)].alpha;
    out.add("idempotent_" + std::to_string(i),
            (E[i] * E[i] - alpha * E[i]).norm());
  }
  out.add("braid", (alt(0, m) - alt(1, m)).norm());

  if (m % 2 == 0) {
    const int k = m / 2;
    for (int i : {0, 1}) {
      int j = 1 - i;
      MatrixXcd w = alt(j, 2 * k - 1);
      out.add("fold_left_" + std::to_string(i), (w * E[i] - E[i]).norm());
      out.add("fold_right_" + std::to_string(i), (E[i] * w - E[i]).norm());
      // Alternating-word sandwiches evaluate to class-sum scalars.
      for (int l = 1; l < k; ++l) {
        // [s_j s_i ...]_{2l-1} is the reflection with line index l (when
        // j = 1) or (1 - l) mod m (when j = 0); adding k flips nothing
        // for the scalar rule, which pairs the reflection with its
        // braid-shifted partner at distance k.
        int base = (j == 1) ? l : mod(1 - l, m);
        int partner = (j == 1) ? mod(l + k, m) : mod(1 - l - k, m);
        cplx scalar = k_of(base) + k_of(partner);
        out.add("sandwich_" + std::to_string(i) + "_" + std::to_string(l),
                (E[i] * alt(j, 2 * l - 1) * E[i] - scalar * E[i]).norm());
      }
      // Opposite idempotents annihilate through any group element.
      double worst = 0.0;
      for (int a = 0; a < m; ++a) {
        worst = std::max(
            worst,
            (E[i] * line_permutation(d, DihedralElement::rot(a)) * E[j])
                .norm());
        worst = std::max(
            worst,
            (E[i] * line_permutation(d, DihedralElement::ref(a)) * E[j])
                .norm());
      }
      out.add("orthogonal_" + std::to_string(i), worst);
    }
  } else {
    const int k = (m - 1) / 2;
    for (int i : {0, 1}) {
      int j = 1 - i;
      for (int l = 1; l <= k; ++l) {
        // Single conjugacy class, so every sandwich scalar is k.
        cplx scalar = p.classes[0].k;
        out.add("sandwich_" + std::to_string(i) + "_" + std::to_string(l),
                (E[i] * alt(j, 2 * l - 1) * E[i] - scalar * E[i]).norm());
      }
      out.add("transport_" + std::to_string(i),
              (alt(i, 2 * k) * E[i] - E[j] * alt(i, 2 * k)).norm());
    }
  }
  return out;
}

}  // namespace bmwkz
