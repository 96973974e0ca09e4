#include "bmwkz/algebra_checks.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <sstream>

#include "bmwkz/jsonio.hpp"

namespace bmwkz {

void element_axpy(Element& acc, const Element& x, cplx c) {
  for (const auto& [id, coeff] : x) acc[id] += c * coeff;
}

double element_norm(const Element& x) {
  double s = 0.0;
  for (const auto& [id, coeff] : x) s += std::norm(coeff);
  return std::sqrt(s);
}

Element tensor_multiply(const StructureTensor& t, const Element& a,
                        const Element& b) {
  Element out;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b)
      element_axpy(out, t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], ca * cb);
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) == 0.0)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

MatrixXcd left_multiplication(const StructureTensor& t, int a) {
  const auto n = static_cast<Eigen::Index>(t.size());
  MatrixXcd m = MatrixXcd::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (const auto& [d, coeff] : t[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)])
      m(d, c) = coeff;
  return m;
}

MatrixXcd gram_matrix(const StructureTensor& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  // Tr(L_a L_b) = <vec(L_a), vec(L_b^T)>, so the full Gram matrix is one
  // product of two n x n^2 matrices.
  MatrixXcd rows(n, n * n);
  MatrixXcd rows_t(n, n * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    MatrixXcd la = left_multiplication(t, static_cast<int>(a));
    rows.row(a) = la.reshaped().transpose();
    rows_t.row(a) = la.transpose().reshaped().transpose();
  }
  return rows * rows_t.transpose();
}

int rank_by_svd(const MatrixXcd& m, double rel_tol) {
  Eigen::BDCSVD<MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

double associativity_residual(const StructureTensor& t, int trials,
                              std::uint64_t seed) {
  const auto n = t.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int a = pick(rng), b = pick(rng), c = pick(rng);
    Element ea{{a, 1.0}}, ec{{c, 1.0}};
    Element left = tensor_multiply(t, t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], ec);
    Element right = tensor_multiply(t, ea, t[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]);
    element_axpy(left, right, cplx(-1.0, 0.0));
    worst = std::max(worst, element_norm(left));
  }
  return worst;
}

double representation_residual(const std::vector<Word>& basis,
                               const StructureTensor& t,
                               const PhiOracle& oracle) {
  const auto n = basis.size();
  std::vector<MatrixXcd> mats(n);
  for (std::size_t a = 0; a < n; ++a) mats[a] = oracle.evaluate(basis[a]);
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      MatrixXcd lhs = mats[a] * mats[b];
      for (const auto& [c, coeff] : t[a][b]) lhs -= coeff * mats[static_cast<std::size_t>(c)];
      worst = std::max(worst, lhs.norm());
    }
  }
  return worst;
}

std::string tensor_to_json(const std::vector<Word>& basis,
                           const StructureTensor& t) {
  JsonWriter w;
  w.begin_object();
  w.key("dimension");
  w.value(basis.size());
  w.key("basis");
  w.begin_array();
  for (const auto& word : basis) w.value(word_key(word));
  w.end_array();
  w.key("tensor");
  w.begin_array();
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = 0; b < t[a].size(); ++b) {
      for (const auto& [c, coeff] : t[a][b]) {
        w.begin_array();
        w.value(a);
        w.value(b);
        w.value(static_cast<std::size_t>(c));
        w.value(coeff.real());
        w.value(coeff.imag());
        w.end_array();
      }
    }
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace bmwkz
