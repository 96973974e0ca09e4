#include "bmwkz/coxeter.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

namespace bmwkz {

namespace {
constexpr double kPi = std::numbers::pi;

int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}
}  // namespace

// ----------------------------------------------------------------------------
// Dihedral

Dihedral::Dihedral(int order) : m(order) {
  if (order < 2) throw std::invalid_argument("dihedral order must be >= 2");
}

double Dihedral::line_angle(int i) const { return mod(i, m) * kPi / m; }

Eigen::Matrix2d Dihedral::reflection_matrix(int t) const {
  const double a = 2.0 * line_angle(t);
  Eigen::Matrix2d r;
  r << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
  return r;
}

int Dihedral::reflect_index(int t, int j) const { return mod(2 * t - j, m); }

int Dihedral::class_of(int t) const { return (m % 2 == 0) ? mod(t, 2) : 0; }

std::complex<double> Dihedral::form(int i, const Eigen::Vector2cd& z) const {
  const double a = line_angle(i);
  return -z(0) * std::sin(a) + z(1) * std::cos(a);
}

DihedralElement compose(const Dihedral& d, const DihedralElement& g,
                        const DihedralElement& h) {
  const int m = d.m;
  if (!g.reflection && !h.reflection) return DihedralElement::rot(mod(g.idx + h.idx, m));
  if (!g.reflection && h.reflection) return DihedralElement::ref(mod(h.idx + g.idx, m));
  if (g.reflection && !h.reflection) return DihedralElement::ref(mod(g.idx - h.idx, m));
  return DihedralElement::rot(mod(g.idx - h.idx, m));
}

int act_on_line(const Dihedral& d, const DihedralElement& g, int j) {
  return g.reflection ? mod(2 * g.idx - j, d.m) : mod(j + 2 * g.idx, d.m);
}

DihedralElement alternating_element(const Dihedral& d, int first, int length) {
  DihedralElement g = DihedralElement::identity();
  for (int p = 0; p < length; ++p) {
    const int letter = (p % 2 == 0) ? first : 1 - first;
    g = compose(d, g, DihedralElement::ref(letter));
  }
  return g;
}

// ----------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(int n, const std::vector<std::vector<int>>& entries)
    : rank(n), m(entries) {
  validate();
}

CoxeterMatrix CoxeterMatrix::dihedral(int order) {
  return CoxeterMatrix(2, {{1, order}, {order, 1}});
}

CoxeterMatrix CoxeterMatrix::simply_laced_a(int n) {
  std::vector<std::vector<int>> e(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) e[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) e[i][i + 1] = e[i + 1][i] = 3;
  return CoxeterMatrix(n, e);
}

CoxeterMatrix CoxeterMatrix::a1_x_a1() { return CoxeterMatrix(2, {{1, 2}, {2, 1}}); }

void CoxeterMatrix::validate() const {
  if (rank <= 0 || (int)m.size() != rank)
    throw std::invalid_argument("coxeter matrix: bad rank");
  for (int i = 0; i < rank; ++i) {
    if ((int)m[i].size() != rank)
      throw std::invalid_argument("coxeter matrix: ragged rows");
    if (m[i][i] != 1) throw std::invalid_argument("coxeter matrix: diagonal must be 1");
    for (int j = 0; j < rank; ++j) {
      if (m[i][j] != m[j][i])
        throw std::invalid_argument("coxeter matrix: not symmetric");
      if (i != j && m[i][j] < 2)
        throw std::invalid_argument("coxeter matrix: off-diagonal must be >= 2");
    }
  }
}

// ----------------------------------------------------------------------------
// Group enumeration via the geometric representation.

namespace {

// s_i acting on the basis e_j of the geometric representation:
// s_i(e_j) = e_j + 2 cos(pi/m_ij) e_i for j != i, s_i(e_i) = -e_i.
Eigen::MatrixXd generator_matrix(const CoxeterMatrix& M, int i) {
  const int n = M.rank;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    if (j == i)
      g(i, i) = -1.0;
    else
      g(i, j) = 2.0 * std::cos(kPi / M.m[i][j]);
  }
  return g;
}

std::string matrix_key(const Eigen::MatrixXd& a) {
  std::ostringstream os;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      os << llround(a(i, j) * 1e6) << ',';
  return os.str();
}

}  // namespace

int CoxeterGroup::word_element(const std::vector<int>& word) const {
  int id = identity_id();
  for (int g : word) id = right_mult[id][g];
  return id;
}

bool CoxeterGroup::right_descent(int id, int gen) const {
  return length[right_mult[id][gen]] < length[id];
}

bool CoxeterGroup::left_descent(int id, int gen) const {
  return length[left_mult[id][gen]] < length[id];
}

CoxeterGroup enumerate_group(const CoxeterMatrix& M, int max_order) {
  M.validate();
  const int n = M.rank;

  std::vector<Eigen::MatrixXd> gens(n);
  for (int i = 0; i < n; ++i) gens[i] = generator_matrix(M, i);

  CoxeterGroup G;
  G.matrix = M;

  std::map<std::string, int> ids;
  std::vector<Eigen::MatrixXd> mats;

  Eigen::MatrixXd id_mat = Eigen::MatrixXd::Identity(n, n);
  ids[matrix_key(id_mat)] = 0;
  mats.push_back(id_mat);
  G.canonical_word.push_back({});
  G.length.push_back(0);

  // Breadth-first in ShortLex order: the first word reaching an element is
  // its canonical reduced word, and BFS depth equals Coxeter length.
  std::deque<int> queue{0};
  std::vector<std::vector<int>> rmult;
  rmult.push_back(std::vector<int>(n, -1));
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int g = 0; g < n; ++g) {
      const Eigen::MatrixXd next = mats[cur] * gens[g];
      const std::string key = matrix_key(next);
      auto it = ids.find(key);
      int nid;
      if (it == ids.end()) {
        nid = (int)mats.size();
        if (nid >= max_order)
          throw std::runtime_error("coxeter group enumeration exceeded cap");
        ids[key] = nid;
        mats.push_back(next);
        auto w = G.canonical_word[cur];
        w.push_back(g);
        G.canonical_word.push_back(std::move(w));
        G.length.push_back(G.length[cur] + 1);
        rmult.push_back(std::vector<int>(n, -1));
        queue.push_back(nid);
      } else {
        nid = it->second;
      }
      rmult[cur][g] = nid;
    }
  }

  G.order = (int)mats.size();
  G.right_mult = std::move(rmult);
  G.longest_length = 0;
  for (int len : G.length) G.longest_length = std::max(G.longest_length, len);

  G.left_mult.assign(G.order, std::vector<int>(n, -1));
  for (int e = 0; e < G.order; ++e) {
    for (int g = 0; g < n; ++g) {
      // left multiply: prepend generator to the canonical word
      std::vector<int> w{g};
      w.insert(w.end(), G.canonical_word[e].begin(), G.canonical_word[e].end());
      G.left_mult[e][g] = G.word_element(w);
    }
  }
  return G;
}

}  // namespace bmwkz
