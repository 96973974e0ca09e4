// Dihedral reflection arrangements and finite Coxeter group enumeration.
//
// Conventions used throughout this project:
//   * The dihedral arrangement of order m consists of the m lines
//     H_i = ker f_i in the real plane, where f_i(x,y) = -x sin(i*pi/m)
//     + y cos(i*pi/m).  H_0 is the x-axis and indices grow anticlockwise.
//   * s_t denotes the reflection across H_t; it maps H_j to H_{(2t-j) mod m}.
//   * For even m the reflections split into two conjugacy classes by index
//     parity (class of s_0 = even indices, class of s_1 = odd indices);
//     for odd m all reflections are conjugate.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bmwkz {

// ----------------------------------------------------------------------------
// Dihedral arrangement of order m (m >= 2 lines through the origin).

struct Dihedral {
  int m = 0;

  explicit Dihedral(int order);

  // Angle of the line H_i.
  double line_angle(int i) const;

  // 2x2 orthogonal matrix of the reflection s_t.
  Eigen::Matrix2d reflection_matrix(int t) const;

  // Index action of s_t on lines: H_j -> H_{(2t-j) mod m}.
  int reflect_index(int t, int j) const;

  // Conjugacy class of the reflection s_t: always 0 for odd m,
  // index parity for even m.
  int class_of(int t) const;

  int num_classes() const { return (m % 2 == 0) ? 2 : 1; }

  // Value of the linear form f_i at a complex point (extension of the real
  // form by complex linearity).
  std::complex<double> form(int i, const Eigen::Vector2cd& z) const;
};

// Element of the dihedral group D_m of order 2m, in closed form.
// Rotations rot(a) act on line indices by j -> j + 2a, reflections ref(t)
// by j -> 2t - j (all mod m).
struct DihedralElement {
  bool reflection = false;
  int idx = 0;  // rotation amount a, or reflected-line index t

  static DihedralElement identity() { return {false, 0}; }
  static DihedralElement rot(int a) { return {false, a}; }
  static DihedralElement ref(int t) { return {true, t}; }
};

DihedralElement compose(const Dihedral& d, const DihedralElement& g,
                        const DihedralElement& h);  // g*h (apply h first)
int act_on_line(const Dihedral& d, const DihedralElement& g, int j);

// Group element of the alternating word [s_a s_b s_a ...] of given length
// (letters alternate starting from `first`; the other letter is 1-first).
DihedralElement alternating_element(const Dihedral& d, int first, int length);

// ----------------------------------------------------------------------------
// General Coxeter matrices and brute-force group enumeration.

struct CoxeterMatrix {
  int rank = 0;
  std::vector<std::vector<int>> m;  // m[i][j] = order of s_i s_j

  CoxeterMatrix() = default;
  CoxeterMatrix(int n, const std::vector<std::vector<int>>& entries);

  static CoxeterMatrix dihedral(int order);    // I_2(m)
  static CoxeterMatrix simply_laced_a(int n);  // A_n chain
  static CoxeterMatrix a1_x_a1();              // two commuting nodes

  void validate() const;  // symmetric, unit diagonal, off-diagonal >= 2
};

// Full enumeration of a finite Coxeter group from its matrix, via the
// geometric reflection representation.  Elements are identified by their
// matrices (rounded keys); canonical words are ShortLex-minimal.
struct CoxeterGroup {
  CoxeterMatrix matrix;
  int order = 0;
  int longest_length = 0;  // length of the longest element

  std::vector<std::vector<int>> canonical_word;  // per element id
  std::vector<int> length;                       // Coxeter length per id
  std::vector<std::vector<int>> right_mult;      // right_mult[id][gen] -> id
  std::vector<std::vector<int>> left_mult;       // left_mult[id][gen] -> id

  int identity_id() const { return 0; }
  int word_element(const std::vector<int>& word) const;  // fold right_mult
  bool right_descent(int id, int gen) const;
  bool left_descent(int id, int gen) const;
};

// Enumerates the group; throws std::runtime_error if the element count
// exceeds `max_order` (guards against non-finite or mistyped matrices).
CoxeterGroup enumerate_group(const CoxeterMatrix& M, int max_order = 20000);

}  // namespace bmwkz
