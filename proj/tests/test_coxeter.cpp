#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bmwkz/coxeter.hpp"

using namespace bmwkz;

namespace {

// Independent oracle: reflection across the line at angle t is
// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
Eigen::Matrix2d reflection_oracle(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(2 * theta), std::sin(2 * theta), std::sin(2 * theta),
      -std::cos(2 * theta);
  return r;
}

Eigen::Vector2d line_direction(const Dihedral& d, int i) {
  return {std::cos(d.line_angle(i)), std::sin(d.line_angle(i))};
}

}  // namespace

TEST_CASE("reflection matrices match the closed form and are involutions") {
  for (int m : {2, 3, 4, 5, 6, 7, 8}) {
    Dihedral d(m);
    for (int t = 0; t < m; ++t) {
      Eigen::Matrix2d r = d.reflection_matrix(t);
      CHECK((r - reflection_oracle(d.line_angle(t))).norm() < 1e-14);
      CHECK((r * r - Eigen::Matrix2d::Identity()).norm() < 1e-14);
      CHECK(std::abs(r.determinant() + 1.0) < 1e-14);
    }
  }
}

TEST_CASE("linear forms vanish exactly on their lines") {
  for (int m : {3, 4, 5, 6}) {
    Dihedral d(m);
    for (int i = 0; i < m; ++i) {
      Eigen::Vector2cd dir = line_direction(d, i).cast<std::complex<double>>();
      CHECK(std::abs(d.form(i, dir)) < 1e-15);
      // The unit normal evaluates to 1.
      Eigen::Vector2cd nrm;
      nrm << -std::sin(d.line_angle(i)), std::cos(d.line_angle(i));
      CHECK(std::abs(d.form(i, nrm) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("index action of reflections agrees with the geometry") {
  for (int m : {3, 4, 5, 6, 7}) {
    Dihedral d(m);
    for (int t = 0; t < m; ++t) {
      Eigen::Matrix2d r = d.reflection_matrix(t);
      for (int j = 0; j < m; ++j) {
        int image = d.reflect_index(t, j);
        CHECK(image == ((2 * t - j) % m + m) % m);
        // The reflected direction lies on line `image` (up to sign).
        Eigen::Vector2d v = r * line_direction(d, j);
        Eigen::Vector2d w = line_direction(d, image);
        double cross = v.x() * w.y() - v.y() * w.x();
        CHECK(std::abs(cross) < 1e-13);
      }
    }
  }
}

TEST_CASE("closed-form composition matches matrix multiplication") {
  for (int m : {3, 4, 5, 6}) {
    Dihedral d(m);
    std::vector<DihedralElement> elems;
    for (int a = 0; a < m; ++a) elems.push_back(DihedralElement::rot(a));
    for (int t = 0; t < m; ++t) elems.push_back(DihedralElement::ref(t));
    auto matrix_of = [&](const DihedralElement& g) -> Eigen::Matrix2d {
      if (g.reflection) return d.reflection_matrix(g.idx);
      double a = 2.0 * g.idx * std::numbers::pi / m;
      Eigen::Matrix2d r;
      r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
      return r;
    };
    for (const auto& g : elems)
      for (const auto& h : elems) {
        DihedralElement gh = compose(d, g, h);
        CHECK((matrix_of(gh) - matrix_of(g) * matrix_of(h)).norm() < 1e-12);
        // Index action is a homomorphism (g*h acts as: first h, then g).
        for (int j = 0; j < m; ++j)
          CHECK(act_on_line(d, gh, j) ==
                act_on_line(d, g, act_on_line(d, h, j)));
      }
  }
}

TEST_CASE("alternating words hit the expected reflections") {
  for (int m : {3, 4, 5, 6, 7}) {
    Dihedral d(m);
    for (int i = 1; i < m; ++i) {
      // [s_1 s_0 s_1 ...] of odd length 2i-1 equals s_i.
      DihedralElement g = alternating_element(d, 1, 2 * i - 1);
      CHECK(g.reflection);
      CHECK(g.idx == i % m);
      // [s_0 s_1 s_0 ...] of odd length 2l-1 equals s_{(1-l) mod m}.
      DihedralElement h = alternating_element(d, 0, 2 * i - 1);
      CHECK(h.reflection);
      CHECK(h.idx == ((1 - i) % m + m) % m);
    }
    // Length-m alternating words both give the same element (braid relation).
    DihedralElement a = alternating_element(d, 0, m);
    DihedralElement b = alternating_element(d, 1, m);
    CHECK(a.reflection == b.reflection);
    CHECK(a.idx == b.idx);
  }
}

TEST_CASE("reflection class split by parity for even m") {
  Dihedral d4(4);
  CHECK(d4.num_classes() == 2);
  CHECK(d4.class_of(0) == 0);
  CHECK(d4.class_of(1) == 1);
  CHECK(d4.class_of(2) == 0);
  CHECK(d4.class_of(3) == 1);
  Dihedral d5(5);
  CHECK(d5.num_classes() == 1);
  for (int t = 0; t < 5; ++t) CHECK(d5.class_of(t) == 0);
}

TEST_CASE("group enumeration: orders and longest lengths") {
  struct Expected {
    CoxeterMatrix M;
    int order, longest;
  };
  std::vector<Expected> cases;
  for (int m : {2, 3, 4, 5, 6, 7})
    cases.push_back({CoxeterMatrix::dihedral(m), 2 * m, m});
  cases.push_back({CoxeterMatrix::a1_x_a1(), 4, 2});
  cases.push_back({CoxeterMatrix::simply_laced_a(1), 2, 1});
  cases.push_back({CoxeterMatrix::simply_laced_a(2), 6, 3});
  cases.push_back({CoxeterMatrix::simply_laced_a(3), 24, 6});
  for (const auto& c : cases) {
    CoxeterGroup g = enumerate_group(c.M);
    CHECK(g.order == c.order);
    CHECK(g.longest_length == c.longest);
  }
}

TEST_CASE("canonical words are reduced and round-trip") {
  for (auto M : {CoxeterMatrix::dihedral(5), CoxeterMatrix::simply_laced_a(3),
                 CoxeterMatrix::dihedral(6)}) {
    CoxeterGroup g = enumerate_group(M);
    CHECK(g.canonical_word[g.identity_id()].empty());
    for (int id = 0; id < g.order; ++id) {
      CHECK((int)g.canonical_word[id].size() == g.length[id]);
      CHECK(g.word_element(g.canonical_word[id]) == id);
    }
    // Multiplication tables are consistent: right then inverse-right.
    for (int id = 0; id < g.order; ++id)
      for (int s = 0; s < M.rank; ++s) {
        CHECK(g.right_mult[g.right_mult[id][s]][s] == id);
        CHECK(g.left_mult[g.left_mult[id][s]][s] == id);
        // Descent flags match length drop.
        CHECK(g.right_descent(id, s) ==
              (g.length[g.right_mult[id][s]] < g.length[id]));
        CHECK(g.left_descent(id, s) ==
              (g.length[g.left_mult[id][s]] < g.length[id]));
      }
  }
}

TEST_CASE("dihedral matrix agrees between the two constructions") {
  // I_2(3) and A_2 are the same Coxeter system.
  CoxeterGroup a = enumerate_group(CoxeterMatrix::dihedral(3));
  CoxeterGroup b = enumerate_group(CoxeterMatrix::simply_laced_a(2));
  CHECK(a.order == b.order);
  CHECK(a.longest_length == b.longest_length);
}
