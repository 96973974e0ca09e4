// Scalar functions realized from the rank-one projector factors.
//
// With e_a = u_a w_a (rank one, w_a u_a = tau_a), the sandwich
// e_a Z e_a = (w_a Z u_a) e_a defines the scalar Phi^a(Z) = w_a Z u_a for
// any product Z of braid images, their inverses, and projectors.  These
// scalars are exactly the coefficients the rewriting engine needs when a
// word is squeezed between two copies of the same projector.
#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bmwkz/monodromy.hpp"

namespace bmwkz {

enum class LetterKind : std::uint8_t { X, XInv, E };

struct Letter {
  LetterKind kind = LetterKind::X;
  int idx = 0;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.kind == b.kind && a.idx == b.idx;
  }
};

using Word = std::vector<Letter>;

inline Letter xg(int i) { return {LetterKind::X, i}; }
inline Letter xg_inv(int i) { return {LetterKind::XInv, i}; }
inline Letter eg(int i) { return {LetterKind::E, i}; }

// Compact unambiguous encoding, also used as a cache key.
std::string word_key(const Word& w);

class PhiOracle {
 public:
  // x[i], e[i] are the matrices of the generators; u[i], w[i] the rank-one
  // factors of e[i] (e[i] = u[i] * w[i]).
  PhiOracle(std::vector<MatrixXcd> x, std::vector<MatrixXcd> e,
            std::vector<Eigen::VectorXcd> u,
            std::vector<Eigen::RowVectorXcd> w);
  // Movable (with a fresh mutex) so it can live behind a unique_ptr.
  PhiOracle(PhiOracle&& other) noexcept;

  int generators() const { return (int)x_.size(); }
  const MatrixXcd& x(int i) const { return x_[i]; }
  const MatrixXcd& x_inv(int i) const { return xinv_[i]; }
  const MatrixXcd& e(int i) const { return e_[i]; }

  MatrixXcd evaluate(const Word& word) const;

  // Phi^anchor(word) = w_anchor * evaluate(word) * u_anchor, memoized.
  cplx phi(int anchor, const Word& word) const;

  // w_left * evaluate(word) * u_right; vanishes identically between the
  // two projector families of an even-order dihedral arrangement.
  cplx cross(int left, int right, const Word& word) const;

 private:
  std::vector<MatrixXcd> x_, xinv_, e_;
  std::vector<Eigen::VectorXcd> u_;
  std::vector<Eigen::RowVectorXcd> w_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, cplx> cache_;
};

// Builds the oracle for a dihedral arrangement from its braid monodromy:
// x = {T(sigma_0), T(sigma_1)}, e = the extracted projectors.
PhiOracle dihedral_phi_oracle(const Dihedral& d, const ParameterSet& p,
                              const MonodromyOptions& opt = {});

}  // namespace bmwkz
