// The deformed algebra attached to a dihedral arrangement, realized by
// rewriting words in x_0^{+-1}, x_1^{+-1}, E_0, E_1 onto a prescribed basis.
//
// Basis (writing L_i / R_j for the alternating positive words of length
// i / j that end / start with the letter NOT absorbed by the middle
// idempotent):
//   * group-like part: the 2m alternating reduced words (both starting
//     letters, the two length-m words identified);
//   * odd m:  L_i E_0 R_j with 0 <= i, j <= m-1          (total 2m + m^2);
//   * even m: L_i E_0 R_j and L'_i E_1 R'_j, 0 <= i, j <= m/2 - 1
//                                                        (total 2m + m^2/2).
//
// Three specializations share the rewriting skeleton:
//   Deformed   - sandwich scalars from the monodromy factors (Phi),
//                E^2 = tau E, absorption by 1/l, skein expansion of inverses;
//   Hecke      - the quotient killing every idempotent;
//   Degenerate - the limit x -> s (involutions), E^2 = alpha E, sandwich
//                scalars read off the line projector rows.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bmwkz/phi.hpp"

namespace bmwkz {

enum class AlgebraKind { Deformed, Hecke, Degenerate };

using Element = std::map<int, cplx>;  // basis index -> coefficient

struct DihedralAlgebraOptions {
  AlgebraKind kind = AlgebraKind::Deformed;
  MonodromyOptions monodromy;
  long max_steps = 1000000;   // rewriting step budget (hard error)
  int max_word_length = 512;  // runaway guard (hard error)
};

class DihedralAlgebra {
 public:
  DihedralAlgebra(int m, const ParameterSet& params,
                  const DihedralAlgebraOptions& opt = {});

  int m() const { return dihedral_.m; }
  AlgebraKind kind() const { return opt_.kind; }
  int dimension() const { return (int)basis_.size(); }
  const std::vector<Word>& basis() const { return basis_; }
  int basis_index(const Word& w) const;  // -1 when not a basis word

  const ParameterSet& params() const { return params_; }
  DerivedScalars node_scalars(int t) const;  // scalars of generator t's class
  cplx node_alpha(int t) const;

  // Reduction onto the basis; throws when the budget is exhausted or a
  // stalled word is not a basis word.
  Element normal_form(const Word& w);

  Element multiply(const Element& a, const Element& b);
  Element generator_element(const Letter& l);

  // Structure constants d[a][b] = normal_form(basis_a basis_b).
  const std::vector<std::vector<Element>>& structure_constants();

  // The oracle is only present in the Deformed specialization.
  const PhiOracle* oracle() const { return oracle_.get(); }

 private:
  struct Branch {
    cplx coeff;
    Word word;
  };

  std::optional<std::vector<Branch>> reduce_once(const Word& w) const;
  void build_basis();
  Word alt_word(int ending_letter, int len, bool end_side) const;

  Dihedral dihedral_;
  ParameterSet params_;
  DihedralAlgebraOptions opt_;
  std::unique_ptr<PhiOracle> oracle_;
  DerivedScalars scalars_[2];
  cplx fold_const_[2];  // even m: scalar of the length-(m-1) fold
  Word conj_left_, conj_right_;  // odd m: W and V with E_1 = W E_0 W^{-1}
                                 //                       = V^{-1} E_0 V
  std::vector<Word> basis_;
  std::unordered_map<std::string, int> basis_ids_;
  std::unordered_map<std::string, Element> memo_;
  std::vector<std::vector<Element>> tensor_;
  long steps_ = 0;
  int depth_ = 0;
};

}  // namespace bmwkz
