// The deformed algebra attached to a general finite-type Coxeter graph,
// realized by word rewriting with per-pair dihedral engines.
//
// Generators x_i^{+-1}, E_i per node.  Single-node rules (cancellation,
// absorption, the quadratic expansion of squares and of inverses) apply
// directly; any contiguous segment whose letters live on one edge {i, j}
// with m_ij >= 3 is reduced by delegating to the dihedral algebra of that
// edge, with node min(i, j) playing the dihedral generator 0.  Pairs with
// m_ij = 2 commute in all four generator combinations.  When no rule
// applies, a breadth-first search over the invertible moves (commutations
// and braid flips) either finds a reducible word in the orbit or picks the
// lexicographically minimal member as the canonical basis representative.
//
// The basis is discovered: starting from the empty word, the set of
// canonical irreducible words is closed under multiplication.  Reflection
// classes are the connected components of the odd-bond graph, so the
// supplied parameter set must carry one (k, alpha) pair per component.
#pragma once

#include <set>

#include "bmwkz/algebra_checks.hpp"
#include "bmwkz/coxeter.hpp"
#include "bmwkz/dihedral_algebra.hpp"

namespace bmwkz {

struct GeneralAlgebraOptions {
  AlgebraKind kind = AlgebraKind::Deformed;
  MonodromyOptions monodromy;
  // Step budget for each top-level reduction request (hard error).
  long max_steps = 1000000;
  // Cumulative step budget for basis discovery; hitting it stops the
  // closure and leaves a partial algebra marked incomplete.
  long discovery_steps = 1000000;
  int max_words = 20000;      // discovered-basis cap (flags incomplete)
  int max_word_length = 128;  // runaway guard (hard error)
  int max_orbit = 20000;      // move-orbit cap per word (flags incomplete)
};

class GeneralAlgebra {
 public:
  GeneralAlgebra(const CoxeterMatrix& graph, const ParameterSet& params,
                 const GeneralAlgebraOptions& opt = {});

  int rank() const { return graph_.rank; }
  const CoxeterMatrix& graph() const { return graph_; }
  AlgebraKind kind() const { return opt_.kind; }

  int num_classes() const { return num_classes_; }
  int class_of_node(int i) const { return node_class_[i]; }
  const ParameterSet& params() const { return params_; }
  DerivedScalars node_scalars(int i) const;

  // False when an orbit cap was hit, so canonical choices (and hence the
  // discovered dimension) are not certified stable.
  bool complete() const { return complete_; }

  int dimension() const { return (int)basis_.size(); }
  const std::vector<Word>& basis() const { return basis_; }
  int basis_index(const Word& w) const;

  Element normal_form(const Word& w);
  Element multiply(const Element& a, const Element& b);

  const StructureTensor& structure_constants();

  // The dihedral engine of edge {i, j}; null when m_ij = 2.
  const DihedralAlgebra* pair_algebra(int i, int j) const;

  // || normal_form(lhs) - normal_form(rhs) || in coefficient norm.
  double relation_residual(const Word& lhs, const Word& rhs);

 private:
  struct Branch {
    cplx coeff;
    Word word;
  };

  std::optional<std::vector<Branch>> greedy_step(const Word& w) const;
  std::optional<std::vector<Branch>> delegate_step(const Word& w);
  std::vector<Word> moves(const Word& w) const;
  Element combine(const std::vector<Branch>& branches);
  Element reduce(const Word& w, const std::string& key);
  std::optional<std::pair<int, int>> single_pair(const Word& w) const;
  int admit(const Word& w);

  Word to_pair_word(const Word& seg, int i, int j) const;
  Word from_pair_word(const Word& seg, int i, int j) const;

  CoxeterMatrix graph_;
  ParameterSet params_;
  GeneralAlgebraOptions opt_;
  std::vector<int> node_class_;
  int num_classes_ = 0;
  std::vector<DerivedScalars> scalars_;  // per node
  // pair_[i][j] for i < j with m_ij >= 3.
  std::vector<std::vector<std::unique_ptr<DihedralAlgebra>>> pair_;

  std::vector<Word> basis_;
  std::unordered_map<std::string, int> basis_ids_;
  std::unordered_map<std::string, Element> memo_;
  // Words whose normal forms are currently being resolved; re-entering one
  // means the attempted rewrite is a closed loop of identities.
  std::set<std::string> in_flight_;
  StructureTensor tensor_;
  bool tensor_ready_ = false;
  bool complete_ = true;
  // True while the constructor closes the basis; discovery draws on one
  // cumulative step budget, later top-level requests each get a fresh one.
  bool discovering_ = true;
  long steps_ = 0;
  int depth_ = 0;
};

// Connected components of the odd-bond graph; nodes in one component share
// a reflection class.  Returns the class of each node; classes are numbered
// by first appearance.
std::vector<int> reflection_classes(const CoxeterMatrix& graph);

}  // namespace bmwkz
