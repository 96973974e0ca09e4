#include "bmwkz/dihedral_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmwkz {

namespace {

bool is_x(const Letter& l) { return l.kind != LetterKind::E; }
bool is_pos_x(const Letter& l) { return l.kind == LetterKind::X; }

Word inverted(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Letter l = *it;
    l.kind = (l.kind == LetterKind::X) ? LetterKind::XInv : LetterKind::X;
    out.push_back(l);
  }
  return out;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word splice(const Word& w, size_t from, size_t to, const Word& repl) {
  Word out(w.begin(), w.begin() + from);
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), w.begin() + to, w.end());
  return out;
}

}  // namespace

DihedralAlgebra::DihedralAlgebra(int m, const ParameterSet& params,
                                 const DihedralAlgebraOptions& opt)
    : dihedral_(m), params_(params), opt_(opt) {
  if ((int)params.classes.size() != dihedral_.num_classes())
    throw std::invalid_argument("parameter class count does not match m");
  scalars_[0] = params.derived(dihedral_.class_of(0));
  scalars_[1] = params.derived(dihedral_.class_of(1));
  if (opt_.kind == AlgebraKind::Deformed) {
    oracle_ = std::make_unique<PhiOracle>(
        dihedral_phi_oracle(dihedral_, params_, opt_.monodromy));
  }
  if (m % 2 == 1) {
    conj_left_ = alt_word(1, m - 1, true);    // W = [x_0 x_1 ...]_{m-1}
    conj_right_ = alt_word(1, m - 1, false);  // V = [x_1 x_0 ...]_{m-1}
  } else {
    for (int t : {0, 1}) {
      Word fold = alt_word(1 - t, m - 1, true);
      fold_const_[t] =
          (opt_.kind == AlgebraKind::Deformed)
              ? oracle_->phi(t, fold) / scalars_[t].tau
              : cplx(1.0, 0.0);
    }
  }
  build_basis();
}

// Alternating positive word of the given length whose final letter (when
// end_side) or first letter (otherwise) is `boundary`.
Word DihedralAlgebra::alt_word(int boundary, int len, bool end_side) const {
  Word w(len);
  for (int p = 0; p < len; ++p) {
    int from_boundary = end_side ? (len - 1 - p) : p;
    w[p] = xg((boundary + from_boundary) % 2);
  }
  return w;
}

void DihedralAlgebra::build_basis() {
  const int m = dihedral_.m;
  auto push = [&](Word w) {
    basis_ids_.emplace(word_key(w), (int)basis_.size());
    basis_.push_back(std::move(w));
  };
  push({});
  for (int i = 1; i <= m; ++i) push(alt_word(0, i, false));
  for (int j = 1; j <= m - 1; ++j) push(alt_word(1, j, false));
  if (opt_.kind == AlgebraKind::Hecke) return;
  const int span = (m % 2 == 1) ? m : m / 2;
  const std::vector<int> anchors =
      (m % 2 == 1) ? std::vector<int>{0} : std::vector<int>{0, 1};
  for (int t : anchors)
    for (int i = 0; i < span; ++i)
      for (int j = 0; j < span; ++j) {
        Word w = alt_word(1 - t, i, true);
        w.push_back(eg(t));
        Word right = alt_word(1 - t, j, false);
        w.insert(w.end(), right.begin(), right.end());
        push(std::move(w));
      }
}

int DihedralAlgebra::basis_index(const Word& w) const {
  auto it = basis_ids_.find(word_key(w));
  return it == basis_ids_.end() ? -1 : it->second;
}

DerivedScalars DihedralAlgebra::node_scalars(int t) const {
  return scalars_[t];
}

cplx DihedralAlgebra::node_alpha(int t) const {
  return params_.classes[dihedral_.class_of(t)].alpha;
}

std::optional<std::vector<DihedralAlgebra::Branch>>
DihedralAlgebra::reduce_once(const Word& w) const {
  const int m = dihedral_.m;
  const bool deformed = opt_.kind == AlgebraKind::Deformed;
  const bool degenerate = opt_.kind == AlgebraKind::Degenerate;
  const size_t n = w.size();

  // Hecke quotient: every idempotent maps to zero.
  if (opt_.kind == AlgebraKind::Hecke) {
    for (const Letter& l : w)
      if (l.kind == LetterKind::E) return std::vector<Branch>{};
  }

  // 1. Cancel adjacent inverse pairs.
  for (size_t i = 0; i + 1 < n; ++i)
    if (is_x(w[i]) && is_x(w[i + 1]) && w[i].idx == w[i + 1].idx &&
        w[i].kind != w[i + 1].kind)
      return std::vector<Branch>{{1.0, splice(w, i, i + 2, {})}};

  // 2. Absorption next to idempotents.
  for (size_t i = 0; i + 1 < n; ++i) {
    const Letter &a = w[i], &b = w[i + 1];
    if (a.kind == LetterKind::E && b.kind == LetterKind::E &&
        a.idx == b.idx) {
      cplx c = degenerate ? node_alpha(a.idx) : scalars_[a.idx].tau;
      return std::vector<Branch>{{c, splice(w, i, i + 1, {})}};
    }
    if (is_x(a) && b.kind == LetterKind::E && a.idx == b.idx) {
      cplx c = degenerate ? 1.0
               : (a.kind == LetterKind::X ? 1.0 / scalars_[a.idx].l
                                          : scalars_[a.idx].l);
      return std::vector<Branch>{{c, splice(w, i, i + 1, {})}};
    }
    if (a.kind == LetterKind::E && is_x(b) && a.idx == b.idx) {
      cplx c = degenerate ? 1.0
               : (b.kind == LetterKind::X ? 1.0 / scalars_[b.idx].l
                                          : scalars_[b.idx].l);
      return std::vector<Branch>{{c, splice(w, i + 1, i + 2, {})}};
    }
  }

  // 3. Sandwiches: two idempotents separated by x-letters only.
  {
    int last_e = -1;
    for (size_t j = 0; j < n; ++j) {
      if (w[j].kind != LetterKind::E) continue;
      if (last_e < 0) {
        last_e = (int)j;
        continue;
      }
      size_t i = (size_t)last_e;
      Word z(w.begin() + i + 1, w.begin() + j);
      int a = w[i].idx, b = w[j].idx;
      if (a == b) {
        cplx c;
        if (deformed) {
          c = oracle_->phi(a, z);
        } else {
          DihedralElement g = DihedralElement::identity();
          for (const Letter& l : z)
            g = compose(dihedral_, g, DihedralElement::ref(l.idx));
          c = line_projector(dihedral_, params_, a)(
              a, act_on_line(dihedral_, g, a));
        }
        return std::vector<Branch>{{c, splice(w, i, j + 1, {eg(a)})}};
      }
      if (m % 2 == 0) return std::vector<Branch>{};  // annihilating pair
      if (a == 0) {  // E_0 Z E_1 = Phi(Z V^{-1}) E_0 V
        Word repl = {eg(0)};
        cplx c;
        if (deformed) {
          Word arg = z;
          Word vinv = inverted(conj_right_);
          arg.insert(arg.end(), vinv.begin(), vinv.end());
          c = oracle_->phi(0, arg);
        } else {
          DihedralElement g = DihedralElement::identity();
          for (const Letter& l : z)
            g = compose(dihedral_, g, DihedralElement::ref(l.idx));
          for (const Letter& l : conj_left_)  // Z * W
            g = compose(dihedral_, g, DihedralElement::ref(l.idx));
          c = line_projector(dihedral_, params_, 0)(0,
                                                    act_on_line(dihedral_, g, 0));
        }
        repl.insert(repl.end(), conj_right_.begin(), conj_right_.end());
        return std::vector<Branch>{{c, splice(w, i, j + 1, repl)}};
      }
      // E_1 Z E_0 = Phi(W^{-1} Z) W E_0
      Word repl = conj_left_;
      repl.push_back(eg(0));
      cplx c;
      if (deformed) {
        Word arg = inverted(conj_left_);
        arg.insert(arg.end(), z.begin(), z.end());
        c = oracle_->phi(0, arg);
      } else {
        DihedralElement g = DihedralElement::identity();
        for (const Letter& l : reversed(conj_left_))  // V Z (= W^{-1} Z)
          g = compose(dihedral_, g, DihedralElement::ref(l.idx));
        for (const Letter& l : z)
          g = compose(dihedral_, g, DihedralElement::ref(l.idx));
        c = line_projector(dihedral_, params_, 0)(0,
                                                  act_on_line(dihedral_, g, 0));
      }
      return std::vector<Branch>{{c, splice(w, i, j + 1, repl)}};
    }
  }

  // 4. Odd m: a lone E_1 transports to the E_0 family.
  if (m % 2 == 1) {
    for (size_t i = 0; i < n; ++i) {
      if (w[i].kind != LetterKind::E || w[i].idx != 1) continue;
      Word repl = conj_left_;
      repl.push_back(eg(0));
      Word tail = degenerate ? reversed(conj_left_) : inverted(conj_left_);
      repl.insert(repl.end(), tail.begin(), tail.end());
      return std::vector<Branch>{{1.0, splice(w, i, i + 1, repl)}};
    }
  }

  // 5. Alternating runs adjacent to an idempotent: braid-flip overlong
  // runs; for even m fold runs of length >= m/2 through the length-(m-1)
  // identity.
  for (size_t p = 0; p < n; ++p) {
    if (w[p].kind != LetterKind::E) continue;
    const int t = w[p].idx;
    // Left run.
    size_t s = p;
    while (s > 0 && is_pos_x(w[s - 1]) &&
           (s == p || w[s - 1].idx != w[s].idx))
      --s;
    size_t run = p - s;
    if ((int)run >= m) {
      Word flipped = w;
      for (size_t q = p - m; q < p; ++q) flipped[q].idx ^= 1;
      return std::vector<Branch>{{1.0, flipped}};
    }
    if (m % 2 == 0 && (int)run >= m / 2) {
      // Complete the run to the full length-(m-1) pattern and replace the
      // word by the inverse of the completion (carrying the fold scalar).
      Word pattern = alt_word(1 - t, m - 1, true);
      Word prefix(pattern.begin(), pattern.end() - run);
      Word repl =
          degenerate ? reversed(prefix) : inverted(prefix);
      return std::vector<Branch>{{fold_const_[t], splice(w, s, p, repl)}};
    }
    // Right run.
    size_t e = p + 1;
    while (e < n && is_pos_x(w[e]) && (e == p + 1 || w[e].idx != w[e - 1].idx))
      ++e;
    run = e - (p + 1);
    if ((int)run >= m) {
      Word flipped = w;
      for (size_t q = p + 1; q <= p + (size_t)m; ++q) flipped[q].idx ^= 1;
      return std::vector<Branch>{{1.0, flipped}};
    }
    if (m % 2 == 0 && (int)run >= m / 2) {
      Word pattern = alt_word(1 - t, m - 1, false);
      Word suffix(pattern.begin() + run, pattern.end());
      Word repl =
          degenerate ? reversed(suffix) : inverted(suffix);
      return std::vector<Branch>{{fold_const_[t], splice(w, p + 1, e, repl)}};
    }
  }

  // 6. Skein expansion of inverse letters.
  for (size_t i = 0; i < n; ++i) {
    if (w[i].kind != LetterKind::XInv) continue;
    const int t = w[i].idx;
    Word as_x = w;
    as_x[i].kind = LetterKind::X;
    if (degenerate) return std::vector<Branch>{{1.0, as_x}};
    cplx dq = 1.0 / scalars_[t].q - scalars_[t].q;
    std::vector<Branch> out;
    out.push_back({1.0, std::move(as_x)});
    out.push_back({dq, splice(w, i, i + 1, {})});
    if (opt_.kind != AlgebraKind::Hecke) {
      Word as_e = w;
      as_e[i] = eg(t);
      out.push_back({-dq, std::move(as_e)});
    }
    return out;
  }

  // 7. Collapse squares.
  for (size_t i = 0; i + 1 < n; ++i) {
    if (!(is_pos_x(w[i]) && is_pos_x(w[i + 1]) && w[i].idx == w[i + 1].idx))
      continue;
    const int t = w[i].idx;
    if (degenerate)
      return std::vector<Branch>{{1.0, splice(w, i, i + 2, {})}};
    cplx qd = scalars_[t].q - 1.0 / scalars_[t].q;
    std::vector<Branch> out;
    out.push_back({qd, splice(w, i, i + 2, {xg(t)})});
    out.push_back({1.0, splice(w, i, i + 2, {})});
    if (opt_.kind != AlgebraKind::Hecke)
      out.push_back({-qd / scalars_[t].l, splice(w, i, i + 2, {eg(t)})});
    return out;
  }

  // 8. Pure alternating words: canonicalize overlong or wrong-start braids.
  bool pure = true;
  for (const Letter& l : w) pure = pure && is_pos_x(l);
  if (pure && (int)n > m) {
    Word flipped = w;
    for (int q = 0; q < m; ++q) flipped[q].idx ^= 1;
    return std::vector<Branch>{{1.0, std::move(flipped)}};
  }
  if (pure && (int)n == m && !w.empty() && w[0].idx == 1) {
    Word flipped = w;
    for (int q = 0; q < m; ++q) flipped[q].idx ^= 1;
    return std::vector<Branch>{{1.0, std::move(flipped)}};
  }

  return std::nullopt;
}

Element DihedralAlgebra::normal_form(const Word& w) {
  // Each top-level request gets a fresh step budget; nested reductions share
  // the budget of the request that triggered them.
  if (depth_ == 0) steps_ = 0;
  if ((int)w.size() > opt_.max_word_length)
    throw std::runtime_error("rewriting produced an overlong word");
  std::string key = word_key(w);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (++steps_ > opt_.max_steps)
    throw std::runtime_error("rewriting step budget exhausted");

  if (++depth_ > 2500) {
    --depth_;
    throw std::runtime_error("rewriting recursion depth exceeded");
  }
  Element result;
  auto red = reduce_once(w);
  if (!red) {
    int id = basis_index(w);
    if (id < 0) {
      --depth_;
      throw std::runtime_error("stalled on a word outside the basis: " + key);
    }
    result[id] = 1.0;
  } else {
    for (const Branch& b : *red) {
      Element sub = normal_form(b.word);
      for (const auto& [id, c] : sub) {
        cplx v = result[id] + b.coeff * c;
        if (v == cplx(0.0))
          result.erase(id);
        else
          result[id] = v;
      }
    }
  }
  --depth_;
  memo_.emplace(std::move(key), result);
  return result;
}

Element DihedralAlgebra::multiply(const Element& a, const Element& b) {
  const auto& t = structure_constants();
  Element out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b)
      for (const auto& [k, ck] : t[i][j]) {
        cplx v = out[k] + ci * cj * ck;
        if (v == cplx(0.0))
          out.erase(k);
        else
          out[k] = v;
      }
  return out;
}

Element DihedralAlgebra::generator_element(const Letter& l) {
  return normal_form({l});
}

const std::vector<std::vector<Element>>& DihedralAlgebra::structure_constants() {
  if (!tensor_.empty()) return tensor_;
  const int dim = dimension();
  tensor_.assign(dim, std::vector<Element>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Word ab = basis_[a];
      ab.insert(ab.end(), basis_[b].begin(), basis_[b].end());
      tensor_[a][b] = normal_form(ab);
    }
  return tensor_;
}

}  // namespace bmwkz
