#include "bmwkz/general_algebra.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <set>
#include <stdexcept>

namespace bmwkz {

namespace {

bool is_pos_x(const Letter& l) { return l.kind == LetterKind::X; }

bool is_x_kind(const Letter& l) {
  return l.kind == LetterKind::X || l.kind == LetterKind::XInv;
}

// Letters are ordered by node index first so that commuting factors sort
// onto the lowest node; the canonical orbit member is the lexicographic
// minimum under this order.
int letter_rank(const Letter& l) {
  return 3 * l.idx + (l.kind == LetterKind::X    ? 0
                      : l.kind == LetterKind::XInv ? 1
                                                   : 2);
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t p = 0; p < a.size(); ++p) {
    const int ra = letter_rank(a[p]), rb = letter_rank(b[p]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

Word spliced(const Word& w, std::size_t from, std::size_t count,
             const Word& insert) {
  Word out;
  out.reserve(w.size() - count + insert.size());
  out.insert(out.end(), w.begin(), w.begin() + (long)from);
  out.insert(out.end(), insert.begin(), insert.end());
  out.insert(out.end(), w.begin() + (long)(from + count), w.end());
  return out;
}

// Raised when a rewrite attempt re-enters the word it is resolving.  The
// loop is a closed chain of identities (it proves nothing new about the
// word), so the frame owning `key` discards that attempt and tries the
// next candidate instead of recursing forever.
struct CycleDetected {
  std::string key;
};

}  // namespace

std::vector<int> reflection_classes(const CoxeterMatrix& graph) {
  const int n = graph.rank;
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int root = 0; root < n; ++root) {
    if (cls[root] >= 0) continue;
    cls[root] = next;
    std::deque<int> q{root};
    while (!q.empty()) {
      int i = q.front();
      q.pop_front();
      for (int j = 0; j < n; ++j)
        if (cls[j] < 0 && graph.m[i][j] >= 3 && graph.m[i][j] % 2 == 1) {
          cls[j] = next;
          q.push_back(j);
        }
    }
    ++next;
  }
  return cls;
}

GeneralAlgebra::GeneralAlgebra(const CoxeterMatrix& graph,
                               const ParameterSet& params,
                               const GeneralAlgebraOptions& opt)
    : graph_(graph), params_(params), opt_(opt) {
  graph_.validate();
  node_class_ = reflection_classes(graph_);
  num_classes_ = 1 + *std::max_element(node_class_.begin(), node_class_.end());
  if ((int)params_.classes.size() != num_classes_)
    throw std::invalid_argument("parameter set must carry one class per "
                                "odd-bond component of the graph");
  for (int i = 0; i < graph_.rank; ++i)
    scalars_.push_back(params_.derived(node_class_[i]));

  // Per-edge dihedral engines; the monodromy integrations are independent,
  // so they run concurrently.
  pair_.resize((std::size_t)graph_.rank);
  for (auto& row : pair_) row.resize((std::size_t)graph_.rank);
  std::vector<std::tuple<int, int, std::future<std::unique_ptr<DihedralAlgebra>>>>
      jobs;
  for (int i = 0; i < graph_.rank; ++i) {
    for (int j = i + 1; j < graph_.rank; ++j) {
      const int m = graph_.m[i][j];
      if (m < 3) continue;
      ParameterSet pp;
      pp.kappa = params_.kappa;
      if (m % 2 == 1) {
        pp.classes = {params_.classes[(std::size_t)node_class_[i]]};
      } else {
        pp.classes = {params_.classes[(std::size_t)node_class_[i]],
                      params_.classes[(std::size_t)node_class_[j]]};
      }
      DihedralAlgebraOptions dopt;
      dopt.kind = opt_.kind;
      dopt.monodromy = opt_.monodromy;
      dopt.max_steps = opt_.max_steps;
      jobs.emplace_back(i, j, std::async(std::launch::async, [m, pp, dopt] {
                          return std::make_unique<DihedralAlgebra>(m, pp, dopt);
                        }));
    }
  }
  for (auto& [i, j, fut] : jobs) pair_[(std::size_t)i][(std::size_t)j] = fut.get();

  // Discover the basis: close the canonical irreducible words under right
  // multiplication by the generators.  Hitting a cap stops the closure and
  // leaves a partial algebra marked incomplete.
  admit({});
  try {
    for (std::size_t at = 0; at < basis_.size(); ++at) {
      Word w = basis_[at];
      for (int i = 0; i < graph_.rank; ++i) {
        Word wx = w;
        wx.push_back(xg(i));
        normal_form(wx);
        if (opt_.kind != AlgebraKind::Hecke) {
          Word we = w;
          we.push_back(eg(i));
          normal_form(we);
        }
      }
    }
  } catch (const std::runtime_error&) {
    complete_ = false;
  }
  discovering_ = false;
  steps_ = 0;
}

DerivedScalars GeneralAlgebra::node_scalars(int i) const {
  return scalars_[(std::size_t)i];
}

int GeneralAlgebra::basis_index(const Word& w) const {
  auto it = basis_ids_.find(word_key(w));
  return it == basis_ids_.end() ? -1 : it->second;
}

const DihedralAlgebra* GeneralAlgebra::pair_algebra(int i, int j) const {
  if (i > j) std::swap(i, j);
  return pair_[(std::size_t)i][(std::size_t)j].get();
}

int GeneralAlgebra::admit(const Word& w) {
  const std::string key = word_key(w);
  auto it = basis_ids_.find(key);
  if (it != basis_ids_.end()) return it->second;
  if ((int)basis_.size() >= opt_.max_words)
    throw std::runtime_error("discovered-basis cap exceeded");
  const int id = (int)basis_.size();
  basis_.push_back(w);
  basis_ids_.emplace(key, id);
  tensor_ready_ = false;
  return id;
}

Word GeneralAlgebra::to_pair_word(const Word& seg, int i, int j) const {
  Word out;
  out.reserve(seg.size());
  for (const Letter& l : seg) out.push_back({l.kind, l.idx == i ? 0 : 1});
  (void)j;
  return out;
}

Word GeneralAlgebra::from_pair_word(const Word& seg, int i, int j) const {
  Word out;
  out.reserve(seg.size());
  for (const Letter& l : seg) out.push_back({l.kind, l.idx == 0 ? i : j});
  return out;
}

std::optional<std::vector<GeneralAlgebra::Branch>> GeneralAlgebra::greedy_step(
    const Word& w) const {
  const bool degenerate = opt_.kind == AlgebraKind::Degenerate;
  if (opt_.kind == AlgebraKind::Hecke) {
    for (const Letter& l : w)
      if (l.kind == LetterKind::E) return std::vector<Branch>{};
  }
  if (degenerate) {
    for (std::size_t p = 0; p < w.size(); ++p)
      if (w[p].kind == LetterKind::XInv)
        return std::vector<Branch>{{1.0, spliced(w, p, 1, {xg(w[p].idx)})}};
  }
  // Letters on 2-bonds commute; orienting the swap toward the lexicographic
  // minimum keeps sorting terminating and exposes same-node contractions.
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter &a = w[p], &b = w[p + 1];
    if (a.idx != b.idx &&
        graph_.m[(std::size_t)a.idx][(std::size_t)b.idx] == 2 &&
        letter_rank(b) < letter_rank(a)) {
      Word v = w;
      std::swap(v[p], v[p + 1]);
      return std::vector<Branch>{{1.0, std::move(v)}};
    }
  }
  // Cancellation of adjacent inverse pairs.
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter &a = w[p], &b = w[p + 1];
    if (a.idx == b.idx && is_x_kind(a) && is_x_kind(b) && a.kind != b.kind)
      return std::vector<Branch>{{1.0, spliced(w, p, 2, {})}};
  }
  // Absorption by an adjacent idempotent.
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter &a = w[p], &b = w[p + 1];
    if (a.idx != b.idx) continue;
    const int i = a.idx;
    const DerivedScalars& s = scalars_[(std::size_t)i];
    if (a.kind == LetterKind::E && b.kind == LetterKind::E) {
      const cplx c =
          degenerate ? params_.classes[(std::size_t)node_class_[i]].alpha : s.tau;
      return std::vector<Branch>{{c, spliced(w, p, 2, {eg(i)})}};
    }
    if (a.kind == LetterKind::E || b.kind == LetterKind::E) {
      const Letter& x = a.kind == LetterKind::E ? b : a;
      if (!is_x_kind(x)) continue;
      cplx c = 1.0;
      if (!degenerate) c = x.kind == LetterKind::X ? 1.0 / s.l : s.l;
      return std::vector<Branch>{{c, spliced(w, p, 2, {eg(i)})}};
    }
  }
  // Squares.
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter &a = w[p], &b = w[p + 1];
    if (a.idx != b.idx || a.kind != LetterKind::X || b.kind != LetterKind::X)
      continue;
    const int i = a.idx;
    const DerivedScalars& s = scalars_[(std::size_t)i];
    if (degenerate) return std::vector<Branch>{{1.0, spliced(w, p, 2, {})}};
    std::vector<Branch> out{{s.q - 1.0 / s.q, spliced(w, p, 2, {xg(i)})},
                            {1.0, spliced(w, p, 2, {})}};
    if (opt_.kind == AlgebraKind::Deformed)
      out.push_back({(1.0 / s.q - s.q) / s.l, spliced(w, p, 2, {eg(i)})});
    return out;
  }
  // Skein expansion of the leftmost inverse letter.
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (w[p].kind != LetterKind::XInv) continue;
    const int i = w[p].idx;
    const DerivedScalars& s = scalars_[(std::size_t)i];
    const cplx dq = 1.0 / s.q - s.q;
    std::vector<Branch> out{{1.0, spliced(w, p, 1, {xg(i)})},
                            {dq, spliced(w, p, 1, {})}};
    if (opt_.kind == AlgebraKind::Deformed)
      out.push_back({-dq, spliced(w, p, 1, {eg(i)})});
    return out;
  }
  return std::nullopt;
}

std::optional<std::vector<GeneralAlgebra::Branch>>
GeneralAlgebra::delegate_step(const Word& w) {
  for (int i = 0; i < graph_.rank; ++i) {
    for (int j = i + 1; j < graph_.rank; ++j) {
      DihedralAlgebra* pa = pair_[(std::size_t)i][(std::size_t)j].get();
      if (!pa) continue;
      std::size_t p = 0;
      while (p < w.size()) {
        if (w[p].idx != i && w[p].idx != j) {
          ++p;
          continue;
        }
        std::size_t e = p;
        while (e < w.size() && (w[e].idx == i || w[e].idx == j)) ++e;
        Word seg(w.begin() + (long)p, w.begin() + (long)e);
        Word mapped = to_pair_word(seg, i, j);
        if (pa->basis_index(mapped) < 0) {
          Element red = pa->normal_form(mapped);
          std::vector<Branch> out;
          for (const auto& [pid, coeff] : red)
            out.push_back({coeff,
                           spliced(w, p, e - p,
                                   from_pair_word(
                                       pa->basis()[(std::size_t)pid], i, j))});
          return out;
        }
        p = e;
      }
    }
  }
  return std::nullopt;
}

std::vector<Word> GeneralAlgebra::moves(const Word& w) const {
  std::vector<Word> out;
  // Commutations across 2-bonds, in both directions: a contraction can need
  // a commuting letter pulled out of a sandwich against the sorted order.
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter &a = w[p], &b = w[p + 1];
    if (a.idx != b.idx &&
        graph_.m[(std::size_t)a.idx][(std::size_t)b.idx] == 2) {
      Word v = w;
      std::swap(v[p], v[p + 1]);
      out.push_back(std::move(v));
    }
  }
  // Braid flips of full alternating positive runs, and — for odd bonds —
  // the transport of a projector through the length m-1 alternating run:
  // [x_i x_j ...]_{m-1} E_i = E_j [x_i x_j ...]_{m-1}.
  for (int i = 0; i < graph_.rank; ++i) {
    for (int j = 0; j < graph_.rank; ++j) {
      if (i == j) continue;
      const int m = graph_.m[(std::size_t)i][(std::size_t)j];
      if (m < 3) continue;
      for (std::size_t p = 0; p + (std::size_t)m <= w.size(); ++p) {
        bool run = true;
        for (int t = 0; t + 1 < m && run; ++t) {
          const Letter& l = w[p + (std::size_t)t];
          run = is_pos_x(l) && l.idx == (t % 2 == 0 ? i : j);
        }
        if (!run) continue;
        const Letter& last = w[p + (std::size_t)m - 1];
        if (is_pos_x(last) && last.idx == ((m - 1) % 2 == 0 ? i : j)) {
          Word v = w;
          for (int t = 0; t < m; ++t)
            v[p + (std::size_t)t] = xg(t % 2 == 0 ? j : i);
          out.push_back(std::move(v));
        }
        if (m % 2 == 1 && last == eg(i)) {
          Word v = w;
          v[p] = eg(j);
          for (int t = 1; t < m; ++t)
            v[p + (std::size_t)t] = xg(t % 2 == 1 ? i : j);
          out.push_back(std::move(v));
        }
      }
      if (m % 2 == 0) continue;
      // Reverse transport: E_j [x_i x_j ...]_{m-1} -> [x_i x_j ...]_{m-1} E_i.
      for (std::size_t p = 0; p + (std::size_t)m <= w.size(); ++p) {
        if (!(w[p] == eg(j))) continue;
        bool run = true;
        for (int t = 1; t < m && run; ++t) {
          const Letter& l = w[p + (std::size_t)t];
          run = is_pos_x(l) && l.idx == (t % 2 == 1 ? i : j);
        }
        if (!run) continue;
        Word v = w;
        for (int t = 0; t + 1 < m; ++t)
          v[p + (std::size_t)t] = xg(t % 2 == 0 ? i : j);
        v[p + (std::size_t)m - 1] = eg(i);
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

Element GeneralAlgebra::combine(const std::vector<Branch>& branches) {
  Element total;
  for (const Branch& br : branches)
    element_axpy(total, normal_form(br.word), br.coeff);
  for (auto it = total.begin(); it != total.end();) {
    if (std::abs(it->second) < 1e-300)
      it = total.erase(it);
    else
      ++it;
  }
  return total;
}

std::optional<std::pair<int, int>> GeneralAlgebra::single_pair(
    const Word& w) const {
  int a = -1, b = -1;
  for (const Letter& l : w) {
    if (l.idx == a || l.idx == b) continue;
    if (a < 0)
      a = l.idx;
    else if (b < 0)
      b = l.idx;
    else
      return std::nullopt;
  }
  if (a < 0) return std::nullopt;
  if (b >= 0) {
    if (a > b) std::swap(a, b);
    if (!pair_[(std::size_t)a][(std::size_t)b]) return std::nullopt;
    return std::make_pair(a, b);
  }
  // One node only: route through the first bond that carries it.
  for (int i = 0; i < graph_.rank; ++i)
    for (int j = i + 1; j < graph_.rank; ++j)
      if (pair_[(std::size_t)i][(std::size_t)j] && (i == a || j == a))
        return std::make_pair(i, j);
  return std::nullopt;
}

Element GeneralAlgebra::normal_form(const Word& w) {
  // The step budget is per request: basis discovery spends one cumulative
  // budget (so a non-terminating closure is cut off), while each top-level
  // reduction afterwards starts fresh instead of wearing the object out.
  if (!discovering_ && depth_ == 0) steps_ = 0;
  const std::string key = word_key(w);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if ((int)w.size() > opt_.max_word_length)
    throw std::runtime_error("rewriting produced an overlong word: " + key);
  if (++steps_ > (discovering_ ? opt_.discovery_steps : opt_.max_steps))
    throw std::runtime_error("rewriting step budget exceeded");
  if (in_flight_.count(key)) throw CycleDetected{key};
  if (++depth_ > 2500) {
    --depth_;
    throw std::runtime_error("rewriting recursion depth exceeded at " + key);
  }
  in_flight_.insert(key);
  try {
    Element result = reduce(w, key);
    in_flight_.erase(key);
    --depth_;
    memo_[key] = result;
    return result;
  } catch (...) {
    in_flight_.erase(key);
    --depth_;
    throw;
  }
}

Element GeneralAlgebra::reduce(const Word& w, const std::string& key) {
  // Words confined to a single bond belong to that bond's dihedral engine:
  // its normal form is exact, so resolving them there keeps the cross-bond
  // search from churning through intra-bond identity loops.
  if (auto pr = single_pair(w)) {
    const auto [i, j] = *pr;
    DihedralAlgebra* pa = pair_[(std::size_t)i][(std::size_t)j].get();
    const Word mapped = to_pair_word(w, i, j);
    if (pa->basis_index(mapped) >= 0) return Element{{admit(w), 1.0}};
    Element total;
    for (const auto& [pid, coeff] : pa->normal_form(mapped))
      element_axpy(
          total,
          normal_form(from_pair_word(pa->basis()[(std::size_t)pid], i, j)),
          coeff);
    return total;
  }
  try {
    if (auto br = greedy_step(w)) return combine(*br);
  } catch (const CycleDetected& c) {
    if (c.key != key) throw;
  }
  try {
    if (auto del = delegate_step(w)) return combine(*del);
  } catch (const CycleDetected& c) {
    if (c.key != key) throw;
  }
  // Orbit search over the invertible moves.
  std::set<std::string> seen{key};
  std::deque<Word> queue{w};
  std::vector<Word> orbit;    // every explored spelling
  std::vector<Word> normals;  // spellings no rule applies to
  std::optional<Element> reduced;
  while (!queue.empty() && !reduced) {
    if ((int)orbit.size() >= opt_.max_orbit) {
      complete_ = false;
      break;
    }
    Word u = queue.front();
    queue.pop_front();
    std::optional<Word> canonical_rewrite;
    bool looped = false;
    if (!(u == w)) {
      if (auto it = memo_.find(word_key(u)); it != memo_.end()) {
        reduced = it->second;
        break;
      }
      try {
        // A single branch with unit coefficient is a canonicalization of
        // an orbit member (a commutation sort, a cancellation, or the pair
        // engine's braid-word choice), not a genuine reduction; fold it
        // into the orbit instead of recursing back into the word being
        // computed.  A genuine reduction from either rule family wins over
        // a canonicalization, so a sorting step cannot shadow a
        // contraction that is only visible in this spelling.
        const auto genuine = [](const std::vector<Branch>& b) {
          return b.size() != 1 || b[0].coeff != 1.0;
        };
        const auto br = greedy_step(u);
        std::optional<std::vector<Branch>> del;
        if (!br || !genuine(*br)) del = delegate_step(u);
        if (br && genuine(*br))
          reduced = combine(*br);
        else if (del && genuine(*del))
          reduced = combine(*del);
        else if (br)
          canonical_rewrite = (*br)[0].word;
        else if (del)
          canonical_rewrite = (*del)[0].word;
      } catch (const CycleDetected& c) {
        if (c.key != key) throw;
        // This spelling only rewrites back into the word being resolved;
        // keep it as an orbit member and move on.
        looped = true;
      }
      if (reduced) break;
    }
    orbit.push_back(u);
    if (canonical_rewrite) {
      std::string vk = word_key(*canonical_rewrite);
      if (seen.insert(std::move(vk)).second)
        queue.push_back(std::move(*canonical_rewrite));
    } else if (!looped) {
      normals.push_back(u);
    }
    for (Word& v : moves(u)) {
      std::string vk = word_key(v);
      if (seen.insert(std::move(vk)).second) queue.push_back(std::move(v));
    }
  }
  if (reduced) return *reduced;
  const Word* canon = &w;
  for (const Word& u : normals)
    if (word_less(u, *canon)) canon = &u;
  const int id = admit(*canon);
  const Element result{{id, 1.0}};
  // Every explored spelling reduces to the same canonical element.
  for (const Word& u : orbit) memo_.emplace(word_key(u), result);
  return result;
}

Element GeneralAlgebra::multiply(const Element& a, const Element& b) {
  Element out;
  for (const auto& [i, ca] : a) {
    for (const auto& [j, cb] : b) {
      Word w = basis_[(std::size_t)i];
      const Word& v = basis_[(std::size_t)j];
      w.insert(w.end(), v.begin(), v.end());
      element_axpy(out, normal_form(w), ca * cb);
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) == 0.0)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

const StructureTensor& GeneralAlgebra::structure_constants() {
  if (!complete_)
    throw std::runtime_error(
        "structure constants require a complete basis; this algebra hit a "
        "discovery cap and holds only a partial spanning set");
  while (!tensor_ready_) {
    const std::size_t n = basis_.size();
    tensor_ready_ = true;  // cleared by admit() if the basis grows
    tensor_.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n && tensor_ready_; ++a) {
      for (std::size_t b = 0; b < n && tensor_ready_; ++b) {
        Word w = basis_[a];
        w.insert(w.end(), basis_[b].begin(), basis_[b].end());
        tensor_[a][b] = normal_form(w);
      }
    }
  }
  return tensor_;
}

double GeneralAlgebra::relation_residual(const Word& lhs, const Word& rhs) {
  Element d = normal_form(lhs);
  element_axpy(d, normal_form(rhs), cplx(-1.0, 0.0));
  return element_norm(d);
}

}  // namespace bmwkz
