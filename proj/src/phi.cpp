#include "bmwkz/phi.hpp"

#include <stdexcept>

namespace bmwkz {

std::string word_key(const Word& w) {
  std::string key;
  key.reserve(3 * w.size());
  for (const Letter& l : w) {
    switch (l.kind) {
      case LetterKind::X: key += 'x'; break;
      case LetterKind::XInv: key += 'y'; break;
      case LetterKind::E: key += 'e'; break;
    }
    key += std::to_string(l.idx);
    key += ';';
  }
  return key;
}

PhiOracle::PhiOracle(std::vector<MatrixXcd> x, std::vector<MatrixXcd> e,
                     std::vector<Eigen::VectorXcd> u,
                     std::vector<Eigen::RowVectorXcd> w)
    : x_(std::move(x)), e_(std::move(e)), u_(std::move(u)), w_(std::move(w)) {
  if (x_.size() != e_.size() || x_.size() != u_.size() ||
      x_.size() != w_.size())
    throw std::invalid_argument("mismatched generator data");
  for (const auto& xi : x_) xinv_.push_back(xi.inverse());
}

PhiOracle::PhiOracle(PhiOracle&& other) noexcept
    : x_(std::move(other.x_)),
      xinv_(std::move(other.xinv_)),
      e_(std::move(other.e_)),
      u_(std::move(other.u_)),
      w_(std::move(other.w_)),
      cache_(std::move(other.cache_)) {}

MatrixXcd PhiOracle::evaluate(const Word& word) const {
  const int n = (int)x_.front().rows();
  MatrixXcd r = MatrixXcd::Identity(n, n);
  for (const Letter& l : word) {
    switch (l.kind) {
      case LetterKind::X: r = r * x_.at(l.idx); break;
      case LetterKind::XInv: r = r * xinv_.at(l.idx); break;
      case LetterKind::E: r = r * e_.at(l.idx); break;
    }
  }
  return r;
}

cplx PhiOracle::phi(int anchor, const Word& word) const {
  std::string key = std::to_string(anchor) + '|' + word_key(word);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Eigen::RowVectorXcd v = w_.at(anchor);
  for (const Letter& l : word) {
    switch (l.kind) {
      case LetterKind::X: v = v * x_.at(l.idx); break;
      case LetterKind::XInv: v = v * xinv_.at(l.idx); break;
      case LetterKind::E: v = v * e_.at(l.idx); break;
    }
  }
  cplx result = v * u_.at(anchor);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::move(key), result);
  return result;
}

cplx PhiOracle::cross(int left, int right, const Word& word) const {
  Eigen::RowVectorXcd v = w_.at(left) * evaluate(word);
  return v * u_.at(right);
}

PhiOracle dihedral_phi_oracle(const Dihedral& d, const ParameterSet& p,
                              const MonodromyOptions& opt) {
  BraidMonodromy bm = braid_monodromy(d, p, opt);
  std::vector<MatrixXcd> x = {bm.t0, bm.t1};
  std::vector<MatrixXcd> e;
  std::vector<Eigen::VectorXcd> u;
  std::vector<Eigen::RowVectorXcd> w;
  for (int i : {0, 1}) {
    ProjectorFactors f =
        extract_projector(i == 0 ? bm.t0 : bm.t1, p.derived(d.class_of(i)));
    e.push_back(std::move(f.e));
    u.push_back(std::move(f.u));
    w.push_back(std::move(f.w));
  }
  return PhiOracle(std::move(x), std::move(e), std::move(u), std::move(w));
}

}  // namespace bmwkz
