#pragma once

#include <utility>
#include <vector>

#include "matrix.hpp"

namespace fp {

// Finite-dimensional quotient (ambient space)/(relation subspace) with a
// chosen section. The quotient basis is the set of pivot-free coordinates of
// the RREF of the relations, so it is canonical for the relation span.
template <class K>
class QuotientSpace {
 public:
  QuotientSpace() : relations_(0) {}
  explicit QuotientSpace(int ambient_dim) : ambient_(ambient_dim), relations_(ambient_dim) {}

  int ambient_dim() const { return ambient_; }
  int dim() const { return ambient_ - relations_.rank(); }
  const EchelonBasis<K>& relations() const { return relations_; }
  const std::vector<int>& basis_cols() const { return basis_cols_; }

  // Call insert_relation for every spanning vector, then seal().
  bool insert_relation(Vec<K> v) { return relations_.insert(std::move(v)); }
  bool insert_relation_sparse(const std::vector<std::pair<int, K>>& entries) {
    return relations_.insert_sparse(entries);
  }

  void seal() {
    relations_.finalize();
    basis_cols_ = relations_.free_cols();
  }

  // Ambient vector -> quotient coordinates.
  Vec<K> project(const Vec<K>& ambient) const {
    Vec<K> r = relations_.reduce(ambient);
    Vec<K> q(basis_cols_.size());
    for (std::size_t i = 0; i < basis_cols_.size(); ++i) q[i] = std::move(r[basis_cols_[i]]);
    return q;
  }

  // Quotient coordinates -> chosen ambient representative.
  Vec<K> section(const Vec<K>& q) const {
    require_internal(static_cast<int>(q.size()) == dim(), "QuotientSpace::section: dim mismatch");
    Vec<K> v(ambient_, K(0));
    for (std::size_t i = 0; i < basis_cols_.size(); ++i) v[basis_cols_[i]] = q[i];
    return v;
  }

  Mat<K> project_matrix() const {
    Mat<K> p(dim(), ambient_);
    for (int j = 0; j < ambient_; ++j) {
      Vec<K> e(ambient_, K(0));
      e[j] = K(1);
      Vec<K> q = project(e);
      for (int i = 0; i < p.rows; ++i) p.at(i, j) = std::move(q[i]);
    }
    return p;
  }

  Mat<K> section_matrix() const {
    Mat<K> s(ambient_, dim());
    for (int j = 0; j < dim(); ++j) s.at(basis_cols_[j], j) = K(1);
    return s;
  }

 private:
  int ambient_ = 0;
  EchelonBasis<K> relations_;
  std::vector<int> basis_cols_;
};

template <class K>
QuotientSpace<K> make_quotient(int ambient_dim, const std::vector<Vec<K>>& relations) {
  QuotientSpace<K> q(ambient_dim);
  for (const auto& r : relations) q.insert_relation(r);
  q.seal();
  return q;
}

// Homology of a composable pair  . --d_in--> . --d_out--> .
// at the middle space: dim ker(d_out) - rank(d_in), plus representative
// cycles spanning a complement of the image inside the kernel. Cycles are
// reduced against the image (and against earlier representatives) so the
// output is deterministic.
template <class K>
struct HomologySlot {
  int dim = 0;
  std::vector<Vec<K>> representatives;
};

template <class K>
HomologySlot<K> homology_dim(const Mat<K>& d_in, const Mat<K>& d_out) {
  require_internal(d_in.rows == d_out.cols, "homology_dim: shapes not composable");
  if ((d_out * d_in).is_zero() == false)
    throw FpError(errc::internal, "homology_dim: composition of boundaries is nonzero");

  const int mid = d_out.cols;
  std::vector<Vec<K>> cycles = kernel_basis(d_out);
  EchelonBasis<K> seen(mid);
  for (int j = 0; j < d_in.cols; ++j) seen.insert(d_in.col(j));
  const int image_rank = seen.rank();

  HomologySlot<K> out;
  out.dim = static_cast<int>(cycles.size()) - image_rank;
  for (auto& z : cycles) {
    Vec<K> r = seen.reduce(z);
    if (vec_is_zero(r)) continue;
    seen.insert(r);
    out.representatives.push_back(std::move(r));
  }
  require_internal(static_cast<int>(out.representatives.size()) == out.dim,
                   "homology_dim: representative count mismatch");
  return out;
}

}  // namespace fp
