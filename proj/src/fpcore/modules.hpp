#pragma once

#include <vector>

#include "algebra.hpp"

namespace fp {

enum class Side { left, right };

// Finite-dimensional Poisson module. act[i] is the commutative action of the
// basis element e_i; brk[i] is the bracket action, {-, e_i}_M for a right
// module and {e_i, -}_M for a left one. Both extend bilinearly in the algebra
// argument.
template <class K>
struct PoissonModule {
  Side side = Side::right;
  int dim = 0;
  std::vector<Mat<K>> act;
  std::vector<Mat<K>> brk;

  Mat<K> act_elem(const Algebra<K>& s, const Vec<K>& v) const {
    Mat<K> out(dim, dim);
    for (int i = 0; i < s.dim(); ++i)
      if (!k_is_zero(v[i])) out = out + act[i].scaled(v[i]);
    return out;
  }
  Mat<K> brk_elem(const Algebra<K>& s, const Vec<K>& v) const {
    Mat<K> out(dim, dim);
    for (int i = 0; i < s.dim(); ++i)
      if (!k_is_zero(v[i])) out = out + brk[i].scaled(v[i]);
    return out;
  }
};

// S as a right Poisson module over itself: act by multiplication,
// brk[s] = {-, s}.
template <class K>
PoissonModule<K> regular_module(const Algebra<K>& s) {
  PoissonModule<K> m;
  m.side = Side::right;
  m.dim = s.dim();
  for (int i = 0; i < s.dim(); ++i) {
    m.act.push_back(s.mult_matrix(i));
    Mat<K> b(s.dim(), s.dim());
    for (int c = 0; c < s.dim(); ++c)
      for (int r = 0; r < s.dim(); ++r) b.at(r, c) = s.brk[c][i][r];
    m.brk.push_back(std::move(b));
  }
  return m;
}

// S as a left Poisson module over itself: brk[s] = {s, -}.
template <class K>
PoissonModule<K> left_regular_module(const Algebra<K>& s) {
  PoissonModule<K> m;
  m.side = Side::left;
  m.dim = s.dim();
  for (int i = 0; i < s.dim(); ++i) {
    m.act.push_back(s.mult_matrix(i));
    Mat<K> b(s.dim(), s.dim());
    for (int c = 0; c < s.dim(); ++c)
      for (int r = 0; r < s.dim(); ++r) b.at(r, c) = s.brk[i][c][r];
    m.brk.push_back(std::move(b));
  }
  return m;
}

// Dual module on M* = Hom_k(M, k) in dual-basis coordinates. For a right
// module M: (s.alpha)(m) = alpha(m.s) and {s, alpha}(m) = alpha({m, s}_M),
// which is transposition of both action families; the side flips. The left
// case mirrors this.
template <class K>
PoissonModule<K> dual_module(const PoissonModule<K>& m) {
  PoissonModule<K> d;
  d.side = m.side == Side::right ? Side::left : Side::right;
  d.dim = m.dim;
  for (const auto& a : m.act) d.act.push_back(a.transpose());
  for (const auto& b : m.brk) d.brk.push_back(b.transpose());
  return d;
}

// Right Poisson module structure transported through an S-module isomorphism
// sigma: S -> S*, where S* carries the right module structure dual to the
// left regular module:  {m, s}_sigma = sigma^{-1}({sigma(m), s}_{S*}).
// Throws unless sigma is invertible and S-linear.
template <class K>
PoissonModule<K> twisted_module(const Algebra<K>& s, const Mat<K>& sigma) {
  require_internal(sigma.rows == s.dim() && sigma.cols == s.dim(), "twisted_module: bad sigma shape");
  auto inv = inverse(sigma);
  if (!inv) throw FpError(errc::not_frobenius, "sigma is not invertible");
  PoissonModule<K> dual_of_left = dual_module(left_regular_module(s));
  for (int i = 0; i < s.dim(); ++i) {
    if (!(sigma * s.mult_matrix(i) == dual_of_left.act[i] * sigma))
      throw FpError(errc::not_frobenius, "sigma is not S-linear");
  }
  PoissonModule<K> m;
  m.side = Side::right;
  m.dim = s.dim();
  for (int i = 0; i < s.dim(); ++i) {
    m.act.push_back(s.mult_matrix(i));
    m.brk.push_back(*inv * dual_of_left.brk[i] * sigma);
  }
  return m;
}

// The four Poisson-module axioms, checked on all basis pairs.
template <class K>
ValidationReport validate_module(const Algebra<K>& s, const PoissonModule<K>& m) {
  ValidationReport rep;
  const int n = s.dim();
  const bool right = m.side == Side::right;

  {
    auto& c = rep.add("module_action");
    if (!(m.act[0] == Mat<K>::identity(m.dim))) c.pass = false;
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j) {
        Vec<K> prod = s.multiply(s.basis_elem(i), s.basis_elem(j));
        if (!(m.act[i] * m.act[j] == m.act_elem(s, prod))) {
          c.pass = false;
          c.witness = "act(" + s.render(s.basis_elem(i)) + " * " + s.render(s.basis_elem(j)) + ")";
        }
      }
  }
  {
    auto& c = rep.add("lie_action");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j) {
        Mat<K> lhs = right ? m.brk[j] * m.brk[i] - m.brk[i] * m.brk[j]
                           : m.brk[i] * m.brk[j] - m.brk[j] * m.brk[i];
        if (!(lhs == m.brk_elem(s, s.brk[i][j]))) {
          c.pass = false;
          c.witness = "{" + s.render(s.basis_elem(i)) + ", " + s.render(s.basis_elem(j)) + "}";
        }
      }
  }
  {
    // right: {x a, b}_M = {x, b}_M a + x {a, b}
    // left:  {a, x s}_M = {a, x}_M s + x {a, s}
    auto& c = rep.add("compat_product_module");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j) {
        Mat<K> lhs = right ? m.brk[j] * m.act[i] : m.brk[i] * m.act[j];
        Mat<K> rhs = right ? m.act[i] * m.brk[j] + m.act_elem(s, s.brk[i][j])
                           : m.act[j] * m.brk[i] + m.act_elem(s, s.brk[i][j]);
        if (!(lhs == rhs)) {
          c.pass = false;
          c.witness = "pair (" + s.render(s.basis_elem(i)) + ", " + s.render(s.basis_elem(j)) + ")";
        }
      }
  }
  {
    // right: {x, ab}_M = {x, a}_M b + {x, b}_M a
    // left:  {ab, x}_M = a {b, x}_M + b {a, x}_M
    auto& c = rep.add("compat_product_algebra");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j) {
        Vec<K> prod = s.multiply(s.basis_elem(i), s.basis_elem(j));
        Mat<K> rhs = m.act[j] * m.brk[i] + m.act[i] * m.brk[j];
        if (!(m.brk_elem(s, prod) == rhs)) {
          c.pass = false;
          c.witness = "pair (" + s.render(s.basis_elem(i)) + ", " + s.render(s.basis_elem(j)) + ")";
        }
      }
  }
  return rep;
}

}  // namespace fp
