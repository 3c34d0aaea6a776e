#pragma once

#include <vector>

#include "algebra.hpp"

namespace fp {

// Nondegenerate associative pairing <a, b> = lambda(a b) on a
// finite-dimensional commutative algebra, with sigma: S -> S* (dual-basis
// coordinates: the Gram matrix itself) and its inverse.
template <class K>
struct FrobeniusForm {
  Vec<K> lambda;
  Mat<K> gram;
  Mat<K> gram_inv;

  K lambda_of(const Vec<K>& v) const {
    K out(0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!k_is_zero(v[i])) out += lambda[i] * v[i];
    return out;
  }

  K pair(const Algebra<K>& s, const Vec<K>& a, const Vec<K>& b) const {
    return lambda_of(s.multiply(a, b));
  }
};

struct FrobeniusSpec {
  bool socle = true;
  std::vector<std::pair<Exps, long long>> terms;

  static FrobeniusSpec from_presentation(const Presentation& p) {
    return FrobeniusSpec{p.frobenius_socle, p.frobenius_terms};
  }
};

// Builds the pairing from `socle` (coefficient of the unique maximal standard
// monomial) or an explicit functional. Throws errc::not_frobenius when the
// socle monomial is not unique or the Gram matrix is singular.
template <class K>
FrobeniusForm<K> frobenius_form(const Algebra<K>& s, const FrobeniusSpec& spec) {
  FrobeniusForm<K> f;
  f.lambda = s.zero();
  if (spec.socle) {
    std::vector<int> maximal;
    for (int i = 0; i < s.dim(); ++i) {
      bool is_max = true;
      for (int j = 0; j < s.dim() && is_max; ++j)
        if (j != i && divides(s.basis[i], s.basis[j])) is_max = false;
      if (is_max) maximal.push_back(i);
    }
    if (maximal.size() != 1)
      throw FpError(errc::not_frobenius,
                    "socle functional needs a unique maximal standard monomial; found " +
                        std::to_string(maximal.size()));
    f.lambda[maximal[0]] = K(1);
  } else {
    for (const auto& [mono, coef] : spec.terms) {
      int idx = s.monomial_index(mono);
      if (idx < 0)
        throw FpError(errc::not_frobenius,
                      "frobenius functional names monomial " + render_monomial(mono, s.vars) +
                          " which is zero in the quotient");
      f.lambda[idx] += s.from_int(coef);
    }
  }

  f.gram = Mat<K>(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      int k = s.mult_idx[i][j];
      if (k >= 0) f.gram.at(i, j) = f.lambda[k];
    }
  // Symmetry and associativity are structural for lambda(abc); asserted.
  require_internal(f.gram == f.gram.transpose(), "frobenius: gram not symmetric");
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      for (int k = 0; k < s.dim(); ++k) {
        int ij = s.mult_idx[i][j], jk = s.mult_idx[j][k];
        K left = ij >= 0 ? f.gram.at(ij, k) : K(0);
        K right = jk >= 0 ? f.gram.at(i, jk) : K(0);
        require_internal(left == right, "frobenius: pairing not associative");
      }

  auto inv = inverse(f.gram);
  if (!inv)
    throw FpError(errc::not_frobenius, "pairing is degenerate: algebra is not Frobenius with this functional");
  f.gram_inv = std::move(*inv);
  return f;
}

}  // namespace fp
