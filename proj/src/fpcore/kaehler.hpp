#pragma once

#include <map>
#include <memory>
#include <vector>

#include "algebra.hpp"
#include "quotient.hpp"

namespace fp {

using Subset = std::vector<int>;  // strictly increasing variable indices

inline std::vector<Subset> all_subsets(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  Subset cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// dx_I ^ dx_J: merged sorted subset and the sign of the merge, or sign 0 when
// the subsets overlap.
inline std::pair<Subset, int> merge_sign(const Subset& lhs, const Subset& rhs) {
  Subset merged;
  merged.reserve(lhs.size() + rhs.size());
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    if (lhs[i] == rhs[j]) return {{}, 0};
    if (lhs[i] < rhs[j]) {
      merged.push_back(lhs[i++]);
    } else {
      // rhs[j] jumps over the remaining lhs entries
      if ((lhs.size() - i) % 2 == 1) sign = -sign;
      merged.push_back(rhs[j++]);
    }
  }
  while (i < lhs.size()) merged.push_back(lhs[i++]);
  while (j < rhs.size()) merged.push_back(rhs[j++]);
  return {merged, sign};
}

// The S-module Omega^k as a presented vector space: ambient = free S-module
// on the generators dx_I (one S-coefficient per generator), relations the
// S-span of d(f_r) ^ dx_J over relation monomials f_r and (k-1)-subsets J.
template <class K>
struct OmegaModule {
  int degree = 0;
  int algebra_dim = 0;
  std::vector<Subset> gens;
  std::map<Subset, int> gen_index;
  QuotientSpace<K> space;

  int ambient_dim() const { return space.ambient_dim(); }
  int dim() const { return space.dim(); }
  int amb(int g, int b) const { return g * algebra_dim + b; }
};

// Differential forms of all degrees over one algebra, with the universal
// differential d, the de Rham differential, and wedge products. Modules are
// built on demand and cached.
template <class K>
class OmegaComplex {
 public:
  explicit OmegaComplex(const Algebra<K>& s) : s_(s), cache_(s.nvars() + 2) {}

  const Algebra<K>& algebra() const { return s_; }
  int top_degree() const { return s_.nvars(); }

  const OmegaModule<K>& module(int k) const {
    require_internal(k >= 0, "OmegaComplex: negative degree");
    if (k > s_.nvars() + 1) k = s_.nvars() + 1;  // all higher degrees are the zero module
    if (!cache_[k]) cache_[k] = build(k);
    return *cache_[k];
  }

  // d of an algebra element, as ambient Omega^1 coordinates:
  // d(x^a) = sum_t a_t x^(a - e_t) dx_t.
  Vec<K> d_element_ambient(const Vec<K>& v) const {
    const OmegaModule<K>& o1 = module(1);
    Vec<K> out(o1.ambient_dim(), K(0));
    for (int b = 0; b < s_.dim(); ++b) {
      if (k_is_zero(v[b])) continue;
      const Exps& e = s_.basis[b];
      for (int t = 0; t < s_.nvars(); ++t) {
        if (e[t] == 0) continue;
        Exps rest = e;
        rest[t] -= 1;
        int rb = s_.monomial_index(rest);
        require_internal(rb >= 0, "d_element: non-standard partial derivative");
        out[o1.amb(t, rb)] += v[b] * s_.from_int(e[t]);
      }
    }
    return out;
  }

  Vec<K> d_element(const Vec<K>& v) const { return module(1).space.project(d_element_ambient(v)); }

  // Ambient-level wedge: Omega^j x Omega^k -> Omega^(j+k).
  Vec<K> wedge_ambient(int j, const Vec<K>& a, int k, const Vec<K>& b) const {
    const OmegaModule<K>&oj = module(j), &ok = module(k), &os = module(j + k);
    Vec<K> out(os.ambient_dim(), K(0));
    if (j + k > s_.nvars()) return out;
    for (int ga = 0; ga < static_cast<int>(oj.gens.size()); ++ga)
      for (int ba = 0; ba < s_.dim(); ++ba) {
        const K& ca = a[oj.amb(ga, ba)];
        if (k_is_zero(ca)) continue;
        for (int gb = 0; gb < static_cast<int>(ok.gens.size()); ++gb) {
          auto [merged, sign] = merge_sign(oj.gens[ga], ok.gens[gb]);
          if (sign == 0) continue;
          int gm = os.gen_index.at(merged);
          for (int bb = 0; bb < s_.dim(); ++bb) {
            const K& cb = b[ok.amb(gb, bb)];
            if (k_is_zero(cb)) continue;
            int prod = s_.mult_idx[ba][bb];
            if (prod < 0) continue;
            K term = ca * cb;
            if (sign < 0) term = -term;
            out[os.amb(gm, prod)] += term;
          }
        }
      }
    return out;
  }

  // Quotient-level wedge of forms.
  Vec<K> wedge(int j, const Vec<K>& a, int k, const Vec<K>& b) const {
    Vec<K> amb = wedge_ambient(j, module(j).space.section(a), k, module(k).space.section(b));
    return module(j + k).space.project(amb);
  }

  // De Rham differential at the ambient level, degree k -> k+1:
  // d(s dx_I) = d(s) ^ dx_I.
  Vec<K> de_rham_ambient(int k, const Vec<K>& amb) const {
    const OmegaModule<K>&ok = module(k), &o1 = module(1), &on = module(k + 1);
    Vec<K> out(on.ambient_dim(), K(0));
    for (int g = 0; g < static_cast<int>(ok.gens.size()); ++g)
      for (int b = 0; b < s_.dim(); ++b) {
        const K& c = amb[ok.amb(g, b)];
        if (k_is_zero(c)) continue;
        Vec<K> ds = d_element_ambient(s_.basis_elem(b));
        for (int t = 0; t < s_.nvars(); ++t)
          for (int rb = 0; rb < s_.dim(); ++rb) {
            const K& dc = ds[o1.amb(t, rb)];
            if (k_is_zero(dc)) continue;
            auto [merged, sign] = merge_sign(Subset{t}, ok.gens[g]);
            if (sign == 0) continue;
            K term = c * dc;
            if (sign < 0) term = -term;
            out[on.amb(on.gen_index.at(merged), rb)] += term;
          }
      }
    return out;
  }

  // De Rham differential on quotient coordinates.
  Vec<K> de_rham(int k, const Vec<K>& form) const {
    return module(k + 1).space.project(de_rham_ambient(k, module(k).space.section(form)));
  }

  // Multiplication by e_i at the ambient level of Omega^k.
  Vec<K> act_ambient(int k, int i, const Vec<K>& v) const {
    const OmegaModule<K>& ok = module(k);
    Vec<K> out(ok.ambient_dim(), K(0));
    for (int g = 0; g < static_cast<int>(ok.gens.size()); ++g)
      for (int b = 0; b < s_.dim(); ++b) {
        const K& c = v[ok.amb(g, b)];
        if (k_is_zero(c)) continue;
        int prod = s_.mult_idx[i][b];
        if (prod >= 0) out[ok.amb(g, prod)] += c;
      }
    return out;
  }

  Mat<K> act_matrix(int k, int i) const {
    const OmegaModule<K>& ok = module(k);
    const int d = ok.dim();
    Mat<K> m(d, d);
    for (int c = 0; c < d; ++c) {
      Vec<K> q(d, K(0));
      q[c] = K(1);
      Vec<K> img = ok.space.project(act_ambient(k, i, ok.space.section(q)));
      for (int r = 0; r < d; ++r) m.at(r, c) = std::move(img[r]);
    }
    return m;
  }

 private:
  std::unique_ptr<OmegaModule<K>> build(int k) const {
    auto o = std::make_unique<OmegaModule<K>>();
    o->degree = k;
    o->algebra_dim = s_.dim();
    o->gens = all_subsets(s_.nvars(), k);
    for (int g = 0; g < static_cast<int>(o->gens.size()); ++g) o->gen_index[o->gens[g]] = g;
    o->space = QuotientSpace<K>(static_cast<int>(o->gens.size()) * s_.dim());

    if (k >= 1) {
      std::vector<std::pair<int, K>> entries;
      for (const auto& rel : s_.relations)
        for (const auto& j_set : all_subsets(s_.nvars(), k - 1))
          for (int b = 0; b < s_.dim(); ++b) {
            entries.clear();
            for (int t = 0; t < s_.nvars(); ++t) {
              if (rel[t] == 0) continue;
              auto [merged, sign] = merge_sign(Subset{t}, j_set);
              if (sign == 0) continue;
              Exps mono = rel;
              mono[t] -= 1;
              for (int u = 0; u < s_.nvars(); ++u) mono[u] += s_.basis[b][u];
              int c = s_.monomial_index(mono);
              if (c < 0) continue;
              entries.emplace_back(o->amb(o->gen_index.at(merged), c), s_.from_int(sign * rel[t]));
            }
            if (!entries.empty()) o->space.insert_relation_sparse(entries);
          }
    }
    o->space.seal();

    // Construction-time sanity: the relation subspace is S-stable and the
    // unit acts as the identity.
    for (const auto& row : o->space.relations().rows()) {
      Vec<K> dense(o->space.ambient_dim(), K(0));
      for (const auto& [w, val] : row.entries) dense[w] = val;
      for (int t = 0; t < s_.nvars(); ++t)
        require_internal(vec_is_zero(o->space.relations().reduce(
                             act_by_amb(*o, s_.gen_basis[t], dense))),
                         "OmegaModule: relations not S-stable");
    }
    return o;
  }

  Vec<K> act_by_amb(const OmegaModule<K>& ok, int i, const Vec<K>& v) const {
    Vec<K> out(ok.ambient_dim(), K(0));
    for (int g = 0; g < static_cast<int>(ok.gens.size()); ++g)
      for (int b = 0; b < s_.dim(); ++b) {
        const K& c = v[ok.amb(g, b)];
        if (k_is_zero(c)) continue;
        int prod = s_.mult_idx[i][b];
        if (prod >= 0) out[ok.amb(g, prod)] += c;
      }
    return out;
  }

  const Algebra<K>& s_;
  mutable std::vector<std::unique_ptr<OmegaModule<K>>> cache_;
};

}  // namespace fp
