#pragma once

#include <string>
#include <vector>

#include "kaehler.hpp"
#include "modules.hpp"

namespace fp {

// M tensor_S Omega^k realized as (M tensor_k ambient-of-Omega^k) modulo the
// balancing subspace { m e_i (x) w  -  m (x) e_i w } together with
// M (x) (relations of Omega^k). Coordinates: (module basis a, omega ambient
// coordinate w) -> a * W + w.
template <class K>
struct TensorSpace {
  int degree = 0;
  int module_dim = 0;
  int omega_ambient = 0;
  QuotientSpace<K> space;

  int amb(int a, int w) const { return a * omega_ambient + w; }
  int dim() const { return space.dim(); }
};

// The Poisson homology chain complex (M tensor_S Omega^k, boundary_k) for a
// right Poisson module M.
template <class K>
class TensorComplex {
 public:
  TensorComplex(const OmegaComplex<K>& omega, const PoissonModule<K>& m)
      : omega_(omega), m_(m), spaces_(omega.algebra().nvars() + 2), boundaries_(omega.algebra().nvars() + 2) {
    require_internal(m.side == Side::right, "TensorComplex: homology needs a right module");
  }

  const Algebra<K>& algebra() const { return omega_.algebra(); }
  const OmegaComplex<K>& omega() const { return omega_; }
  const PoissonModule<K>& module() const { return m_; }
  int top_degree() const { return algebra().nvars(); }

  const TensorSpace<K>& space(int k) const {
    int kk = std::min(k, top_degree() + 1);
    if (!spaces_[kk]) spaces_[kk] = build_space(kk);
    return *spaces_[kk];
  }

  // Matrix of boundary_k from space(k) to space(k-1) on the chosen bases.
  // Construction asserts well-definedness: the ambient-level formula must map
  // the balancing subspace of degree k into the one of degree k-1.
  const Mat<K>& boundary(int k) const {
    require_internal(k >= 1, "boundary: degree must be >= 1");
    int kk = std::min(k, top_degree() + 1);
    if (!boundaries_[kk]) boundaries_[kk] = build_boundary(kk);
    return *boundaries_[kk];
  }

  // Ambient-level boundary applied to one ambient basis coordinate (a, (g, b)):
  // rewrite m (x) (s dx_I) as (m s) (x) dx_I, then apply the boundary display
  // with the generators x_i, i in I, as arguments. Output is sparse entries
  // in the ambient of degree k-1 (entries may repeat; they accumulate).
  std::vector<std::pair<int, K>> boundary_ambient(int k, int a, int g, int b) const {
    const OmegaModule<K>&ok = omega_.module(k), &olow = omega_.module(k - 1), &o1 = omega_.module(1);
    const TensorSpace<K>& tlow = space(k - 1);
    std::vector<std::pair<int, K>> out;
    const Subset& I = ok.gens[g];
    Vec<K> ms = m_.act[b].col(a);  // (m s) as module coordinates

    // sum_i (-1)^(i+1) {m, a_i}_M (x) dx_(I \ i)
    for (std::size_t pos = 0; pos < I.size(); ++pos) {
      Vec<K> br = m_.brk[algebra().gen_basis[I[pos]]].apply(ms);
      Subset rest;
      for (std::size_t q = 0; q < I.size(); ++q)
        if (q != pos) rest.push_back(I[q]);
      int gl = olow.gen_index.at(rest);
      bool neg = pos % 2 == 1;  // (-1)^(i+1) with i = pos+1
      for (int a2 = 0; a2 < m_.dim; ++a2) {
        if (k_is_zero(br[a2])) continue;
        out.emplace_back(tlow.amb(a2, olow.amb(gl, 0)), neg ? -br[a2] : br[a2]);
      }
    }

    // sum_{i<j} (-1)^(i+j) m (x) d{a_i, a_j} ^ dx_(I \ {i,j})
    for (std::size_t pi = 0; pi < I.size(); ++pi)
      for (std::size_t pj = pi + 1; pj < I.size(); ++pj) {
        const Vec<K>& w = algebra().brk[algebra().gen_basis[I[pi]]][algebra().gen_basis[I[pj]]];
        if (vec_is_zero(w)) continue;
        Subset rest;
        for (std::size_t q = 0; q < I.size(); ++q)
          if (q != pi && q != pj) rest.push_back(I[q]);
        Vec<K> dw = omega_.d_element_ambient(w);
        bool neg = (pi + pj + 2) % 2 == 1;  // (-1)^(i+j), i = pi+1, j = pj+1
        for (int t = 0; t < algebra().nvars(); ++t) {
          auto [merged, sign] = merge_sign(Subset{t}, rest);
          if (sign == 0) continue;
          int gl = olow.gen_index.at(merged);
          for (int rb = 0; rb < algebra().dim(); ++rb) {
            const K& dc = dw[o1.amb(t, rb)];
            if (k_is_zero(dc)) continue;
            for (int a2 = 0; a2 < m_.dim; ++a2) {
              if (k_is_zero(ms[a2])) continue;
              K c = ms[a2] * dc;
              if ((sign < 0) != neg) c = -c;
              out.emplace_back(tlow.amb(a2, olow.amb(gl, rb)), std::move(c));
            }
          }
        }
      }
    return out;
  }

 private:
  std::unique_ptr<TensorSpace<K>> build_space(int k) const {
    const OmegaModule<K>& ok = omega_.module(k);
    const Algebra<K>& s = algebra();
    auto t = std::make_unique<TensorSpace<K>>();
    t->degree = k;
    t->module_dim = m_.dim;
    t->omega_ambient = ok.ambient_dim();
    t->space = QuotientSpace<K>(m_.dim * ok.ambient_dim());

    // balancing vectors m e_i (x) w - m (x) e_i w; the pass over the unit
    // coordinates w = (g, 1) goes first so later vectors reduce through
    // short chains (pure insertion-order tuning, the span is unchanged)
    std::vector<std::pair<int, K>> entries;
    auto balance = [&](int a, int i, int g, int b) {
      entries.clear();
      int w = ok.amb(g, b);
      for (int a2 = 0; a2 < m_.dim; ++a2) {
        const K& c = m_.act[i].at(a2, a);
        if (!k_is_zero(c)) entries.emplace_back(t->amb(a2, w), c);
      }
      int prod = s.mult_idx[i][b];
      if (prod >= 0) entries.emplace_back(t->amb(a, ok.amb(g, prod)), K(-1));
      if (!entries.empty()) t->space.insert_relation_sparse(entries);
    };
    for (int g = 0; g < static_cast<int>(ok.gens.size()); ++g)
      for (int a = 0; a < m_.dim; ++a)
        for (int i = 0; i < s.dim(); ++i) balance(a, i, g, 0);
    for (int a = 0; a < m_.dim; ++a)
      for (int i = 0; i < s.dim(); ++i)
        for (int g = 0; g < static_cast<int>(ok.gens.size()); ++g)
          for (int b = 1; b < s.dim(); ++b) balance(a, i, g, b);
    // M (x) (relations of Omega^k)
    for (int a = 0; a < m_.dim; ++a)
      for (const auto& row : ok.space.relations().rows()) {
        entries.clear();
        for (const auto& [w, val] : row.entries) entries.emplace_back(t->amb(a, w), val);
        t->space.insert_relation_sparse(entries);
      }
    t->space.seal();
    return t;
  }

  std::unique_ptr<Mat<K>> build_boundary(int k) const {
    const TensorSpace<K>&tk = space(k), &tlow = space(k - 1);
    const OmegaModule<K>& ok = omega_.module(k);
    auto mat = std::make_unique<Mat<K>>(tlow.dim(), tk.dim());

    const int omega_amb = ok.ambient_dim();
    std::vector<std::unique_ptr<std::vector<std::pair<int, K>>>> memo(tk.space.ambient_dim());
    auto image_of = [&](int coord) -> const std::vector<std::pair<int, K>>& {
      if (!memo[coord]) {
        int a = coord / omega_amb, w = coord % omega_amb;
        memo[coord] = std::make_unique<std::vector<std::pair<int, K>>>(
            boundary_ambient(k, a, w / algebra().dim(), w % algebra().dim()));
      }
      return *memo[coord];
    };

    Vec<K> scratch(tlow.space.ambient_dim(), K(0));
    std::vector<int> touched;
    auto accumulate = [&](int coord, const K& c) {
      for (const auto& [idx, val] : image_of(coord)) {
        if (k_is_zero(scratch[idx])) touched.push_back(idx);
        scratch[idx] += c * val;
      }
    };
    auto project_scratch = [&]() {
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      Vec<K> amb(tlow.space.ambient_dim(), K(0));
      for (int idx : touched) std::swap(amb[idx], scratch[idx]);
      touched.clear();
      return tlow.space.project(amb);
    };

    for (int c = 0; c < tk.dim(); ++c) {
      accumulate(tk.space.basis_cols()[c], K(1));
      Vec<K> img = project_scratch();
      for (int r = 0; r < tlow.dim(); ++r) mat->at(r, c) = std::move(img[r]);
    }
    // Well-definedness: the theory guarantees the balancing subspace maps
    // into the lower balancing subspace; assert it.
    for (const auto& row : tk.space.relations().rows()) {
      for (const auto& [w, val] : row.entries) accumulate(w, val);
      if (!vec_is_zero(project_scratch()))
        bug("boundary: ambient formula does not descend to the quotient");
    }
    return mat;
  }

  const OmegaComplex<K>& omega_;
  const PoissonModule<K>& m_;
  mutable std::vector<std::unique_ptr<TensorSpace<K>>> spaces_;
  mutable std::vector<std::unique_ptr<Mat<K>>> boundaries_;
};

// Rendered homology report: per-degree dimensions and representative cycles.
template <class K>
struct HomologyResult {
  std::vector<int> dims;                                  // degrees 0..nvars+1
  std::vector<std::vector<std::string>> representatives;  // rendered m (x) dx_I
};

template <class K>
std::string render_tensor(const Algebra<K>& s, const OmegaModule<K>& ok, const TensorSpace<K>& t,
                          const Vec<K>& qcoords) {
  Vec<K> amb = t.space.section(qcoords);
  std::string out;
  for (int a = 0; a < t.module_dim; ++a)
    for (int g = 0; g < static_cast<int>(ok.gens.size()); ++g)
      for (int b = 0; b < s.dim(); ++b) {
        const K& c = amb[t.amb(a, ok.amb(g, b))];
        if (k_is_zero(c)) continue;
        Vec<K> contrib = s.zero();
        contrib[a] = c;
        std::string coef = s.render(contrib);
        std::string mono = render_monomial(s.basis[b], s.vars);
        std::string form = mono == "1" ? "" : mono + (ok.gens[g].empty() ? "" : "*");
        for (std::size_t q = 0; q < ok.gens[g].size(); ++q) {
          if (q) form += "∧";
          form += "d" + s.vars[ok.gens[g][q]];
        }
        if (form.empty()) form = "1";
        if (!out.empty()) out += " + ";
        out += "(" + coef + ")⊗" + form;
      }
  return out.empty() ? "0" : out;
}

// Poisson homology HP_*(S, M) of a right module M: per-degree dimensions via
// dim ker(boundary_k) - rank(boundary_(k+1)), with representative cycles.
template <class K>
HomologyResult<K> poisson_homology(const TensorComplex<K>& complex) {
  const Algebra<K>& s = complex.algebra();
  const int top = complex.top_degree();
  HomologyResult<K> out;
  for (int k = 0; k <= top + 1; ++k) {
    const int dk = complex.space(k).dim();
    Mat<K> d_out = k == 0 ? Mat<K>(0, dk) : complex.boundary(k);
    Mat<K> d_in = k >= top + 1 ? Mat<K>(dk, 0) : complex.boundary(k + 1);
    HomologySlot<K> slot = homology_dim(d_in, d_out);
    out.dims.push_back(slot.dim);
    std::vector<std::string> reps;
    for (const auto& r : slot.representatives)
      reps.push_back(render_tensor(s, complex.omega().module(k), complex.space(k), r));
    out.representatives.push_back(std::move(reps));
  }
  return out;
}

}  // namespace fp
