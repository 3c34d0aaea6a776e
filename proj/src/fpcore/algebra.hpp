#pragma once

#include <map>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "presentation.hpp"

namespace fp {

struct CheckRow {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<CheckRow> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  CheckRow& add(const std::string& name) {
    checks.push_back({name, true, ""});
    return checks.back();
  }
};

// Finite-dimensional Poisson algebra over K, presented as a monomial-ideal
// quotient of a polynomial ring. The basis consists of the standard monomials
// in degree-lexicographic order (unit first); products of basis monomials are
// again basis monomials or zero, so multiplication is stored as an index
// table. The bracket is stored as the full table {e_i, e_j} obtained by
// extending the generator brackets as a derivation in each argument.
template <class K>
struct Algebra {
  std::string name;
  FieldSpec field;
  std::vector<std::string> vars;
  std::vector<Exps> relations;
  std::vector<Exps> basis;                 // basis[0] = 1
  std::map<Exps, int> index;               // exponent vector -> basis index
  std::vector<int> gen_basis;              // gen_basis[t] = index of x_t
  std::vector<std::vector<int>> mult_idx;  // -1 means the product is 0
  std::vector<std::vector<Vec<K>>> brk;    // brk[i][j] = {e_i, e_j} coordinates

  int dim() const { return static_cast<int>(basis.size()); }
  int nvars() const { return static_cast<int>(vars.size()); }

  K from_int(long long v) const { return k_int<K>(v, field); }

  // Index of a monomial in the quotient: -1 when it lies in the ideal.
  int monomial_index(const Exps& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
  }

  bool in_ideal(const Exps& e) const {
    for (const auto& r : relations)
      if (divides(r, e)) return true;
    return false;
  }

  Vec<K> zero() const { return Vec<K>(dim(), K(0)); }
  Vec<K> unit() const {
    Vec<K> v = zero();
    v[0] = K(1);
    return v;
  }
  Vec<K> basis_elem(int i) const {
    Vec<K> v = zero();
    v[i] = K(1);
    return v;
  }

  Vec<K> multiply(const Vec<K>& a, const Vec<K>& b) const {
    Vec<K> out = zero();
    for (int i = 0; i < dim(); ++i) {
      if (k_is_zero(a[i])) continue;
      for (int j = 0; j < dim(); ++j) {
        if (k_is_zero(b[j])) continue;
        int k = mult_idx[i][j];
        if (k >= 0) out[k] += a[i] * b[j];
      }
    }
    return out;
  }

  Vec<K> bracket(const Vec<K>& a, const Vec<K>& b) const {
    Vec<K> out = zero();
    for (int i = 0; i < dim(); ++i) {
      if (k_is_zero(a[i])) continue;
      for (int j = 0; j < dim(); ++j) {
        if (k_is_zero(b[j])) continue;
        const Vec<K>& v = brk[i][j];
        K c = a[i] * b[j];
        for (int k = 0; k < dim(); ++k)
          if (!k_is_zero(v[k])) out[k] += c * v[k];
      }
    }
    return out;
  }

  // a * x^e for an arbitrary exponent vector (not necessarily standard).
  Vec<K> multiply_by_monomial(const Vec<K>& a, const Exps& e) const {
    Vec<K> out = zero();
    for (int i = 0; i < dim(); ++i) {
      if (k_is_zero(a[i])) continue;
      Exps m = basis[i];
      for (std::size_t t = 0; t < m.size(); ++t) m[t] += e[t];
      int k = monomial_index(m);
      if (k >= 0) out[k] += a[i];
    }
    return out;
  }

  // Multiplication action m -> m * e_i as a matrix.
  Mat<K> mult_matrix(int i) const {
    Mat<K> m(dim(), dim());
    for (int b = 0; b < dim(); ++b) {
      int k = mult_idx[b][i];
      if (k >= 0) m.at(k, b) = K(1);
    }
    return m;
  }

  std::string render(const Vec<K>& v) const {
    std::string out;
    for (int i = 0; i < dim(); ++i) {
      if (k_is_zero(v[i])) continue;
      std::string c = k_str(v[i]);
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c = c.substr(1);
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      std::string mon = render_monomial(basis[i], vars);
      if (c == "1" && mon != "1") {
        out += mon;
      } else {
        out += c;
        if (mon != "1") out += "*" + mon;
      }
    }
    return out.empty() ? "0" : out;
  }
};

namespace detail {

inline Exps Exps_unit(int n, int t) {
  Exps e(n, 0);
  e[t] = 1;
  return e;
}

// {x^a, x^b} in the quotient, by the derivation rule in each argument.
// Values for generator pairs come from the memo table; compound monomials are
// peeled one variable at a time.
template <class K>
Vec<K> extend_bracket(const Algebra<K>& s, std::vector<std::vector<Vec<K>>>& memo, int i, int j) {
  if (!memo[i][j].empty()) return memo[i][j];
  const Exps &a = s.basis[i], &b = s.basis[j];
  Vec<K> out = s.zero();
  const int da = total_degree(a), db = total_degree(b);
  if (da == 0 || db == 0) {
    // derivations kill the unit
  } else if (da > 1) {
    // {x_t a', b} = x_t {a', b} + {x_t, b} a'
    int t = 0;
    while (a[t] == 0) ++t;
    Exps rest = a;
    rest[t] -= 1;
    int ri = s.monomial_index(rest);
    Vec<K> lhs = s.multiply_by_monomial(extend_bracket(s, memo, ri, j), Exps_unit(s.nvars(), t));
    Vec<K> rhs = s.multiply_by_monomial(extend_bracket(s, memo, s.gen_basis[t], j), rest);
    for (int k = 0; k < s.dim(); ++k) out[k] = lhs[k] + rhs[k];
  } else if (db > 1) {
    // {a, x_u b'} = {a, x_u} b' + x_u {a, b'}
    int u = 0;
    while (b[u] == 0) ++u;
    Exps rest = b;
    rest[u] -= 1;
    int ri = s.monomial_index(rest);
    Vec<K> lhs = s.multiply_by_monomial(extend_bracket(s, memo, i, s.gen_basis[u]), rest);
    Vec<K> rhs = s.multiply_by_monomial(extend_bracket(s, memo, i, ri), Exps_unit(s.nvars(), u));
    for (int k = 0; k < s.dim(); ++k) out[k] = lhs[k] + rhs[k];
  }
  memo[i][j] = out;
  return out;
}

}  // namespace detail

template <class K>
Algebra<K> build_algebra(const Presentation& p) {
  Algebra<K> s;
  s.name = p.name;
  s.field = p.field;
  s.vars = p.vars;
  s.relations = p.relations;

  // Standard monomials: exponent vectors not divisible by any relation.
  // Every variable is power-bounded, so the box scan below is finite.
  Exps bound(p.nvars(), 0);
  for (int v = 0; v < p.nvars(); ++v) {
    int best = -1;
    for (const auto& r : p.relations) {
      bool pure = r[v] > 0;
      for (int w = 0; w < p.nvars(); ++w)
        if (w != v && r[w] != 0) pure = false;
      if (pure && (best < 0 || r[v] < best)) best = r[v];
    }
    bound[v] = best;  // x_v^best = 0, so exponents run in [0, best)
  }
  Exps cur(p.nvars(), 0);
  while (true) {
    if (!s.in_ideal(cur)) s.basis.push_back(cur);
    int v = 0;
    while (v < p.nvars()) {
      if (++cur[v] < bound[v]) break;
      cur[v] = 0;
      ++v;
    }
    if (v == p.nvars()) break;
  }
  std::sort(s.basis.begin(), s.basis.end(), deglex_less);
  for (int i = 0; i < s.dim(); ++i) s.index[s.basis[i]] = i;

  s.gen_basis.resize(p.nvars());
  for (int t = 0; t < p.nvars(); ++t) {
    int gi = s.monomial_index(detail::Exps_unit(p.nvars(), t));
    require_internal(gi >= 0, "build_algebra: generator killed by a degree-1 relation");
    s.gen_basis[t] = gi;
  }

  s.mult_idx.assign(s.dim(), std::vector<int>(s.dim(), -1));
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      Exps e = s.basis[i];
      for (int t = 0; t < p.nvars(); ++t) e[t] += s.basis[j][t];
      s.mult_idx[i][j] = s.monomial_index(e);
    }

  // Bracket on generator pairs from the presentation, then the derivation
  // extension to all basis pairs.
  std::vector<std::vector<Vec<K>>> memo(s.dim(), std::vector<Vec<K>>(s.dim()));
  for (int t = 0; t < p.nvars(); ++t)
    for (int u = 0; u < p.nvars(); ++u) {
      Vec<K> val = s.zero();
      if (t != u) {
        auto it = p.bracket.find(std::minmax(t, u));
        if (it != p.bracket.end()) {
          for (const auto& [coef, e] : it->second.terms) {
            int k = s.monomial_index(e);
            if (k >= 0) val[k] += s.from_int(coef);
          }
          if (t > u)
            for (auto& x : val) x = -x;
        }
      }
      memo[s.gen_basis[t]][s.gen_basis[u]] = std::move(val);
    }
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) detail::extend_bracket(s, memo, i, j);
  s.brk = std::move(memo);
  return s;
}

// Axiom sweep: commutativity, associativity, unit, antisymmetry, Leibniz on
// all basis triples, Jacobi on generator triples and on all basis triples,
// and compatibility of the bracket with the defining ideal.
template <class K>
ValidationReport validate_algebra(const Algebra<K>& s) {
  ValidationReport rep;
  const int n = s.dim();

  {
    auto& c = rep.add("commutative");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j)
        if (s.mult_idx[i][j] != s.mult_idx[j][i]) {
          c.pass = false;
          c.witness = s.render(s.basis_elem(i)) + ", " + s.render(s.basis_elem(j));
        }
  }
  {
    auto& c = rep.add("associative");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j)
        for (int k = 0; k < n && c.pass; ++k) {
          Vec<K> l = s.multiply(s.multiply(s.basis_elem(i), s.basis_elem(j)), s.basis_elem(k));
          Vec<K> r = s.multiply(s.basis_elem(i), s.multiply(s.basis_elem(j), s.basis_elem(k)));
          if (!(l == r)) c.pass = false;
        }
  }
  {
    auto& c = rep.add("unit");
    for (int i = 0; i < n && c.pass; ++i)
      if (s.mult_idx[0][i] != i || s.mult_idx[i][0] != i) c.pass = false;
  }
  {
    auto& c = rep.add("antisymmetric");
    for (int i = 0; i < n && c.pass; ++i) {
      if (!vec_is_zero(s.brk[i][i])) { c.pass = false; break; }
      for (int j = 0; j < n && c.pass; ++j) {
        Vec<K> sum = s.brk[i][j];
        for (int k = 0; k < n; ++k) sum[k] += s.brk[j][i][k];
        if (!vec_is_zero(sum)) c.pass = false;
      }
    }
  }
  {
    auto& c = rep.add("leibniz");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j)
        for (int k = 0; k < n && c.pass; ++k) {
          Vec<K> ab = s.multiply(s.basis_elem(i), s.basis_elem(j));
          Vec<K> l = s.bracket(ab, s.basis_elem(k));
          Vec<K> r1 = s.multiply(s.basis_elem(i), s.brk[j][k]);
          Vec<K> r2 = s.multiply(s.brk[i][k], s.basis_elem(j));
          for (int t = 0; t < n; ++t) r1[t] += r2[t];
          if (!(l == r1)) {
            c.pass = false;
            c.witness = "{" + s.render(ab) + ", " + s.render(s.basis_elem(k)) + "}";
          }
        }
  }
  auto jacobiator = [&](const Vec<K>& a, const Vec<K>& b, const Vec<K>& cc) {
    Vec<K> out = s.bracket(a, s.bracket(b, cc));
    Vec<K> t2 = s.bracket(b, s.bracket(cc, a));
    Vec<K> t3 = s.bracket(cc, s.bracket(a, b));
    for (int t = 0; t < n; ++t) out[t] += t2[t] + t3[t];
    return out;
  };
  {
    auto& c = rep.add("jacobi_generators");
    for (int t = 0; t < s.nvars() && c.pass; ++t)
      for (int u = 0; u < s.nvars() && c.pass; ++u)
        for (int v = 0; v < s.nvars() && c.pass; ++v)
          if (!vec_is_zero(jacobiator(s.basis_elem(s.gen_basis[t]), s.basis_elem(s.gen_basis[u]),
                                      s.basis_elem(s.gen_basis[v])))) {
            c.pass = false;
            c.witness = s.vars[t] + ", " + s.vars[u] + ", " + s.vars[v];
          }
  }
  {
    auto& c = rep.add("jacobi_basis");
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j)
        for (int k = 0; k < n && c.pass; ++k)
          if (!vec_is_zero(jacobiator(s.basis_elem(i), s.basis_elem(j), s.basis_elem(k))))
            c.pass = false;
  }
  {
    // {f_r, x_j} must normal-form to 0 for every relation monomial f_r;
    // otherwise the bracket does not descend to the quotient.
    auto& c = rep.add("quotient_compatible");
    for (const auto& r : s.relations)
      for (int u = 0; u < s.nvars() && c.pass; ++u) {
        Vec<K> acc = s.zero();
        for (int t = 0; t < s.nvars(); ++t) {
          if (r[t] == 0) continue;
          Exps rest = r;
          rest[t] -= 1;
          Vec<K> term = s.multiply_by_monomial(s.brk[s.gen_basis[t]][s.gen_basis[u]], rest);
          K coef = s.from_int(r[t]);
          for (int k = 0; k < n; ++k) acc[k] += coef * term[k];
        }
        if (!vec_is_zero(acc)) {
          c.pass = false;
          c.witness = "{" + render_monomial(r, s.vars) + ", " + s.vars[u] + "} = " + s.render(acc);
        }
      }
  }
  return rep;
}

}  // namespace fp
