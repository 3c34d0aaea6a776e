// Brute-force reference computations, kept independent of the implementation
// path they check: a plain textbook elimination, a small-model tensor
// quotient for homology dimensions, a skew-multiderivation solver working on
// values over basis tuples, and the multilinear coboundary display evaluated
// on raw value arrays.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fpcore/cohomology.hpp"
#include "fpcore/modules.hpp"

namespace oracle {

using fp::Algebra;
using fp::Exps;
using fp::Rat;
using fp::rat;
using fp::Subset;
using fp::Vec;

// ---- plain textbook elimination (dense, no pivot tricks) ----

inline int naive_rank(std::vector<Vec<Rat>> rows, int cols) {
  int rank = 0;
  for (int c = 0; c < cols; ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (sgn(rows[r][c]) != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      Rat f = rows[r][c] / rows[rank][c];
      for (int j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// ---- sparse echelon for the large multiderivation systems ----

class SparseEchelon {
 public:
  using Row = std::vector<std::pair<int, Rat>>;  // sorted by column

  explicit SparseEchelon(int dim) : dim_(dim), pivot_row_(dim, -1) {}

  bool insert(Row v) {
    while (!v.empty()) {
      int lead = v.front().first;
      int r = pivot_row_[lead];
      if (r < 0) {
        Rat inv = rat(1) / v.front().second;
        for (auto& [c, val] : v) val *= inv;
        pivot_row_[lead] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      v = axpy(v, -v.front().second, rows_[r]);
    }
    return false;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }

  // Kernel of the row system, one basis vector per free column.
  std::vector<Vec<Rat>> kernel() const {
    std::vector<int> pivots;
    for (int c = 0; c < dim_; ++c)
      if (pivot_row_[c] >= 0) pivots.push_back(c);
    std::vector<Vec<Rat>> out;
    for (int f = 0; f < dim_; ++f) {
      if (pivot_row_[f] >= 0) continue;
      Vec<Rat> v(dim_, rat(0));
      v[f] = rat(1);
      for (int pi = static_cast<int>(pivots.size()) - 1; pi >= 0; --pi) {
        const Row& row = rows_[pivot_row_[pivots[pi]]];
        Rat acc(0);
        for (std::size_t t = 1; t < row.size(); ++t) acc += row[t].second * v[row[t].first];
        v[pivots[pi]] = -acc;
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  static Row axpy(const Row& a, const Rat& f, const Row& b) {  // a + f*b
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i >= a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, f * b[j].second);
        ++j;
      } else {
        Rat v = a[i].second + f * b[j].second;
        if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
        ++i, ++j;
      }
    }
    return out;
  }

  int dim_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;
};

// ---- homology dimensions via the small tensor model ----
//
// M (x)_S Omega^k modeled on M^(C(n,k)): one copy of M per generator dx_I,
// relations from m (x) d(f_r)^dx_J pushed through the module action, and the
// boundary display evaluated directly in these coordinates. Dimensions come
// out of subspace ranks only; no quotient bases are ever built.

struct SmallModel {
  std::vector<Subset> gens;
  std::map<Subset, int> gen_index;
  int dim_m = 0;

  int coord(int g, int a) const { return g * dim_m + a; }
  int total() const { return static_cast<int>(gens.size()) * dim_m; }
};

inline SmallModel small_model(const Algebra<Rat>& s, const fp::PoissonModule<Rat>& m, int k) {
  SmallModel out;
  out.gens = fp::all_subsets(s.nvars(), k);
  for (int g = 0; g < static_cast<int>(out.gens.size()); ++g) out.gen_index[out.gens[g]] = g;
  out.dim_m = m.dim;
  return out;
}

inline Vec<Rat> act_monomial(const Algebra<Rat>& s, const fp::PoissonModule<Rat>& m, const Vec<Rat>& v,
                             const Exps& mono) {
  int idx = s.monomial_index(mono);
  if (idx < 0) return Vec<Rat>(m.dim, rat(0));
  return m.act[idx].apply(v);
}

inline std::vector<Vec<Rat>> small_relations(const Algebra<Rat>& s, const fp::PoissonModule<Rat>& m,
                                             const SmallModel& model, int k) {
  std::vector<Vec<Rat>> rels;
  if (k < 1) return rels;
  for (int a = 0; a < m.dim; ++a) {
    Vec<Rat> unit(m.dim, rat(0));
    unit[a] = rat(1);
    for (const auto& rel : s.relations)
      for (const auto& j_set : fp::all_subsets(s.nvars(), k - 1)) {
        Vec<Rat> v(model.total(), rat(0));
        bool nonzero = false;
        for (int t = 0; t < s.nvars(); ++t) {
          if (rel[t] == 0) continue;
          auto [merged, sign] = fp::merge_sign(Subset{t}, j_set);
          if (sign == 0) continue;
          Exps mono = rel;
          mono[t] -= 1;
          Vec<Rat> part = act_monomial(s, m, unit, mono);
          Rat coef = rat(sign * rel[t]);
          for (int c = 0; c < m.dim; ++c)
            if (sgn(part[c]) != 0) {
              v[model.coord(model.gen_index.at(merged), c)] += coef * part[c];
              nonzero = true;
            }
        }
        if (nonzero) rels.push_back(std::move(v));
      }
  }
  return rels;
}

inline Vec<Rat> small_boundary_of(const Algebra<Rat>& s, const fp::PoissonModule<Rat>& m,
                                  const SmallModel& low, const Subset& i_set, int a) {
  Vec<Rat> out(low.total(), rat(0));
  Vec<Rat> unit(m.dim, rat(0));
  unit[a] = rat(1);
  for (std::size_t pos = 0; pos < i_set.size(); ++pos) {
    Vec<Rat> br = m.brk[s.gen_basis[i_set[pos]]].apply(unit);
    Subset rest;
    for (std::size_t q = 0; q < i_set.size(); ++q)
      if (q != pos) rest.push_back(i_set[q]);
    int g = low.gen_index.at(rest);
    Rat sign = (pos % 2 == 0) ? rat(1) : rat(-1);
    for (int c = 0; c < m.dim; ++c)
      if (sgn(br[c]) != 0) out[low.coord(g, c)] += sign * br[c];
  }
  for (std::size_t pi = 0; pi < i_set.size(); ++pi)
    for (std::size_t pj = pi + 1; pj < i_set.size(); ++pj) {
      const Vec<Rat>& w = s.brk[s.gen_basis[i_set[pi]]][s.gen_basis[i_set[pj]]];
      Subset rest;
      for (std::size_t q = 0; q < i_set.size(); ++q)
        if (q != pi && q != pj) rest.push_back(i_set[q]);
      Rat outer = ((pi + pj) % 2 == 0) ? rat(1) : rat(-1);
      for (int b = 0; b < s.dim(); ++b) {
        if (sgn(w[b]) == 0) continue;
        const Exps& beta = s.basis[b];
        for (int t = 0; t < s.nvars(); ++t) {
          if (beta[t] == 0) continue;
          auto [merged, msign] = fp::merge_sign(Subset{t}, rest);
          if (msign == 0) continue;
          Exps gamma = beta;
          gamma[t] -= 1;
          Vec<Rat> part = act_monomial(s, m, unit, gamma);
          Rat coef = outer * w[b] * rat(beta[t] * msign);
          for (int c = 0; c < m.dim; ++c)
            if (sgn(part[c]) != 0) out[low.coord(low.gen_index.at(merged), c)] += coef * part[c];
        }
      }
    }
  return out;
}

// dim HP_k = dim V_k - rank(B_k | R_(k-1)) + rank(R_(k-1)) - rank(B_(k+1) | R_k)
// where B are ambient boundary columns and R the relation spans.
inline std::vector<int> homology_dims(const Algebra<Rat>& s, const fp::PoissonModule<Rat>& m) {
  const int n = s.nvars();
  std::vector<SmallModel> models;
  std::vector<std::vector<Vec<Rat>>> rels;
  std::vector<std::vector<Vec<Rat>>> bnd_cols;  // columns of B_k, living in V_(k-1)
  for (int k = 0; k <= n + 2; ++k) {
    models.push_back(small_model(s, m, k));
    rels.push_back(small_relations(s, m, models[k], k));
  }
  bnd_cols.emplace_back();  // B_0
  for (int k = 1; k <= n + 2; ++k) {
    std::vector<Vec<Rat>> cols;
    for (int g = 0; g < static_cast<int>(models[k].gens.size()); ++g)
      for (int a = 0; a < m.dim; ++a)
        cols.push_back(small_boundary_of(s, m, models[k - 1], models[k].gens[g], a));
    bnd_cols.push_back(std::move(cols));
  }

  auto rank_of = [&](const std::vector<Vec<Rat>>& a, const std::vector<Vec<Rat>>& b, int ambient) {
    std::vector<Vec<Rat>> rows = a;
    rows.insert(rows.end(), b.begin(), b.end());
    if (rows.empty() || ambient == 0) return 0;
    return naive_rank(std::move(rows), ambient);
  };

  std::vector<int> rank_r(n + 3, 0);
  for (int k = 0; k <= n + 2; ++k) rank_r[k] = rank_of(rels[k], {}, models[k].total());

  std::vector<int> dims;
  for (int k = 0; k <= n + 1; ++k) {
    int quotient_dim = models[k].total() - rank_r[k];
    int rank_out = k == 0 ? 0 : rank_of(bnd_cols[k], rels[k - 1], models[k - 1].total()) - rank_r[k - 1];
    int rank_in = rank_of(bnd_cols[k + 1], rels[k], models[k].total()) - rank_r[k];
    dims.push_back(quotient_dim - rank_out - rank_in);
  }
  return dims;
}

// ---- brute-force skew multiderivation solver ----
//
// Unknowns: one value in S per strictly increasing m-tuple of basis indices
// (skew-symmetry determines everything else). Constraints: for every slot,
// every increasing context, and every basis pair i <= j, the derivation rule
//   f(..., e_i e_j, ...) = e_i f(..., e_j, ...) + e_j f(..., e_i, ...).
struct MultiDerivSolution {
  int degree = 0;
  int dim_s = 0;
  std::vector<Subset> tuples;
  std::map<Subset, int> tuple_index;
  std::vector<Vec<Rat>> basis;  // solution vectors, length tuples.size() * dim_s

  int unknown(int t, int c) const { return t * dim_s + c; }

  // (sign, tuple slot) of an argument list with one entry replaced; zero sign
  // when the list has a duplicate.
  std::pair<int, int> lookup(Subset args) const {  // args need not be sorted
    int sign = 1;
    for (std::size_t i = 1; i < args.size(); ++i)
      for (std::size_t j = i; j > 0 && args[j] < args[j - 1]; --j) {
        std::swap(args[j], args[j - 1]);
        sign = -sign;
      }
    for (std::size_t i = 1; i < args.size(); ++i)
      if (args[i] == args[i - 1]) return {0, -1};
    return {sign, tuple_index.at(args)};
  }

  Vec<Rat> value(const Vec<Rat>& sol, const Subset& args) const {
    auto [sign, t] = lookup(args);
    Vec<Rat> out(dim_s, rat(0));
    if (sign == 0) return out;
    for (int c = 0; c < dim_s; ++c) out[c] = sign < 0 ? -sol[unknown(t, c)] : sol[unknown(t, c)];
    return out;
  }
};

inline MultiDerivSolution multideriv_solve(const Algebra<Rat>& s, int degree) {
  MultiDerivSolution out;
  out.degree = degree;
  out.dim_s = s.dim();
  out.tuples = fp::all_subsets(s.dim(), degree);
  for (int t = 0; t < static_cast<int>(out.tuples.size()); ++t) out.tuple_index[out.tuples[t]] = t;
  const int unknowns = static_cast<int>(out.tuples.size()) * s.dim();
  if (degree == 0) {
    for (int c = 0; c < s.dim(); ++c) {
      Vec<Rat> v(unknowns, rat(0));
      v[c] = rat(1);
      out.basis.push_back(std::move(v));
    }
    return out;
  }
  if (out.tuples.empty()) return out;

  // div_idx[i][r] = the unique c with e_i * e_c = e_r, or -1
  std::vector<std::vector<int>> div_idx(s.dim(), std::vector<int>(s.dim(), -1));
  for (int i = 0; i < s.dim(); ++i)
    for (int c = 0; c < s.dim(); ++c) {
      int r = s.mult_idx[i][c];
      if (r >= 0) div_idx[i][r] = c;
    }

  SparseEchelon ech(unknowns);
  // entries of one scalar constraint row, possibly with repeats to combine
  std::vector<std::pair<int, Rat>> entries;
  for (const Subset& ctx : fp::all_subsets(s.dim(), degree - 1))
    for (int slot = 0; slot < degree; ++slot)
      for (int i = 0; i < s.dim(); ++i)
        for (int j = i; j < s.dim(); ++j) {
          auto placed = [&](int v) {
            Subset args;
            args.reserve(degree);
            int k = 0;
            for (int pos = 0; pos < degree; ++pos) {
              if (pos == slot) {
                args.push_back(v);
              } else {
                args.push_back(ctx[k++]);
              }
            }
            return out.lookup(args);
          };
          int prod = s.mult_idx[i][j];
          auto [psign, ptuple] = prod >= 0 ? placed(prod) : std::pair<int, int>{0, -1};
          auto [isign, ituple] = placed(i);
          auto [jsign, jtuple] = placed(j);
          for (int r = 0; r < s.dim(); ++r) {
            entries.clear();
            if (psign != 0) entries.emplace_back(out.unknown(ptuple, r), rat(psign));
            if (jsign != 0 && div_idx[i][r] >= 0)
              entries.emplace_back(out.unknown(jtuple, div_idx[i][r]), rat(-jsign));
            if (isign != 0 && div_idx[j][r] >= 0)
              entries.emplace_back(out.unknown(ituple, div_idx[j][r]), rat(-isign));
            if (entries.empty()) continue;
            std::sort(entries.begin(), entries.end());
            SparseEchelon::Row row;
            for (const auto& [col, val] : entries) {
              if (!row.empty() && row.back().first == col) {
                row.back().second += val;
                if (sgn(row.back().second) == 0) row.pop_back();
              } else {
                row.emplace_back(col, val);
              }
            }
            if (!row.empty()) ech.insert(std::move(row));
          }
        }
  out.basis = ech.kernel();
  return out;
}

// ---- multilinear coboundary display on raw value arrays ----

struct MultiArray {
  int degree = 0;
  MultiDerivSolution shape;  // reused for tuple indexing and skew lookup
  std::vector<Vec<Rat>> vals;

  Vec<Rat> value(const Subset& args) const {
    auto [sign, t] = shape.lookup(args);
    Vec<Rat> out(shape.dim_s, rat(0));
    if (sign == 0) return out;
    for (int c = 0; c < shape.dim_s; ++c) out[c] = sign < 0 ? -vals[t][c] : vals[t][c];
    return out;
  }
};

inline MultiArray make_array_shape(const Algebra<Rat>& s, int degree) {
  MultiArray arr;
  arr.degree = degree;
  arr.shape.degree = degree;
  arr.shape.dim_s = s.dim();
  arr.shape.tuples = fp::all_subsets(s.dim(), degree);
  for (int t = 0; t < static_cast<int>(arr.shape.tuples.size()); ++t)
    arr.shape.tuple_index[arr.shape.tuples[t]] = t;
  arr.vals.assign(arr.shape.tuples.size(), Vec<Rat>(s.dim(), rat(0)));
  return arr;
}

// delta_k(P)(y_0,...,y_k) = sum_i (-1)^i {y_i, P(..., y_i hat, ...)}
//                        + sum_{i<j} (-1)^(i+j) P({y_i, y_j}, ..., hats ...)
inline MultiArray array_delta(const Algebra<Rat>& s, const MultiArray& p) {
  MultiArray out = make_array_shape(s, p.degree + 1);
  for (int t = 0; t < static_cast<int>(out.shape.tuples.size()); ++t) {
    const Subset& y = out.shape.tuples[t];
    Vec<Rat> acc(s.dim(), rat(0));
    for (std::size_t i = 0; i < y.size(); ++i) {
      Subset rest;
      for (std::size_t q = 0; q < y.size(); ++q)
        if (q != i) rest.push_back(y[q]);
      Vec<Rat> inner = p.value(rest);
      Vec<Rat> term = s.bracket(s.basis_elem(y[i]), inner);
      Rat sign = (i % 2 == 0) ? rat(1) : rat(-1);
      for (int c = 0; c < s.dim(); ++c) acc[c] += sign * term[c];
    }
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = i + 1; j < y.size(); ++j) {
        const Vec<Rat>& w = s.brk[y[i]][y[j]];
        Subset rest;
        for (std::size_t q = 0; q < y.size(); ++q)
          if (q != i && q != j) rest.push_back(y[q]);
        Rat outer = ((i + j) % 2 == 0) ? rat(1) : rat(-1);
        for (int b = 0; b < s.dim(); ++b) {
          if (sgn(w[b]) == 0) continue;
          Subset args;
          args.push_back(b);
          for (int rr : rest) args.push_back(rr);
          Vec<Rat> term = p.value(args);
          for (int c = 0; c < s.dim(); ++c) acc[c] += outer * w[b] * term[c];
        }
      }
    out.vals[t] = std::move(acc);
  }
  return out;
}

}  // namespace oracle
