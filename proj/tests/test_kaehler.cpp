#include <doctest.h>

#include <random>

#include "fleet.hpp"
#include "fpcore/kaehler.hpp"

using namespace fp;

namespace {

// Ambient coordinates of s dx_I.
Vec<Rat> form_ambient(const OmegaModule<Rat>& o, const Subset& i_set, int basis_idx) {
  Vec<Rat> v(o.ambient_dim(), rat(0));
  v[o.amb(o.gen_index.at(i_set), basis_idx)] = rat(1);
  return v;
}

Vec<Rat> random_element(std::mt19937_64& rng, const Algebra<Rat>& s) {
  std::uniform_int_distribution<int> num(-3, 3);
  Vec<Rat> v = s.zero();
  for (auto& c : v) c = rat(num(rng));
  return v;
}

}  // namespace

TEST_CASE("Omega^k(Lambda(2,2)) dims are (4, 4, 1, 0)") {
  auto e = fleet::engine(fleet::lambda_ab_text(2, 2));
  const OmegaComplex<Rat>& omega = e.omega();
  CHECK(omega.module(0).dim() == 4);
  CHECK(omega.module(1).dim() == 4);
  CHECK(omega.module(2).dim() == 1);
  CHECK(omega.module(3).dim() == 0);
  CHECK(omega.module(7).dim() == 0);
}

TEST_CASE("Omega^1(Lambda(2,2)) quotient basis is dx, y dx, dy, x dy") {
  auto e = fleet::engine(fleet::lambda_ab_text(2, 2));
  const OmegaModule<Rat>& o1 = e.omega().module(1);
  // ambient layout: (dx: 1,x,y,xy), (dy: 1,x,y,xy); pivot-free columns
  std::vector<int> expected = {o1.amb(0, 0), o1.amb(0, 2), o1.amb(1, 0), o1.amb(1, 1)};
  CHECK(o1.space.basis_cols() == expected);
  // the relations x dx and y dy from d(x^2), d(y^2)
  CHECK(vec_is_zero(o1.space.project(form_ambient(o1, {0}, 1))));  // x dx = 0
  CHECK(vec_is_zero(o1.space.project(form_ambient(o1, {1}, 2))));  // y dy = 0
}

TEST_CASE("Omega^2(Lambda(2,2)) is spanned by dx^dy") {
  auto e = fleet::engine(fleet::lambda_ab_text(2, 2));
  const OmegaModule<Rat>& o2 = e.omega().module(2);
  REQUIRE(o2.dim() == 1);
  CHECK(o2.space.basis_cols()[0] == o2.amb(0, 0));
}

TEST_CASE("d on elements of Lambda(2,2)") {
  auto e = fleet::engine(fleet::lambda_ab_text(2, 2));
  const Algebra<Rat>& s = e.algebra();
  const OmegaModule<Rat>& o1 = e.omega().module(1);

  CHECK(vec_is_zero(e.omega().d_element(s.unit())));
  // d(xy) = y dx + x dy
  Vec<Rat> dxy = e.omega().d_element(s.basis_elem(3));
  Vec<Rat> expected = o1.space.project(form_ambient(o1, {0}, 2));
  Vec<Rat> t2 = o1.space.project(form_ambient(o1, {1}, 1));
  for (std::size_t i = 0; i < expected.size(); ++i) expected[i] += t2[i];
  CHECK(dxy == expected);
  // d(x^2) would be 2x dx, which is a relation: d kills it after reduction
  Vec<Rat> two_x_dx = form_ambient(o1, {0}, 1);
  for (auto& c : two_x_dx) c = c * rat(2);
  CHECK(vec_is_zero(o1.space.project(two_x_dx)));
}

TEST_CASE("d is a derivation on random pairs") {
  std::mt19937_64 rng(31);
  for (const auto& text : {fleet::lambda_n_text(3), fleet::lambda_ab_text(2, 3), fleet::xyz_text()}) {
    auto e = fleet::engine(text);
    const Algebra<Rat>& s = e.algebra();
    for (int t = 0; t < 120; ++t) {
      Vec<Rat> a = random_element(rng, s), b = random_element(rng, s);
      Vec<Rat> lhs = e.omega().d_element(s.multiply(a, b));
      // a db + b da computed through the module action at the ambient level
      Vec<Rat> adb = e.omega().d_element_ambient(b);
      Vec<Rat> bda = e.omega().d_element_ambient(a);
      const OmegaModule<Rat>& o1 = e.omega().module(1);
      Vec<Rat> rhs(o1.ambient_dim(), rat(0));
      for (int g = 0; g < static_cast<int>(o1.gens.size()); ++g)
        for (int bb = 0; bb < s.dim(); ++bb) {
          if (!k_is_zero(adb[o1.amb(g, bb)])) {
            Vec<Rat> prod = s.multiply(a, s.basis_elem(bb));
            for (int c = 0; c < s.dim(); ++c) rhs[o1.amb(g, c)] += adb[o1.amb(g, bb)] * prod[c];
          }
          if (!k_is_zero(bda[o1.amb(g, bb)])) {
            Vec<Rat> prod = s.multiply(b, s.basis_elem(bb));
            for (int c = 0; c < s.dim(); ++c) rhs[o1.amb(g, c)] += bda[o1.amb(g, bb)] * prod[c];
          }
        }
      CHECK(lhs == o1.space.project(rhs));
    }
  }
}

TEST_CASE("de Rham differential: generator cases and d^2 = 0") {
  auto e = fleet::engine(fleet::lambda_ab_text(2, 2));
  const OmegaModule<Rat>&o1 = e.omega().module(1), &o2 = e.omega().module(2);

  // d(x dy) = dx ^ dy
  Vec<Rat> x_dy = o1.space.project(form_ambient(o1, {1}, 1));
  Vec<Rat> img = e.omega().de_rham(1, x_dy);
  CHECK(img == o2.space.project(form_ambient(o2, {0, 1}, 0)));
  // d(dx) = 0
  Vec<Rat> dx = o1.space.project(form_ambient(o1, {0}, 0));
  CHECK(vec_is_zero(e.omega().de_rham(1, dx)));

  for (const auto& text : fleet::fleet_texts()) {
    auto en = fleet::engine(text);
    for (int k = 0; k + 2 <= en.algebra().nvars() + 1; ++k) {
      const OmegaModule<Rat>& ok = en.omega().module(k);
      for (int q = 0; q < ok.dim(); ++q) {
        Vec<Rat> unit(ok.dim(), rat(0));
        unit[q] = rat(1);
        CHECK(vec_is_zero(en.omega().de_rham(k + 1, en.omega().de_rham(k, unit))));
      }
    }
  }
}

TEST_CASE("wedge: pinned examples on Lambda(2,2)") {
  auto e = fleet::engine(fleet::lambda_ab_text(2, 2));
  const OmegaModule<Rat>&o1 = e.omega().module(1), &o2 = e.omega().module(2);
  Vec<Rat> dx = o1.space.project(form_ambient(o1, {0}, 0));
  Vec<Rat> dy = o1.space.project(form_ambient(o1, {1}, 0));
  Vec<Rat> y_dx = o1.space.project(form_ambient(o1, {0}, 2));
  Vec<Rat> x_dy = o1.space.project(form_ambient(o1, {1}, 1));

  // dx ^ dy spans Omega^2
  Vec<Rat> w = e.omega().wedge(1, dx, 1, dy);
  CHECK(w == o2.space.project(form_ambient(o2, {0, 1}, 0)));
  // dx ^ dx = 0
  CHECK(vec_is_zero(e.omega().wedge(1, dx, 1, dx)));
  // (y dx) ^ (x dy) = xy dx^dy = 0 in Omega^2
  CHECK(vec_is_zero(e.omega().wedge(1, y_dx, 1, x_dy)));
}

TEST_CASE("wedge is graded commutative on random pairs") {
  std::mt19937_64 rng(137);
  std::uniform_int_distribution<int> num(-3, 3);
  for (const auto& text : {fleet::lambda_n_text(3), fleet::xyz_text(), fleet::lambda_ab_text(3, 3)}) {
    auto e = fleet::engine(text);
    int n = e.algebra().nvars();
    for (int j = 0; j <= n; ++j)
      for (int k = 0; j + k <= n; ++k) {
        const OmegaModule<Rat>&oj = e.omega().module(j), &ok = e.omega().module(k);
        for (int t = 0; t < 10; ++t) {
          Vec<Rat> a(oj.dim()), b(ok.dim());
          for (auto& c : a) c = rat(num(rng));
          for (auto& c : b) c = rat(num(rng));
          Vec<Rat> ab = e.omega().wedge(j, a, k, b);
          Vec<Rat> ba = e.omega().wedge(k, b, j, a);
          if ((j * k) % 2 == 1)
            for (auto& c : ba) c = -c;
          CHECK(ab == ba);
        }
      }
  }
}

TEST_CASE("wedge is associative on random triples") {
  std::mt19937_64 rng(991);
  std::uniform_int_distribution<int> num(-2, 2);
  auto e = fleet::engine(fleet::lambda_n_text(3));
  for (int t = 0; t < 40; ++t) {
    const OmegaModule<Rat>& o1 = e.omega().module(1);
    Vec<Rat> a(o1.dim()), b(o1.dim()), c(o1.dim());
    for (auto& x : a) x = rat(num(rng));
    for (auto& x : b) x = rat(num(rng));
    for (auto& x : c) x = rat(num(rng));
    Vec<Rat> lhs = e.omega().wedge(2, e.omega().wedge(1, a, 1, b), 1, c);
    Vec<Rat> rhs = e.omega().wedge(1, a, 2, e.omega().wedge(1, b, 1, c));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("module axioms hold on every constructed Omega^k") {
  for (const auto& text : fleet::fleet_texts(false)) {
    auto e = fleet::engine(text);
    const Algebra<Rat>& s = e.algebra();
    const bool small = s.dim() <= 9;
    for (int k = 0; k <= s.nvars() + 1; ++k) {
      const OmegaModule<Rat>& ok = e.omega().module(k);
      if (ok.dim() == 0) continue;
      CHECK(e.omega().act_matrix(k, 0) == Mat<Rat>::identity(ok.dim()));
      // act[e_i] act[e_j] = act[e_i e_j] (0 when the product dies): the
      // generator sweep pins it for everything by multiplicativity; small
      // algebras get the full pair sweep.
      for (int i = 0; i < s.dim(); ++i) {
        if (!small && total_degree(s.basis[i]) != 1) continue;
        for (int j = 0; j < s.dim(); ++j) {
          Mat<Rat> lhs = e.omega().act_matrix(k, i) * e.omega().act_matrix(k, j);
          int prod = s.mult_idx[i][j];
          Mat<Rat> rhs = prod >= 0 ? e.omega().act_matrix(k, prod) : Mat<Rat>(ok.dim(), ok.dim());
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("Omega over GF(3): derivative coefficients can vanish") {
  // d(x^3) = 3x^2 dx = 0 over F3, so Omega^1 of k[x]/(x^3) is larger than
  // over Q: no relation survives.
  Presentation p = parse_presentation("algebra cube\nvars x\nrel x^3\nfrobenius socle\n");
  Engine<Rat> over_q{p};
  CHECK(over_q.omega().module(1).dim() == 2);  // relations x^2 dx
  p.field = FieldSpec::gf(3);
  Engine<GFp> over_f3{p};
  CHECK(over_f3.omega().module(1).dim() == 3);
}
