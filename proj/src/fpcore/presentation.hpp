#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace fp {

// Exponent vector of a monomial; length = number of variables.
using Exps = std::vector<int>;

inline int total_degree(const Exps& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

inline bool divides(const Exps& a, const Exps& b) {  // x^a | x^b
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Degree-lexicographic basis order: lower total degree first; within a
// degree, lexicographically larger exponent vector first (x1 beats x2, so
// x*y precedes y^2).
inline bool deglex_less(const Exps& a, const Exps& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

// Integer-coefficient polynomial as parsed from input; scalars are attached
// to the working field when the algebra is built.
struct PresPoly {
  std::vector<std::pair<long long, Exps>> terms;
};

// Textual description of a monomial-quotient Poisson algebra: generators,
// monomial relations (every variable power-bounded), bracket values on
// generator pairs, and a Frobenius functional.
struct Presentation {
  std::string name = "unnamed";
  FieldSpec field;
  std::vector<std::string> vars;
  std::vector<Exps> relations;
  std::map<std::pair<int, int>, PresPoly> bracket;  // keyed (i, j) with i < j
  bool frobenius_socle = true;
  std::vector<std::pair<Exps, long long>> frobenius_terms;

  int nvars() const { return static_cast<int>(vars.size()); }
};

// Parses the `.fp` format. Throws FpError(errc::parse_error) with a line
// number on malformed input, unknown variables, an unbounded variable, or a
// characteristic-2 field request.
Presentation parse_presentation(const std::string& text);

// Canonical re-emission of a presentation in the same format.
std::string emit_presentation(const Presentation& p);

std::string render_monomial(const Exps& e, const std::vector<std::string>& vars);

}  // namespace fp
