#include "presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fp {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw FpError(errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  int line;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_ident(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.i;
  while (c.i < c.s.size() && ident_char(c.s[c.i])) ++c.i;
  if (c.i == start) fail(c.line, "expected identifier");
  return c.s.substr(start, c.i - start);
}

long long read_int(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.i;
  if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
  std::size_t digits = c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == digits) fail(c.line, "expected integer");
  return std::stoll(c.s.substr(start, c.i - start));
}

int var_index(Cursor& c, const std::vector<std::string>& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) fail(c.line, "unknown variable '" + name + "'");
  return static_cast<int>(it - vars.begin());
}

// monomial := '1' | power ('*' power)* ;  power := var ('^' int)?
Exps read_monomial(Cursor& c, const std::vector<std::string>& vars) {
  Exps e(vars.size(), 0);
  if (c.peek() == '1') {
    ++c.i;
    return e;
  }
  while (true) {
    std::string name = read_ident(c);
    int v = var_index(c, vars, name);
    int k = 1;
    if (c.eat('^')) {
      long long kk = read_int(c);
      if (kk < 0) fail(c.line, "negative exponent");
      if (kk > 1'000'000) fail(c.line, "exponent too large");
      k = static_cast<int>(kk);
    }
    e[v] += k;
    if (!c.eat('*')) break;
  }
  return e;
}

// polynomial := ('-')? term (('+'|'-') term)* ; term := int ('*' power)* | monomial
PresPoly read_poly(Cursor& c, const std::vector<std::string>& vars) {
  PresPoly p;
  bool neg = c.eat('-');
  while (true) {
    long long coef = 1;
    Exps e(vars.size(), 0);
    c.skip_ws();
    if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
      coef = read_int(c);
      if (c.eat('*')) {
        Exps m = read_monomial(c, vars);
        for (std::size_t t = 0; t < e.size(); ++t) e[t] += m[t];
      }
    } else {
      e = read_monomial(c, vars);
    }
    if (neg) coef = -coef;
    if (coef != 0) p.terms.emplace_back(coef, e);
    if (c.eat('+')) {
      neg = false;
    } else if (c.eat('-')) {
      neg = true;
    } else {
      break;
    }
  }
  return p;
}

// Combines equal monomials and drops the ones lying in the monomial ideal.
PresPoly normal_form(const PresPoly& p, const std::vector<Exps>& relations) {
  std::map<Exps, long long> acc;
  for (const auto& [coef, e] : p.terms) {
    bool dead = false;
    for (const auto& r : relations)
      if (divides(r, e)) { dead = true; break; }
    if (!dead) acc[e] += coef;
  }
  PresPoly out;
  for (const auto& [e, coef] : acc)
    if (coef != 0) out.terms.emplace_back(coef, e);
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& a, const auto& b) { return deglex_less(a.second, b.second); });
  return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  bool saw_vars = false;
  // raw bracket lines, normal-formed after all relations are known
  std::vector<std::tuple<int, int, int, PresPoly>> raw_brackets;  // line, i, j, poly

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    Cursor c{line, 0, lineno};
    if (c.done()) continue;
    std::string kw = read_ident(c);

    if (kw == "algebra") {
      p.name = read_ident(c);
    } else if (kw == "field") {
      std::string f = read_ident(c);
      if (f == "Q") {
        p.field = FieldSpec::q();
      } else if (f.size() > 1 && f[0] == 'F') {
        p.field = FieldSpec::gf(std::stoull(f.substr(1)));
      } else {
        fail(lineno, "expected field Q or F<p>");
      }
    } else if (kw == "vars") {
      if (saw_vars) fail(lineno, "duplicate vars line");
      while (!c.done()) p.vars.push_back(read_ident(c));
      if (p.vars.empty()) fail(lineno, "vars line lists no variables");
      for (std::size_t i = 0; i < p.vars.size(); ++i)
        for (std::size_t j = i + 1; j < p.vars.size(); ++j)
          if (p.vars[i] == p.vars[j]) fail(lineno, "duplicate variable '" + p.vars[i] + "'");
      saw_vars = true;
    } else if (kw == "rel") {
      if (!saw_vars) fail(lineno, "rel before vars");
      Exps e = read_monomial(c, p.vars);
      if (total_degree(e) == 0) fail(lineno, "relation 1 would make the algebra zero");
      p.relations.push_back(std::move(e));
    } else if (kw == "bracket") {
      if (!saw_vars) fail(lineno, "bracket before vars");
      std::string a = read_ident(c), b = read_ident(c);
      int i = var_index(c, p.vars, a), j = var_index(c, p.vars, b);
      if (i == j) fail(lineno, "bracket of a variable with itself");
      if (!c.eat('=')) fail(lineno, "expected '=' in bracket line");
      PresPoly poly = read_poly(c, p.vars);
      if (i > j) {  // store as {x_i, x_j} with i < j
        std::swap(i, j);
        for (auto& t : poly.terms) t.first = -t.first;
      }
      raw_brackets.emplace_back(lineno, i, j, std::move(poly));
    } else if (kw == "frobenius") {
      c.skip_ws();
      if (!saw_vars) fail(lineno, "frobenius before vars");
      if (c.s.compare(c.i, 5, "socle") == 0 && (c.i + 5 >= c.s.size() || !ident_char(c.s[c.i + 5]))) {
        c.i += 5;
        p.frobenius_socle = true;
      } else {
        p.frobenius_socle = false;
        while (true) {
          Exps e = read_monomial(c, p.vars);
          if (!c.eat(':')) fail(lineno, "expected ':' after monomial in frobenius line");
          long long coef = read_int(c);
          p.frobenius_terms.emplace_back(std::move(e), coef);
          if (!c.eat(',')) break;
        }
      }
    } else {
      fail(lineno, "unknown directive '" + kw + "'");
    }
    if (!c.done()) fail(lineno, "trailing input");
  }

  if (!saw_vars) throw FpError(errc::parse_error, "input defines no variables");

  // Finite dimensionality: the monomial ideal contains a pure power of every
  // variable iff some listed relation is a pure power of it.
  for (int v = 0; v < p.nvars(); ++v) {
    bool bounded = false;
    for (const auto& r : p.relations) {
      if (r[v] == 0) continue;
      bool pure = true;
      for (int w = 0; w < p.nvars(); ++w)
        if (w != v && r[w] != 0) pure = false;
      if (pure) { bounded = true; break; }
    }
    if (!bounded)
      throw FpError(errc::parse_error,
                    "variable '" + p.vars[v] + "' has no pure-power relation (algebra would be infinite dimensional)");
  }

  for (auto& [line, i, j, poly] : raw_brackets) {
    auto key = std::make_pair(i, j);
    if (p.bracket.count(key))
      fail(line, "bracket {" + p.vars[i] + ", " + p.vars[j] + "} given twice");
    p.bracket[key] = normal_form(poly, p.relations);
  }
  return p;
}

std::string render_monomial(const Exps& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

namespace {

std::string render_poly(const PresPoly& p, const std::vector<std::string>& vars) {
  if (p.terms.empty()) return "0";
  std::string out;
  for (const auto& [coef, e] : p.terms) {
    long long c = coef;
    if (out.empty()) {
      if (c < 0) { out += "-"; c = -c; }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    std::string mon = render_monomial(e, vars);
    if (c != 1 || mon == "1") {
      out += std::to_string(c);
      if (mon != "1") out += "*" + mon;
    } else {
      out += mon;
    }
  }
  return out;
}

}  // namespace

std::string emit_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "algebra " << p.name << "\n";
  out << "field " << p.field.str() << "\n";
  out << "vars";
  for (const auto& v : p.vars) out << " " << v;
  out << "\n";
  for (const auto& r : p.relations) out << "rel " << render_monomial(r, p.vars) << "\n";
  for (const auto& [key, poly] : p.bracket)
    out << "bracket " << p.vars[key.first] << " " << p.vars[key.second] << " = "
        << render_poly(poly, p.vars) << "\n";
  if (p.frobenius_socle) {
    out << "frobenius socle\n";
  } else {
    out << "frobenius ";
    for (std::size_t i = 0; i < p.frobenius_terms.size(); ++i) {
      if (i) out << ", ";
      out << render_monomial(p.frobenius_terms[i].first, p.vars) << ":" << p.frobenius_terms[i].second;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fp
