#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fp {

// Error taxonomy. The numeric values double as CLI exit codes.
enum class errc {
  ok = 0,
  check_failed = 1,
  parse_error = 2,
  not_frobenius = 3,
  internal = 4,
};

class FpError : public std::runtime_error {
 public:
  FpError(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Internal invariant failures. These signal implementation bugs, never bad
// user input: the theory guarantees the asserted facts.
[[noreturn]] inline void bug(const std::string& msg) {
  throw FpError(errc::internal, "internal error: " + msg);
}

inline void require_internal(bool ok, const char* msg) {
  if (!ok) bug(msg);
}

inline bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// Working field: Q when p == 0, otherwise GF(p) with p an odd prime.
// Characteristic 2 is rejected globally (skew/alternating diverge there).
struct FieldSpec {
  std::uint64_t p = 0;

  bool rational() const { return p == 0; }
  std::string str() const { return rational() ? "Q" : "F" + std::to_string(p); }
  bool operator==(const FieldSpec&) const = default;

  static FieldSpec q() { return FieldSpec{0}; }
  static FieldSpec gf(std::uint64_t p) {
    if (p == 2) throw FpError(errc::parse_error, "field F2 not supported (characteristic 2)");
    if (!is_odd_prime(p)) throw FpError(errc::parse_error, "field modulus " + std::to_string(p) + " is not an odd prime");
    if (p > (1ull << 31)) throw FpError(errc::parse_error, "field modulus too large");
    return FieldSpec{p};
  }
};

// Exact rational scalar. mpq_class arithmetic keeps canonical form (lowest
// terms, positive denominator) as long as inputs are canonical, so the only
// care point is construction from a raw numerator/denominator pair.
using Rat = mpq_class;

inline Rat rat(long long num, long long den = 1) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

// Element of GF(p). A default-constructed or literal element carries p == 0
// ("modulus not yet attached") and holds a plain signed integer; it reduces
// the first time it meets an attached element. Every scalar that enters from
// input data is constructed attached, so unattached values only ever hold
// small bookkeeping integers (signs, identity entries).
class GFp {
 public:
  GFp() = default;
  GFp(long long v) : raw_(v) {}
  GFp(long long v, std::uint64_t p) : p_(p) { raw_ = reduce(v, p); }

  bool attached() const { return p_ != 0; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return raw_ == 0; }

  friend GFp operator+(const GFp& a, const GFp& b) {
    auto [x, y, p] = align(a, b);
    return p ? GFp(reduce(x + y, p), p) : GFp(x + y);
  }
  friend GFp operator-(const GFp& a, const GFp& b) {
    auto [x, y, p] = align(a, b);
    return p ? GFp(reduce(x - y, p), p) : GFp(x - y);
  }
  friend GFp operator*(const GFp& a, const GFp& b) {
    auto [x, y, p] = align(a, b);
    if (!p) return GFp(x * y);
    return GFp(static_cast<long long>((static_cast<__int128>(x) * y) % static_cast<long long>(p)), p);
  }
  friend GFp operator/(const GFp& a, const GFp& b) { return a * b.inverse(); }
  GFp operator-() const { return GFp(0) - *this; }
  GFp& operator+=(const GFp& o) { return *this = *this + o; }
  GFp& operator-=(const GFp& o) { return *this = *this - o; }
  GFp& operator*=(const GFp& o) { return *this = *this * o; }
  GFp& operator/=(const GFp& o) { return *this = *this / o; }

  friend bool operator==(const GFp& a, const GFp& b) {
    auto [x, y, p] = align(a, b);
    return p ? reduce(x, p) == reduce(y, p) : x == y;
  }
  friend bool operator!=(const GFp& a, const GFp& b) { return !(a == b); }

  GFp inverse() const {
    if (!attached()) {
      if (raw_ == 1 || raw_ == -1) return *this;
      bug("GFp: inverse of unattached non-unit");
    }
    if (raw_ == 0) bug("GFp: division by zero");
    // extended Euclid on (raw_, p)
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(p_), new_r = raw_;
    while (new_r != 0) {
      long long q = r / new_r;
      long long tmp = t - q * new_t; t = new_t; new_t = tmp;
      tmp = r - q * new_r; r = new_r; new_r = tmp;
    }
    require_internal(r == 1, "GFp: modulus not prime");
    return GFp(t, p_);
  }

  std::string str() const {
    if (attached()) return std::to_string(reduce(raw_, p_));
    return std::to_string(raw_);
  }

 private:
  static long long reduce(long long v, std::uint64_t p) {
    long long m = static_cast<long long>(p);
    long long r = v % m;
    return r < 0 ? r + m : r;
  }
  // Returns (a, b, p) with a common modulus (0 when both unattached).
  static std::tuple<long long, long long, std::uint64_t> align(const GFp& a, const GFp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) bug("GFp: mixed moduli");
    std::uint64_t p = a.p_ ? a.p_ : b.p_;
    return {a.raw_, b.raw_, p};
  }

  long long raw_ = 0;
  std::uint64_t p_ = 0;
};

// Uniform scalar hooks used by the templated layers.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static Rat from_int(long long v, const FieldSpec&) { return rat(v); }
  static bool is_zero(const Rat& a) { return sgn(a) == 0; }
  static std::string str(const Rat& a) { return a.get_str(); }
};

template <>
struct scalar_traits<GFp> {
  static GFp from_int(long long v, const FieldSpec& f) { return GFp(v, f.p); }
  static bool is_zero(const GFp& a) { return a.is_zero(); }
  static std::string str(const GFp& a) { return a.str(); }
};

template <class K>
bool k_is_zero(const K& a) {
  return scalar_traits<K>::is_zero(a);
}

template <class K>
std::string k_str(const K& a) {
  return scalar_traits<K>::str(a);
}

template <class K>
K k_int(long long v, const FieldSpec& f) {
  return scalar_traits<K>::from_int(v, f);
}

}  // namespace fp
