#pragma once

#include "quivmod/rational.hpp"

#include <string>

namespace quivmod {

// Primality check by trial division; moduli in this library are small.
bool is_prime(i64 n);

// An element of the prime field F_p. The modulus travels with the value so
// generic code (polynomials, matrices) can work over either Q or F_p without
// global state. Mixing moduli is an internal error.
struct Fp {
  i64 v = 0;  // normalized to [0, p)
  i64 p = 0;  // prime modulus

  Fp() = default;
  Fp(i64 value, i64 modulus) : p(modulus) {
    if (modulus < 2) fail(Errc::Internal, "field modulus must be >= 2");
    v = value % modulus;
    if (v < 0) v += modulus;
  }

  bool is_zero() const { return v == 0; }

  friend bool operator==(const Fp& a, const Fp& b) {
    check(a, b);
    return a.v == b.v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    check(a, b);
    i64 s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return raw(s, a.p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    check(a, b);
    i64 s = a.v - b.v;
    if (s < 0) s += a.p;
    return raw(s, a.p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    check(a, b);
    return raw(mulmod(a.v, b.v, a.p), a.p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  Fp operator-() const { return raw(v == 0 ? 0 : p - v, p); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp inv() const;
  Fp pow(Int e) const;

  std::string str() const { return std::to_string(v); }

  static Fp raw(i64 value, i64 modulus) {
    Fp x;
    x.v = value;
    x.p = modulus;
    return x;
  }

 private:
  static void check(const Fp& a, const Fp& b) {
    if (a.p != b.p) fail(Errc::Internal, "mixed field moduli");
  }
  static i64 mulmod(i64 a, i64 b, i64 p);
};

// Field-generic hooks used by Poly<K> and Matrix<K>; the argument supplies the
// modulus when K = Fp and is ignored when K = Rat.
inline Rat f_zero(const Rat&) { return Rat(0); }
inline Rat f_one(const Rat&) { return Rat(1); }
inline bool f_is_zero(const Rat& x) { return x.is_zero(); }
inline Rat f_inv(const Rat& x) {
  if (x.is_zero()) fail(Errc::ZeroInput, "division by zero");
  return Rat(1) / x;
}
inline std::string f_str(const Rat& x) { return rat_str(x); }
inline Rat f_from_int(const Rat&, const Int& n) { return Rat(n); }

inline Fp f_zero(const Fp& x) { return Fp::raw(0, x.p); }
inline Fp f_one(const Fp& x) { return Fp(1, x.p); }
inline bool f_is_zero(const Fp& x) { return x.v == 0; }
inline Fp f_inv(const Fp& x) { return x.inv(); }
inline std::string f_str(const Fp& x) { return x.str(); }
inline Fp f_from_int(const Fp& exemplar, const Int& n) {
  Int r = n % exemplar.p;
  return Fp(r.convert_to<i64>(), exemplar.p);
}

}  // namespace quivmod
