#pragma once

#include "quivmod/fp.hpp"
#include "quivmod/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace quivmod {

// Univariate polynomial over a field K (K = Rat or Fp). Coefficients are
// stored constant term first with trailing zeros stripped. Every polynomial
// carries a zero exemplar of K so that F_p polynomials know their modulus.
template <class K>
class Poly {
 public:
  explicit Poly(const K& zero) : zero_(f_zero(zero)) {}
  Poly(const K& zero, std::vector<K> coeffs) : zero_(f_zero(zero)), c_(std::move(coeffs)) {
    trim();
  }

  static Poly constant(const K& value) {
    Poly p(value);
    p.c_.push_back(value);
    p.trim();
    return p;
  }
  // The monomial c * t^k.
  static Poly monomial(const K& c, int k) {
    Poly p(c);
    if (!f_is_zero(c)) {
      p.c_.assign(static_cast<size_t>(k) + 1, f_zero(c));
      p.c_.back() = c;
    }
    return p;
  }

  const K& zero_exemplar() const { return zero_; }
  const std::vector<K>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const K& coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero_;
    return c_[static_cast<size_t>(k)];
  }
  const K& leading() const {
    if (is_zero()) fail(Errc::ZeroInput, "leading coefficient of the zero polynomial");
    return c_.back();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.zero_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    Poly r(zero_);
    r.c_.reserve(c_.size());
    for (const K& c : c_) r.c_.push_back(-c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.zero_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const K& s, const Poly& a) {
    Poly r(a.zero_);
    if (f_is_zero(s)) return r;
    r.c_.reserve(a.c_.size());
    for (const K& c : a.c_) r.c_.push_back(s * c);
    r.trim();
    return r;
  }

  Poly derivative() const {
    Poly r(zero_);
    for (int k = 1; k <= degree(); ++k)
      r.c_.push_back(f_from_int(zero_, Int(k)) * c_[static_cast<size_t>(k)]);
    r.trim();
    return r;
  }

  K eval(const K& x) const {
    K acc = zero_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // p(t + c), exact Taylor shift via Horner on (t + c).
  Poly shift(const K& c) const {
    Poly t_plus_c(zero_, {c, f_one(zero_)});
    Poly acc(zero_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t_plus_c + constant(*it);
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return f_inv(leading()) * *this;
  }

 private:
  void trim() {
    while (!c_.empty() && f_is_zero(c_.back())) c_.pop_back();
  }

  K zero_;
  std::vector<K> c_;
};

template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) fail(Errc::ZeroInput, "polynomial division by zero");
  Poly<K> q(a.zero_exemplar());
  Poly<K> r = a;
  K lb_inv = f_inv(b.leading());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    K c = r.leading() * lb_inv;
    int k = r.degree() - b.degree();
    Poly<K> term = Poly<K>::monomial(c, k);
    q = q + term;
    r = r - term * b;
  }
  return {q, r};
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = poly_divmod(a, b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

template <class K>
Poly<K> poly_pow(const Poly<K>& a, int e) {
  Poly<K> acc = Poly<K>::constant(f_one(a.zero_exemplar()));
  for (int i = 0; i < e; ++i) acc = acc * a;
  return acc;
}

template <class K>
Poly<K> poly_powmod(Poly<K> base, Int e, const Poly<K>& mod) {
  Poly<K> acc = Poly<K>::constant(f_one(base.zero_exemplar()));
  base = poly_divmod(base, mod).second;
  while (e > 0) {
    if ((e & 1) != 0) acc = poly_divmod(acc * base, mod).second;
    base = poly_divmod(base * base, mod).second;
    e >>= 1;
  }
  return acc;
}

using RatPoly = Poly<Rat>;

inline RatPoly rp() { return RatPoly(Rat(0)); }
inline RatPoly rp(std::vector<Rat> coeffs) { return RatPoly(Rat(0), std::move(coeffs)); }

// Lexicographic comparison from the top coefficient down: returns the sign of
// (a - b) where polynomials are ordered by highest differing coefficient.
int lex_compare(const RatPoly& a, const RatPoly& b);
inline int lex_sign(const RatPoly& a) { return a.is_zero() ? 0 : sgn(a.leading()); }

// sigma(p, q) = p q' - p' q; its lex sign decides the Gieseker preorder.
RatPoly sigma_poly(const RatPoly& p, const RatPoly& q);

enum class GiesekerOrder { StrictlyLess, Equivalent, StrictlyGreater };
const char* gieseker_order_name(GiesekerOrder o);

// Admissible inputs: nonzero with positive leading coefficient.
void require_admissible(const RatPoly& p);

// Route 1: sign of sigma(p, q).
GiesekerOrder gieseker_by_sigma(const RatPoly& p, const RatPoly& q);
// Route 2: degree comparison, then lex comparison of leading-normalized polynomials.
GiesekerOrder gieseker_by_degree_profile(const RatPoly& p, const RatPoly& q);
// Route 3: cross-scaled lex comparison b_m p <=> a_m q with m = deg p, valid
// when deg p >= deg q; for deg p < deg q it is applied to the swapped pair.
GiesekerOrder gieseker_by_cross_scaling(const RatPoly& p, const RatPoly& q);

// Production comparator: the sigma route; debug builds cross-check all routes.
GiesekerOrder gieseker_compare(const RatPoly& p, const RatPoly& q);

bool is_proportional(const RatPoly& p, const RatPoly& q);

// Pretty printer, e.g. "-2t+1", "(3/2)t^2+3t", "0".
std::string poly_str(const RatPoly& p, const std::string& var = "t");
std::string poly_str(const Poly<Fp>& p, const std::string& var = "x");

}  // namespace quivmod
