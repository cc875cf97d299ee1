#include "quivmod/factor.hpp"

#include <algorithm>
#include <map>

namespace quivmod {

namespace {

template <class K>
bool coeff_less(const Poly<K>& a, const Poly<K>& b, bool (*lt)(const K&, const K&)) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k) {
    if (a.coeff(k) == b.coeff(k)) continue;
    return lt(a.coeff(k), b.coeff(k));
  }
  return false;
}

bool fp_lt(const Fp& a, const Fp& b) { return a.v < b.v; }
bool rat_lt(const Rat& a, const Rat& b) { return a < b; }

template <class K>
void sort_factors(std::vector<PolyPower<K>>& fs, bool (*lt)(const K&, const K&)) {
  std::sort(fs.begin(), fs.end(), [&](const PolyPower<K>& x, const PolyPower<K>& y) {
    if (x.base.degree() != y.base.degree()) return x.base.degree() < y.base.degree();
    if (coeff_less(x.base, y.base, lt)) return true;
    if (coeff_less(y.base, x.base, lt)) return false;
    return x.exponent < y.exponent;
  });
}

template <class K>
void add_factor(std::vector<PolyPower<K>>& fs, const Poly<K>& base, int exponent) {
  for (PolyPower<K>& f : fs)
    if (f.base == base) {
      f.exponent += exponent;
      return;
    }
  fs.push_back({base, exponent});
}

// ---------------------------------------------------------------------------
// F_p path
// ---------------------------------------------------------------------------

using FpPoly = Poly<Fp>;

FpPoly x_poly(const Fp& ex) { return FpPoly::monomial(f_one(ex), 1); }

// f with f' = 0 over F_p is g(x^p) = g(x)^p on a prime field (coefficients are
// Frobenius-fixed); returns g.
FpPoly pth_root(const FpPoly& f) {
  i64 p = f.zero_exemplar().p;
  std::vector<Fp> c;
  for (int k = 0; k <= f.degree(); k += static_cast<int>(p)) c.push_back(f.coeff(k));
  return FpPoly(f.zero_exemplar(), std::move(c));
}

// Squarefree decomposition over F_p, multiplicities preserved.
void squarefree_fp(const FpPoly& f, int outer_mult, std::vector<PolyPower<Fp>>& out) {
  if (f.degree() <= 0) return;
  i64 p = f.zero_exemplar().p;
  FpPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_fp(pth_root(f), outer_mult * static_cast<int>(p), out);
    return;
  }
  FpPoly c = poly_gcd(f, d);
  FpPoly w = poly_divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = poly_gcd(w, c);
    FpPoly z = poly_divmod(w, y).first;
    if (z.degree() > 0) add_factor(out, z.monic(), i * outer_mult);
    w = y;
    c = poly_divmod(c, y).first;
    ++i;
  }
  if (c.degree() > 0) squarefree_fp(pth_root(c), outer_mult * static_cast<int>(p), out);
}

FpPoly random_poly_below(int deg_bound, const Fp& ex, std::mt19937_64& rng) {
  std::vector<Fp> c;
  for (int k = 0; k < deg_bound; ++k)
    c.push_back(Fp(static_cast<i64>(rng() % static_cast<uint64_t>(ex.p)), ex.p));
  return FpPoly(ex, std::move(c));
}

Int int_pow(i64 base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Splits a squarefree product of irreducibles all of degree d.
void equal_degree_split(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const Fp ex = f.zero_exemplar();
  i64 p = ex.p;
  FpPoly one = FpPoly::constant(f_one(ex));
  while (true) {
    FpPoly a = random_poly_below(f.degree(), ex, rng);
    if (a.degree() <= 0) continue;
    FpPoly g = poly_gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(poly_divmod(f, g).first.monic(), d, rng, out);
      return;
    }
    FpPoly b(ex);
    if (p == 2) {
      // Trace map: a + a^2 + a^4 + ... + a^(2^(d-1)) mod f.
      FpPoly t = a;
      FpPoly acc = a;
      for (int i = 1; i < d; ++i) {
        t = poly_divmod(t * t, f).second;
        acc = acc + t;
      }
      b = acc;
    } else {
      Int e = (int_pow(p, d) - 1) / 2;
      b = poly_powmod(a, e, f) - one;
    }
    FpPoly g2 = poly_gcd(b, f);
    if (g2.degree() > 0 && g2.degree() < f.degree()) {
      equal_degree_split(g2, d, rng, out);
      equal_degree_split(poly_divmod(f, g2).first.monic(), d, rng, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a squarefree monic f.
void factor_squarefree_fp(FpPoly f, std::mt19937_64& rng, int mult, std::vector<PolyPower<Fp>>& out) {
  const Fp ex = f.zero_exemplar();
  i64 p = ex.p;
  FpPoly x = x_poly(ex);
  FpPoly h = x;  // x^(p^d) mod f, iterated
  int d = 0;
  while (f.degree() > 0 && f.degree() > 2 * d) {
    ++d;
    h = poly_powmod(h, Int(p), f);
    FpPoly g = poly_gcd(h - x, f);
    if (g.degree() > 0) {
      std::vector<FpPoly> parts;
      equal_degree_split(g, d, rng, parts);
      for (const FpPoly& q : parts) add_factor(out, q, mult);
      f = poly_divmod(f, g).first.monic();
      h = poly_divmod(h, f).second;
    }
  }
  if (f.degree() > 0) add_factor(out, f.monic(), mult);
}

}  // namespace

bool is_irreducible(const FpPoly& f) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  const Fp ex = f.zero_exemplar();
  i64 p = ex.p;
  int n = f.degree();
  FpPoly x = x_poly(ex);
  // Rabin: x^(p^n) = x mod f, and gcd(x^(p^(n/r)) - x, f) = 1 for prime r | n.
  FpPoly xn = poly_powmod(x, int_pow(p, n), f);
  if (!(xn == poly_divmod(x, f).second)) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    FpPoly xm = poly_powmod(x, int_pow(p, n / r), f);
    if (poly_gcd(xm - x, f).degree() != 0) return false;
  }
  return true;
}

std::vector<PolyPower<Fp>> factor_poly(const FpPoly& f, std::mt19937_64& rng) {
  if (f.degree() <= 0) return {};
  std::vector<PolyPower<Fp>> squarefree;
  squarefree_fp(f.monic(), 1, squarefree);
  std::vector<PolyPower<Fp>> out;
  for (const PolyPower<Fp>& part : squarefree)
    factor_squarefree_fp(part.base, rng, part.exponent, out);
  sort_factors(out, &fp_lt);
  return out;
}

// ---------------------------------------------------------------------------
// Q path
// ---------------------------------------------------------------------------

namespace {

// Clears denominators and content: primitive integer coefficients.
std::vector<Int> primitive_int_coeffs(const RatPoly& f) {
  Int l = 1;
  for (int k = 0; k <= f.degree(); ++k) l = l / gcd(l, den(f.coeff(k))) * den(f.coeff(k));
  std::vector<Int> c;
  Int content = 0;
  for (int k = 0; k <= f.degree(); ++k) {
    Rat v = Rat(l) * f.coeff(k);
    c.push_back(num(v));
    content = gcd(content, num(v));
  }
  if (content != 0)
    for (Int& v : c) v /= content;
  return c;
}

constexpr i64 kDivisorScanCap = 2'000'000;

// Positive divisors of |n|, or nullopt when |n| is too expensive to scan.
std::optional<std::vector<Int>> divisors(Int n) {
  if (n < 0) n = -n;
  if (n == 0) return std::nullopt;
  std::vector<Int> small, large;
  i64 steps = 0;
  for (Int d = 1; d * d <= n; ++d) {
    if (++steps > kDivisorScanCap) return std::nullopt;
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Yun's squarefree decomposition in characteristic zero.
std::vector<PolyPower<Rat>> squarefree_rat(const RatPoly& f) {
  std::vector<PolyPower<Rat>> out;
  if (f.degree() <= 0) return out;
  RatPoly c = poly_gcd(f, f.derivative());
  RatPoly w = poly_divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    RatPoly y = poly_gcd(w, c);
    RatPoly z = poly_divmod(w, y).first;
    if (z.degree() > 0) add_factor(out, z.monic(), i);
    w = y;
    c = poly_divmod(c, y).first;
    ++i;
  }
  return out;
}

// Strips all rational roots of a squarefree g, appending linear factors.
RatPoly strip_rational_roots(RatPoly g, int mult, std::vector<PolyPower<Rat>>& out) {
  RatPoly x = RatPoly::monomial(Rat(1), 1);
  while (g.degree() > 0 && g.coeff(0).is_zero()) {
    add_factor(out, x, mult);
    g = poly_divmod(g, x).first;
  }
  if (g.degree() <= 0) return g;
  std::vector<Int> ic = primitive_int_coeffs(g);
  auto d0 = divisors(ic.front());
  auto dn = divisors(ic.back());
  if (!d0 || !dn)
    fail(Errc::BudgetExceeded, "rational root scan too large for exact factorization");
  for (const Int& pnum : *d0) {
    for (const Int& qden : *dn) {
      if (gcd(pnum, qden) != 1) continue;
      for (int s : {1, -1}) {
        Rat root = Rat(s * pnum, qden);
        while (g.degree() > 0 && g.eval(root).is_zero()) {
          RatPoly lin = rp({-root, Rat(1)});
          add_factor(out, lin, mult);
          g = poly_divmod(g, lin).first;
        }
      }
    }
  }
  return g;
}

// Modular certificate: g irreducible mod p (degree preserved) => irreducible /Q.
bool certified_irreducible_mod_p(const RatPoly& g) {
  std::vector<Int> ic = primitive_int_coeffs(g);
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    if (ic.back() % p == 0) continue;
    Fp ex(0, p);
    std::vector<Fp> c;
    for (const Int& v : ic) c.push_back(f_from_int(ex, v));
    FpPoly gp(ex, std::move(c));
    if (is_irreducible(gp)) return true;
  }
  return false;
}

RatPoly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  RatPoly acc = rp();
  for (size_t i = 0; i < xs.size(); ++i) {
    RatPoly basis = RatPoly::constant(Rat(1));
    Rat denom(1);
    for (size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      basis = basis * rp({-xs[j], Rat(1)});
      denom *= xs[i] - xs[j];
    }
    acc = acc + (ys[i] / denom) * basis;
  }
  return acc;
}

// Kronecker search: find a monic factor of degree exactly k, or nullopt.
std::optional<RatPoly> kronecker_degree_k_factor(const RatPoly& g, int k) {
  std::vector<Rat> xs;
  std::vector<std::vector<Int>> divs;
  Int budget = 1;
  for (i64 x0 = 0; static_cast<int>(xs.size()) < k + 1; x0 = (x0 > 0 ? -x0 : -x0 + 1)) {
    if (x0 > 64) fail(Errc::BudgetExceeded, "could not find enough sample points");
    Rat x(x0);
    Rat v = g.eval(x);
    if (v.is_zero()) continue;  // no rational roots remain, but guard anyway
    // Values of an integer polynomial at integers are integers after clearing
    // content; here g is monic rational, so rescale to the integer model.
    std::vector<Int> ic = primitive_int_coeffs(g);
    Int vi = 0;
    Int pw = 1;
    for (size_t t = 0; t < ic.size(); ++t) {
      vi += ic[t] * pw;
      pw *= Int(x0);
    }
    if (vi == 0) continue;
    auto dv = divisors(vi);
    if (!dv) fail(Errc::BudgetExceeded, "divisor scan too large for exact factorization");
    xs.push_back(x);
    divs.push_back(*dv);
    budget *= Int(2) * Int(dv->size());
    if (budget > Int(4'000'000))
      fail(Errc::BudgetExceeded, "factor search space too large for exact factorization");
  }
  // Enumerate signed divisor tuples, interpolate, test divisibility.
  std::vector<size_t> idx(static_cast<size_t>(k) + 1, 0);
  std::vector<int> sign(static_cast<size_t>(k) + 1, 1);
  while (true) {
    std::vector<Rat> ys;
    for (int i = 0; i <= k; ++i)
      ys.push_back(Rat(sign[static_cast<size_t>(i)] * divs[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]));
    RatPoly h = lagrange_interpolate(xs, ys);
    if (h.degree() == k) {
      auto [q, r] = poly_divmod(g, h);
      if (r.is_zero()) return h.monic();
    }
    // Advance the (divisor index, sign) odometer.
    int i = 0;
    for (; i <= k; ++i) {
      size_t ui = static_cast<size_t>(i);
      if (sign[ui] == 1) {
        sign[ui] = -1;
        break;
      }
      sign[ui] = 1;
      if (++idx[ui] < divs[ui].size()) break;
      idx[ui] = 0;
    }
    if (i > k) return std::nullopt;
  }
}

void factor_squarefree_rat(RatPoly g, int mult, std::vector<PolyPower<Rat>>& out) {
  g = strip_rational_roots(g.monic(), mult, out);
  while (g.degree() > 0) {
    if (g.degree() <= 3 || certified_irreducible_mod_p(g)) {
      // Degree 2-3 with no rational roots is irreducible; otherwise certified.
      add_factor(out, g.monic(), mult);
      return;
    }
    bool split = false;
    for (int k = 2; k <= g.degree() / 2; ++k) {
      auto h = kronecker_degree_k_factor(g, k);
      if (h) {
        add_factor(out, *h, mult);
        g = poly_divmod(g, *h).first.monic();
        split = true;
        break;
      }
    }
    if (!split) {
      add_factor(out, g.monic(), mult);
      return;
    }
  }
}

}  // namespace

std::vector<PolyPower<Rat>> factor_poly(const RatPoly& f) {
  if (f.degree() <= 0) return {};
  std::vector<PolyPower<Rat>> out;
  for (const PolyPower<Rat>& part : squarefree_rat(f.monic()))
    factor_squarefree_rat(part.base, part.exponent, out);
  sort_factors(out, &rat_lt);
  return out;
}

}  // namespace quivmod
