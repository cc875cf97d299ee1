#include "quivmod/ktheory.hpp"

#include <array>
#include <cassert>
#include <cstdlib>

namespace quivmod {

const char* surface_name(Surface s) {
  switch (s) {
    case Surface::P1: return "P1";
    case Surface::P2: return "P2";
    case Surface::P1xP1: return "P1xP1";
  }
  return "?";
}

Surface surface_parse(const std::string& s) {
  if (s == "P1") return Surface::P1;
  if (s == "P2") return Surface::P2;
  if (s == "P1xP1") return Surface::P1xP1;
  fail(Errc::MalformedInput, "unknown surface '" + s + "'");
}

i64 SheafClass::deg() const {
  if (surface == Surface::P1xP1) fail(Errc::WrongSurface, "deg() is ambiguous on P1xP1");
  return c1a;
}
i64 SheafClass::deg_H() const {
  if (surface != Surface::P1xP1) fail(Errc::WrongSurface, "deg_H is defined on P1xP1 only");
  return c1b;
}
i64 SheafClass::deg_F() const {
  if (surface != Surface::P1xP1) fail(Errc::WrongSurface, "deg_F is defined on P1xP1 only");
  return c1a;
}

SheafClass sheaf_p1(i64 rank, i64 deg) {
  SheafClass v;
  v.surface = Surface::P1;
  v.rank = rank;
  v.c1a = deg;
  return v;
}

SheafClass sheaf_p2(i64 rank, i64 deg, const Rat& ch2) {
  SheafClass v;
  v.surface = Surface::P2;
  v.rank = rank;
  v.c1a = deg;
  v.ch2 = ch2;
  validate(v);
  return v;
}

SheafClass sheaf_p1xp1(i64 rank, i64 deg_h, i64 deg_f, const Rat& ch2) {
  SheafClass v;
  v.surface = Surface::P1xP1;
  v.rank = rank;
  v.c1b = deg_h;  // deg_H = c1 . H = beta
  v.c1a = deg_f;  // deg_F = c1 . F = alpha
  v.ch2 = ch2;
  validate(v);
  return v;
}

SheafClass line_bundle(Surface s, i64 k) {
  switch (s) {
    case Surface::P1: return sheaf_p1(1, k);
    case Surface::P2: return sheaf_p2(1, k, Rat(k * k, 2));
    case Surface::P1xP1: fail(Errc::WrongSurface, "P1xP1 line bundles need two degrees");
  }
  fail(Errc::Internal, "unreachable");
}

SheafClass line_bundle_p1xp1(i64 deg_h, i64 deg_f) {
  return sheaf_p1xp1(1, deg_h, deg_f, Rat(deg_h * deg_f));
}

SheafClass canonical_class(Surface s) {
  switch (s) {
    case Surface::P1: return line_bundle(Surface::P1, -2);
    case Surface::P2: return line_bundle(Surface::P2, -3);
    case Surface::P1xP1: return line_bundle_p1xp1(-2, -2);
  }
  fail(Errc::Internal, "unreachable");
}

void validate(const SheafClass& v) {
  switch (v.surface) {
    case Surface::P1:
      if (!v.ch2.is_zero()) fail(Errc::MalformedInput, "ch2 is not defined on P1");
      if (v.c1b != 0) fail(Errc::MalformedInput, "c1 on P1 is a single integer");
      return;
    case Surface::P2: {
      if (v.c1b != 0) fail(Errc::MalformedInput, "c1 on P2 is a single integer");
      if (den(v.ch2) > 2) fail(Errc::MalformedInput, "ch2 must have denominator dividing 2");
      if (!is_integer(chi(v)))
        fail(Errc::MalformedInput, "chi(v) must be an integer: ch2 parity does not match c1");
      return;
    }
    case Surface::P1xP1:
      if (!is_integer(v.ch2)) fail(Errc::MalformedInput, "ch2 must be an integer on P1xP1");
      return;
  }
}

bool same_class(const SheafClass& a, const SheafClass& b) {
  return a.surface == b.surface && a.rank == b.rank && a.c1a == b.c1a && a.c1b == b.c1b &&
         a.ch2 == b.ch2;
}

std::string sheaf_str(const SheafClass& v) {
  switch (v.surface) {
    case Surface::P1: return "(" + std::to_string(v.rank) + "," + std::to_string(v.c1a) + ")";
    case Surface::P2:
      return "(" + std::to_string(v.rank) + "," + std::to_string(v.c1a) + "," + rat_str(v.ch2) + ")";
    case Surface::P1xP1:
      // Degree order (deg_H, deg_F), matching the constructor arguments.
      return "(" + std::to_string(v.rank) + ",(" + std::to_string(v.c1b) + "," +
             std::to_string(v.c1a) + ")," + rat_str(v.ch2) + ")";
  }
  return "?";
}

Rat chi(const SheafClass& v) {
  switch (v.surface) {
    case Surface::P1: return Rat(v.rank + v.c1a);
    case Surface::P2: return Rat(v.rank) + Rat(3 * v.c1a, 2) + v.ch2;
    case Surface::P1xP1: return Rat(v.rank + v.deg_H() + v.deg_F()) + v.ch2;
  }
  fail(Errc::Internal, "unreachable");
}

Int chi_int(const SheafClass& v) {
  Rat x = chi(v);
  if (!is_integer(x)) fail(Errc::MalformedInput, "non-integral Euler characteristic");
  return num(x);
}

i64 deg_a(const SheafClass& v, const Polarization& A) {
  switch (v.surface) {
    case Surface::P1: return v.c1a;
    case Surface::P2: return A.a * v.c1a;
    case Surface::P1xP1: return A.a * v.deg_H() + A.b * v.deg_F();
  }
  fail(Errc::Internal, "unreachable");
}

Rat slope(const SheafClass& v, const Polarization& A) {
  if (v.rank == 0) fail(Errc::ZeroInput, "slope of a rank-zero class");
  return Rat(deg_a(v, A), v.rank);
}

RatPoly hilbert_polynomial(const SheafClass& v, const Polarization& A) {
  if (A.a <= 0 || (v.surface == Surface::P1xP1 && A.b <= 0))
    fail(Errc::MalformedInput, "polarization must be ample");
  switch (v.surface) {
    case Surface::P1:
      return rp({Rat(v.rank + v.c1a), Rat(A.a * v.rank)});
    case Surface::P2: {
      Rat t2 = Rat(v.rank * A.a * A.a, 2);
      Rat t1 = Rat(A.a * v.c1a) + Rat(3 * A.a * v.rank, 2);
      return rp({chi(v), t1, t2});
    }
    case Surface::P1xP1: {
      Rat t2 = Rat(A.a * A.b * v.rank);
      Rat t1 = Rat(A.a * v.deg_H() + A.b * v.deg_F() + (A.a + A.b) * v.rank);
      return rp({chi(v), t1, t2});
    }
  }
  fail(Errc::Internal, "unreachable");
}

SheafClass dual(const SheafClass& v) {
  SheafClass d = v;
  d.c1a = -v.c1a;
  d.c1b = -v.c1b;
  return d;
}

Int intersect_c1(const SheafClass& a, const SheafClass& b) {
  if (a.surface != b.surface) fail(Errc::SurfaceMismatch, "intersection across surfaces");
  switch (a.surface) {
    case Surface::P1: fail(Errc::WrongSurface, "c1.c1 is not defined on a curve");
    case Surface::P2: return Int(a.c1a) * Int(b.c1a);
    case Surface::P1xP1: return Int(a.c1a) * Int(b.c1b) + Int(a.c1b) * Int(b.c1a);
  }
  fail(Errc::Internal, "unreachable");
}

SheafClass tensor(const SheafClass& a, const SheafClass& b) {
  if (a.surface != b.surface) fail(Errc::SurfaceMismatch, "tensor across surfaces");
  SheafClass t = a;
  t.rank = a.rank * b.rank;
  t.c1a = a.rank * b.c1a + b.rank * a.c1a;
  t.c1b = a.rank * b.c1b + b.rank * a.c1b;
  if (a.surface == Surface::P1) {
    t.ch2 = Rat(0);
  } else {
    t.ch2 = Rat(a.rank) * b.ch2 + Rat(b.rank) * a.ch2 + Rat(intersect_c1(a, b));
  }
  return t;
}

Int euler_pairing(const SheafClass& v, const SheafClass& w) {
  return chi_int(tensor(dual(v), w));
}

SheafClass twist(const SheafClass& v, const SheafClass& L) {
  if (L.rank != 1) fail(Errc::NotALineBundle, "twist requires a rank-1 class");
  if (L.surface != Surface::P1) {
    Rat half_sq = Rat(intersect_c1(L, L), 2);
    if (L.ch2 != half_sq) fail(Errc::NotALineBundle, "twist requires ch2(L) = c1(L)^2/2");
  }
  return tensor(v, L);
}

SheafClass twist_p1_or_p2(const SheafClass& v, i64 k) {
  return twist(v, line_bundle(v.surface, k));
}

SheafClass twist_p1xp1(const SheafClass& v, i64 m, i64 n) {
  return twist(v, line_bundle_p1xp1(m, n));
}

Int bogomolov_delta(const SheafClass& v) {
  if (v.surface == Surface::P1) fail(Errc::WrongSurface, "no discriminant on a curve");
  Rat d = Rat(intersect_c1(v, v)) - Rat(2 * v.rank) * v.ch2;
  if (!is_integer(d)) fail(Errc::Internal, "non-integral discriminant");
  return num(d);
}

// ---------------------------------------------------------------------------
// Collections
// ---------------------------------------------------------------------------

std::string collection_str(const CollectionId& c) {
  switch (c.kind) {
    case CollectionKind::P1_k: return "P1:k=" + std::to_string(c.k);
    case CollectionKind::P2_first: return "P2:first";
    case CollectionKind::P2_second: return "P2:second";
    case CollectionKind::P1xP1_std: return "P1xP1:std";
  }
  return "?";
}

CollectionId collection_parse(const std::string& s) {
  if (s == "P2:first") return {CollectionKind::P2_first, 0};
  if (s == "P2:second") return {CollectionKind::P2_second, 0};
  if (s == "P1xP1:std") return {CollectionKind::P1xP1_std, 0};
  if (s.rfind("P1:k=", 0) == 0) {
    return {CollectionKind::P1_k, to_i64(int_parse(s.substr(5)))};
  }
  fail(Errc::MalformedInput, "unknown collection '" + s + "'");
}

Surface collection_surface(const CollectionId& c) {
  switch (c.kind) {
    case CollectionKind::P1_k: return Surface::P1;
    case CollectionKind::P2_first:
    case CollectionKind::P2_second: return Surface::P2;
    case CollectionKind::P1xP1_std: return Surface::P1xP1;
  }
  fail(Errc::Internal, "unreachable");
}

int collection_size(const CollectionId& c) {
  return c.kind == CollectionKind::P1_k ? 2 : (c.kind == CollectionKind::P1xP1_std ? 4 : 3);
}

std::vector<std::string> vertex_names(const CollectionId& c) {
  switch (c.kind) {
    case CollectionKind::P1_k: return {"-1", "0"};
    case CollectionKind::P2_first:
    case CollectionKind::P2_second: return {"-1", "0", "1"};
    case CollectionKind::P1xP1_std: return {"(0,-1)", "(0,0)", "(1,-1)", "(1,0)"};
  }
  fail(Errc::Internal, "unreachable");
}

std::vector<SheafClass> dual_collection_classes(const CollectionId& c) {
  switch (c.kind) {
    case CollectionKind::P1_k:
      return {line_bundle(Surface::P1, c.k + 1), line_bundle(Surface::P1, c.k)};
    case CollectionKind::P2_first:
      // O(2), the tangent bundle, O(1) (coordinate order -1, 0, 1).
      return {line_bundle(Surface::P2, 2), sheaf_p2(2, 3, Rat(3, 2)), line_bundle(Surface::P2, 1)};
    case CollectionKind::P2_second:
      return {line_bundle(Surface::P2, 2), line_bundle(Surface::P2, 1), line_bundle(Surface::P2, 0)};
    case CollectionKind::P1xP1_std:
      return {line_bundle_p1xp1(2, 1), line_bundle_p1xp1(2, 0), line_bundle_p1xp1(1, 1),
              line_bundle_p1xp1(1, 0)};
  }
  fail(Errc::Internal, "unreachable");
}

int psi_sign(const CollectionId& c) { return c.kind == CollectionKind::P1_k ? 1 : -1; }

namespace {

// Coordinates (rk, deg, chi) on P1/P2 and (rk, deg_H, deg_F, chi) on P1xP1.
std::vector<Int> coords(const SheafClass& v) {
  switch (v.surface) {
    case Surface::P1: return {Int(v.rank), Int(v.c1a)};
    case Surface::P2: return {Int(v.rank), Int(v.c1a), chi_int(v)};
    case Surface::P1xP1: return {Int(v.rank), Int(v.deg_H()), Int(v.deg_F()), chi_int(v)};
  }
  fail(Errc::Internal, "unreachable");
}

// Frozen dictionary matrices: d = TO * coords and coords = FROM * d; each pair
// multiplies to the identity (checked in the test suite and at acceptance).
using Mat2 = std::array<std::array<i64, 2>, 2>;
using Mat3 = std::array<std::array<i64, 3>, 3>;
using Mat4 = std::array<std::array<i64, 4>, 4>;

constexpr Mat3 kP2FirstTo{{{1, 2, -1}, {3, 3, -2}, {1, 1, -1}}};
constexpr Mat3 kP2FirstFrom{{{-1, 1, -1}, {1, 0, -1}, {0, 1, -3}}};
constexpr Mat3 kP2SecondTo{{{1, 2, -1}, {1, 1, -1}, {0, 0, -1}}};
constexpr Mat3 kP2SecondFrom{{{-1, 2, -1}, {1, -1, 0}, {0, 0, -1}}};
constexpr Mat4 kP1xP1To{{{1, 1, 2, -1}, {2, 0, 2, -1}, {1, 1, 1, -1}, {1, 0, 1, -1}}};
constexpr Mat4 kP1xP1From{{{-1, 1, 1, -1}, {0, 0, 1, -1}, {1, 0, -1, 0}, {0, 1, 0, -2}}};

Mat2 p1_to(i64 k) { return {{{-k, 1}, {1 - k, 1}}}; }
Mat2 p1_from(i64 k) { return {{{-1, 1}, {1 - k, k}}}; }

std::vector<std::vector<i64>> dictionary_matrix(const CollectionId& c, bool to_dim) {
  auto pack2 = [](const Mat2& m) {
    return std::vector<std::vector<i64>>{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
  };
  auto pack3 = [](const Mat3& m) {
    std::vector<std::vector<i64>> r;
    for (const auto& row : m) r.push_back({row[0], row[1], row[2]});
    return r;
  };
  auto pack4 = [](const Mat4& m) {
    std::vector<std::vector<i64>> r;
    for (const auto& row : m) r.push_back({row[0], row[1], row[2], row[3]});
    return r;
  };
  switch (c.kind) {
    case CollectionKind::P1_k: return pack2(to_dim ? p1_to(c.k) : p1_from(c.k));
    case CollectionKind::P2_first: return pack3(to_dim ? kP2FirstTo : kP2FirstFrom);
    case CollectionKind::P2_second: return pack3(to_dim ? kP2SecondTo : kP2SecondFrom);
    case CollectionKind::P1xP1_std: return pack4(to_dim ? kP1xP1To : kP1xP1From);
  }
  fail(Errc::Internal, "unreachable");
}

std::vector<Int> mat_apply(const std::vector<std::vector<i64>>& m, const std::vector<Int>& x) {
  std::vector<Int> y(m.size(), Int(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += Int(m[i][j]) * x[j];
  return y;
}

void check_surface(const SheafClass& v, const CollectionId& c) {
  if (v.surface != collection_surface(c))
    fail(Errc::SurfaceMismatch, "class on " + std::string(surface_name(v.surface)) +
                                     " given to collection " + collection_str(c));
}

}  // namespace

I64Vec to_dim_vector(const SheafClass& v, const CollectionId& c) {
  check_surface(v, c);
  std::vector<Int> d = mat_apply(dictionary_matrix(c, /*to_dim=*/true), coords(v));
  I64Vec out;
  for (const Int& x : d) out.push_back(to_i64(x));
  return out;
}

SheafClass from_dim_vector(const I64Vec& d, const CollectionId& c) {
  if (static_cast<int>(d.size()) != collection_size(c))
    fail(Errc::DimensionMismatch, "dimension vector size mismatch for " + collection_str(c));
  std::vector<Int> di(d.begin(), d.end());
  std::vector<Int> x = mat_apply(dictionary_matrix(c, /*to_dim=*/false), di);
  switch (collection_surface(c)) {
    case Surface::P1: return sheaf_p1(to_i64(x[0]), to_i64(x[1]));
    case Surface::P2: {
      Rat ch2 = Rat(x[2]) - Rat(x[0]) - Rat(3 * x[1], 2);
      return sheaf_p2(to_i64(x[0]), to_i64(x[1]), ch2);
    }
    case Surface::P1xP1: {
      Rat ch2 = Rat(x[3] - x[0] - x[1] - x[2]);
      return sheaf_p1xp1(to_i64(x[0]), to_i64(x[1]), to_i64(x[2]), ch2);
    }
  }
  fail(Errc::Internal, "unreachable");
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

Rat sigma_m(const SheafClass& v, const SheafClass& w, const Polarization& A) {
  return Rat(deg_a(v, A)) * Rat(w.rank) - Rat(deg_a(w, A)) * Rat(v.rank);
}

Rat sigma_chi(const SheafClass& v, const SheafClass& w) {
  return chi(v) * Rat(w.rank) - chi(w) * Rat(v.rank);
}

RatPoly sigma_g(const SheafClass& v, const SheafClass& w, const Polarization& A) {
  return rp({sigma_chi(v, w), sigma_m(v, w, A)});
}

ThetaArrays theta_arrays(const SheafClass& v, const CollectionId& c, const Polarization& A) {
  check_surface(v, c);
  // sigma_M(v, -) and sigma_chi(v, -) as functionals in the coords of the
  // second argument; composing with the FROM matrix expresses them on
  // dimension vectors, i.e. as weight arrays.
  size_t n = coords(v).size();
  std::vector<Rat> f_m(n, Rat(0)), f_chi(n, Rat(0));
  f_m[0] = Rat(deg_a(v, A));
  switch (v.surface) {
    case Surface::P1: f_m[1] = Rat(-v.rank); break;
    case Surface::P2: f_m[1] = Rat(-A.a * v.rank); break;
    case Surface::P1xP1:
      f_m[1] = Rat(-A.a * v.rank);
      f_m[2] = Rat(-A.b * v.rank);
      break;
  }
  f_chi[0] = chi(v);
  f_chi[n - 1] += Rat(-v.rank);  // coefficient of chi(w); on P1 chi is rk + deg
  if (v.surface == Surface::P1) {
    // coords on P1 are (rk, deg) and chi(w) = rk w + deg w.
    f_chi[0] += Rat(-v.rank);
  }
  std::vector<std::vector<i64>> from = dictionary_matrix(c, /*to_dim=*/false);
  ThetaArrays t;
  size_t m = from.size();
  t.theta_m.assign(m, Rat(0));
  t.theta_chi.assign(m, Rat(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) {
      t.theta_m[i] += f_m[j] * Rat(from[j][i]);
      t.theta_chi[i] += f_chi[j] * Rat(from[j][i]);
    }
  for (size_t i = 0; i < m; ++i) t.theta_g.push_back(rp({t.theta_chi[i], t.theta_m[i]}));
  return t;
}

// ---------------------------------------------------------------------------
// Regions and twists
// ---------------------------------------------------------------------------

namespace {

bool gieseker_sandwich(const SheafClass& v, const CollectionId& c, const Polarization& A) {
  if (v.rank <= 0) return false;
  RatPoly pv = hilbert_polynomial(v, A);
  SheafClass omega = canonical_class(collection_surface(c));
  for (const SheafClass& e : dual_collection_classes(c)) {
    RatPoly upper = hilbert_polynomial(e, A);
    RatPoly lower = hilbert_polynomial(twist(e, omega), A);
    if (gieseker_compare(lower, pv) != GiesekerOrder::StrictlyLess) return false;
    if (gieseker_compare(pv, upper) != GiesekerOrder::StrictlyLess) return false;
  }
  return true;
}

}  // namespace

RegionFlags region_membership(const SheafClass& v, const CollectionId& c, const Polarization& A) {
  check_surface(v, c);
  RegionFlags f;
  switch (c.kind) {
    case CollectionKind::P1_k: {
      bool in = v.rank >= 0 && v.c1a >= c.k * v.rank && (v.rank > 0 || v.c1a > 0);
      f.in_r = f.in_s0 = f.in_s = f.in_rg = f.in_rtilde = in;
      return f;
    }
    case CollectionKind::P2_first: {
      bool window = v.rank > 0 && std::llabs(v.c1a) < v.rank;
      f.in_r = f.in_s0 = f.in_s = window;
      f.in_rg = gieseker_sandwich(v, c, A);
      f.in_rtilde = f.in_rg && f.in_s;
      return f;
    }
    case CollectionKind::P2_second: {
      f.in_r = f.in_s0 = v.rank > 0 && 0 < -v.c1a && -v.c1a < v.rank;
      // t*deg + chi strictly between -(t+1)*rk and rk, avoiding deg = -rk.
      RatPoly mid = rp({chi(v), Rat(v.c1a)});
      RatPoly low_s = rp({Rat(-v.rank), Rat(-v.rank)});
      RatPoly low_rg = rp({Rat(0), Rat(-v.rank)});
      RatPoly high = RatPoly::constant(Rat(v.rank));
      f.in_s = v.rank > 0 && lex_compare(low_s, mid) < 0 && lex_compare(mid, high) < 0 &&
               v.c1a != -v.rank;
      f.in_rg = v.rank > 0 && lex_compare(low_rg, mid) < 0 && lex_compare(mid, high) < 0;
      f.in_rtilde = f.in_rg && f.in_s;
      return f;
    }
    case CollectionKind::P1xP1_std: {
      i64 d = deg_a(v, A);
      bool window = v.rank > 0 && -A.b * v.rank < d && d < A.a * v.rank;
      f.in_r = f.in_s0 = f.in_s = window;
      f.in_rg = gieseker_sandwich(v, c, A);
      f.in_rtilde = f.in_rg && f.in_s;
      return f;
    }
  }
  fail(Errc::Internal, "unreachable");
}

TwistResult normalize_twist(const SheafClass& v, const CollectionId& c, const Polarization& A) {
  check_surface(v, c);
  switch (c.kind) {
    case CollectionKind::P1_k: {
      if (v.rank < 0) fail(Errc::NonPositiveRank, "negative rank on P1");
      if (v.rank == 0) {
        if (v.c1a > 0) return {v, 0, 0};
        if (v.c1a == 0) fail(Errc::ZeroVector, "zero class");
        fail(Errc::NoTwistFound, "negative-degree torsion class never enters the region");
      }
      // Minimal twist with slope in [k, k+1).
      i64 m = c.k - to_i64(floor_div(Int(v.c1a), Int(v.rank)));
      return {twist_p1_or_p2(v, m), m, 0};
    }
    case CollectionKind::P2_first: {
      if (v.rank <= 0) fail(Errc::NonPositiveRank, "the dictionary requires positive rank");
      // |deg + m rk| < rk has solutions; pick minimal (|m|, m).
      for (i64 r = 0;; ++r) {
        for (i64 m : (r == 0 ? I64Vec{0} : I64Vec{-r, r})) {
          if (std::llabs(v.c1a + m * v.rank) < v.rank) return {twist_p1_or_p2(v, m), m, 0};
        }
        if (r > std::llabs(v.c1a) + 2) fail(Errc::Internal, "twist search runaway");
      }
    }
    case CollectionKind::P2_second: {
      if (v.rank <= 0) fail(Errc::NonPositiveRank, "the dictionary requires positive rank");
      if (v.c1a % v.rank != 0) {
        // Unique m with -1 < (deg + m rk)/rk < 0.
        i64 m = to_i64(-floor_div(Int(v.c1a), Int(v.rank))) - 1;
        SheafClass w = twist_p1_or_p2(v, m);
        if (!(0 < -w.c1a && -w.c1a < w.rank)) fail(Errc::Internal, "twist normalization broke");
        return {w, m, 0};
      }
      // Integral slope: the window is empty; fall back to the zero-slope twist,
      // which the extended region accepts exactly when chi < rk.
      i64 m = -v.c1a / v.rank;
      SheafClass w = twist_p1_or_p2(v, m);
      if (chi(w) < Rat(w.rank)) return {w, m, 0};
      fail(Errc::NoTwistFound,
           "integral slope and chi(v(m)) >= rk: no twist reaches the collection's region");
    }
    case CollectionKind::P1xP1_std: {
      if (v.rank <= 0) fail(Errc::NonPositiveRank, "the dictionary requires positive rank");
      i64 bound = std::llabs(deg_a(v, A)) / std::min(A.a, A.b) + A.a + A.b + 2;
      for (i64 r = 0; r <= 2 * bound; ++r) {
        for (i64 m = -r; m <= r; ++m) {
          i64 n_abs = r - std::llabs(m);
          for (i64 n : (n_abs == 0 ? I64Vec{0} : I64Vec{-n_abs, n_abs})) {
            SheafClass w = twist_p1xp1(v, m, n);
            i64 d = deg_a(w, A);
            if (-A.b * w.rank < d && d < A.a * w.rank) return {w, m, n};
          }
        }
      }
      fail(Errc::Internal, "twist search runaway on P1xP1");
    }
  }
  fail(Errc::Internal, "unreachable");
}

}  // namespace quivmod
