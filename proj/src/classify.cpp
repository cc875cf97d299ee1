#include "quivmod/classify.hpp"

#include <algorithm>
#include <cstdlib>

namespace quivmod {

namespace {

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

void require_pair(const I64Vec& d) {
  if (d.size() != 2) fail(Errc::DimensionMismatch, "classify_K2 expects a pair (d_{-1}, d_0)");
  if (d[0] < 0 || d[1] < 0) fail(Errc::MalformedInput, "dimension vector entries must be >= 0");
  if (d[0] == 0 && d[1] == 0) fail(Errc::ZeroVector, "the zero class is not a moduli problem");
}

K2Classification point_pair(bool stable_point, std::string note) {
  K2Classification r;
  r.semistable = ModuliDescription::point(stable_point, note);
  r.stable = stable_point ? r.semistable
                          : ModuliDescription::empty("the unique semistable class is strictly semistable");
  return r;
}

K2Classification empty_pair(std::string why) {
  K2Classification r;
  r.semistable = ModuliDescription::empty(why);
  r.stable = r.semistable;
  return r;
}

}  // namespace

const char* moduli_kind_name(ModuliKind k) {
  switch (k) {
    case ModuliKind::Empty: return "Empty";
    case ModuliKind::Point: return "Point";
    case ModuliKind::ProjectiveSpace: return "ProjectiveSpace";
    case ModuliKind::Grassmannian: return "Grassmannian";
    case ModuliKind::SymbolicKronecker: return "SymbolicKronecker";
    case ModuliKind::SymbolicQuiver: return "SymbolicQuiver";
  }
  fail(Errc::Internal, "unreachable");
}

ModuliDescription ModuliDescription::empty(std::string why) {
  ModuliDescription d;
  d.kind = ModuliKind::Empty;
  d.note = std::move(why);
  return d;
}

ModuliDescription ModuliDescription::point(bool stable_point, std::string note) {
  ModuliDescription d;
  d.kind = ModuliKind::Point;
  d.has_stable = stable_point;
  d.dimension = 0;
  d.note = std::move(note);
  return d;
}

ModuliDescription ModuliDescription::projective(i64 m, std::string note) {
  ModuliDescription d;
  d.kind = ModuliKind::ProjectiveSpace;
  d.m = m;
  d.dimension = m;
  d.note = std::move(note);
  return d;
}

ModuliDescription ModuliDescription::grassmannian(i64 k, i64 n, std::string note) {
  ModuliDescription d;
  d.kind = ModuliKind::Grassmannian;
  d.gr_k = k;
  d.gr_n = n;
  d.dimension = k * (n - k);
  d.note = std::move(note);
  return d;
}

std::string moduli_str(const ModuliDescription& d) {
  switch (d.kind) {
    case ModuliKind::Empty: return "empty";
    case ModuliKind::Point: return d.has_stable ? "point (stable)" : "point (strictly semistable)";
    case ModuliKind::ProjectiveSpace: return "P^" + std::to_string(d.m);
    case ModuliKind::Grassmannian:
      return "Gr_" + std::to_string(d.gr_k) + "(C^" + std::to_string(d.gr_n) + ")";
    case ModuliKind::SymbolicKronecker:
      return "K(" + std::to_string(d.kn) + "; " + std::to_string(d.ka) + ", " +
             std::to_string(d.kb) + ")";
    case ModuliKind::SymbolicQuiver: {
      std::string s = "M_{" + d.quiver_id + "}(";
      for (size_t i = 0; i < d.dims.size(); ++i) s += (i ? "," : "") + std::to_string(d.dims[i]);
      return s + ")";
    }
  }
  fail(Errc::Internal, "unreachable");
}

namespace {

// Normal form for structural comparison: low-dimensional Grassmannians and
// projective spaces coincide (Gr_1(n) = Gr_{n-1}(n) = P^{n-1}, P^0 = point).
ModuliDescription canonical_form(ModuliDescription d) {
  if (d.kind == ModuliKind::Grassmannian) {
    if (d.gr_k == 0 || d.gr_k == d.gr_n) return ModuliDescription::point(d.has_stable, d.note);
    if (d.gr_k == 1 || d.gr_k == d.gr_n - 1)
      return ModuliDescription::projective(d.gr_n - 1, d.note);
    if (d.gr_k > d.gr_n - d.gr_k) d.gr_k = d.gr_n - d.gr_k;
  }
  if (d.kind == ModuliKind::ProjectiveSpace && d.m == 0)
    return ModuliDescription::point(d.has_stable, d.note);
  return d;
}

}  // namespace

bool same_space(const ModuliDescription& a0, const ModuliDescription& b0) {
  ModuliDescription a = canonical_form(a0), b = canonical_form(b0);
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ModuliKind::Empty: return true;
    case ModuliKind::Point: return a.has_stable == b.has_stable;
    case ModuliKind::ProjectiveSpace: return a.m == b.m;
    case ModuliKind::Grassmannian: return a.gr_k == b.gr_k && a.gr_n == b.gr_n;
    case ModuliKind::SymbolicKronecker: return a.kn == b.kn && a.ka == b.ka && a.kb == b.kb;
    case ModuliKind::SymbolicQuiver: return a.quiver_id == b.quiver_id && a.dims == b.dims;
  }
  fail(Errc::Internal, "unreachable");
}

K2Classification classify_K2(const I64Vec& d) {
  require_pair(d);
  i64 a = d[0], b = d[1];

  if (a == 0)
    return point_pair(b == 1, "direct sums of the sink vertex simple");
  if (b == 0)
    return point_pair(a == 1, "direct sums of the source vertex simple");

  i64 q = b - a;
  if (q == 0) {
    // Diagonal (m, m): the determinant pencil identifies the moduli space
    // with binary forms of degree m up to scale.
    K2Classification r;
    r.semistable = ModuliDescription::projective(a, "binary forms of degree " + std::to_string(a));
    r.stable = a == 1 ? ModuliDescription::projective(1, "every nonzero pencil is stable")
                      : ModuliDescription::empty("regular representations are direct sums of "
                                                 "eigenline subrepresentations");
    return r;
  }

  // Off the diagonal the space is nonempty only on the ray p*d_0 = (p+1)*d_{-1}
  // (q > 0, p = d_{-1}/q) or p*d_{-1} = (p-1)*d_0 (q < 0, p = d_0/q).
  i64 absq = std::llabs(q);
  i64 onray = (q > 0) ? (a % absq == 0) : (b % absq == 0);
  if (!onray)
    return empty_pair("(d_{-1}, d_0) lies on none of the nonempty rays");
  i64 p = (q > 0) ? a / q : b / q;
  std::string ray = "on the ray indexed p = " + std::to_string(p);
  if (absq == 1) return point_pair(true, ray + "; the unique class is stable");
  return point_pair(false, ray + "; the unique class is a direct sum");
}

KnReduction reduce_Kn(i64 n, i64 a, i64 b) {
  if (n < 1) fail(Errc::MalformedInput, "the Kronecker quiver needs n >= 1 arrows");
  if (a < 0 || b < 0) fail(Errc::MalformedInput, "dimension vector entries must be >= 0");
  if (a == 0 && b == 0) fail(Errc::ZeroVector, "the zero class is not a moduli problem");

  KnReduction out;
  out.n = n;
  out.a = a;
  out.b = b;
  auto step = [&](const std::string& rule, i64 na, i64 nb) {
    out.trace.push_back({rule, na, nb});
  };
  auto finish = [&](const std::string& rule, const ModuliDescription& ss,
                    std::optional<ModuliDescription> st) {
    step(rule, a, b);
    out.semistable = ss;
    out.stable = std::move(st);
  };

  while (true) {
    if (a == 0 || b == 0) {
      bool st = a + b == 1;
      finish("base case: one-vertex axis",
             ModuliDescription::point(st, "direct sums of a vertex simple"),
             st ? ModuliDescription::point(true) : ModuliDescription::empty());
      return out;
    }
    if (n * a < b || a > n * b) {
      ModuliDescription e = ModuliDescription::empty("outside the wedge a <= n b, b <= n a");
      finish("base case: outside the nonempty wedge", e, e);
      return out;
    }
    if (b == n * a || a == n * b) {
      bool st = std::min(a, b) == 1;
      finish("base case: wall of the wedge",
             ModuliDescription::point(st, "unique semistable class on the wedge wall"),
             st ? ModuliDescription::point(true) : ModuliDescription::empty());
      return out;
    }
    if (a == 1 || b == 1) {
      i64 k = std::max(a, b);
      std::string note = "K(" + std::to_string(n) + "; 1, k) = Gr_k(C^n); coprime, so stable = "
                         "semistable";
      if (k == 1 || k == n - 1) note += "; = P^" + std::to_string(n - 1);
      ModuliDescription g = ModuliDescription::grassmannian(k, n, note);
      finish("base case: Grassmannian", g, g);
      return out;
    }
    if (n == 3 && a == 2 && b == 2) {
      finish("base case: K(3; 2, 2)",
             ModuliDescription::projective(5, "nets of conics; the pair (2, 2) is not coprime"),
             std::nullopt);
      return out;
    }
    if (n == 2) {
      K2Classification r = classify_K2({a, b});
      finish("base case: complete two-arrow classification", r.semistable, r.stable);
      return out;
    }
    if (2 * b > n * a) {
      i64 na = n * a - b, nb = a;
      step("reflection K(n; a, b) = K(n; na - b, a)", na, nb);
      a = na;
      b = nb;
      continue;
    }
    if (2 * a > n * b) {
      i64 na = b, nb = n * b - a;
      step("reflection K(n; a, b) = K(n; b, nb - a)", na, nb);
      a = na;
      b = nb;
      continue;
    }
    ModuliDescription s;
    s.kind = ModuliKind::SymbolicKronecker;
    s.kn = n;
    s.ka = a;
    s.kb = b;
    s.dimension = n * a * b + 1 - a * a - b * b;
    s.note = "no reflection decreases a + b; nonempty of the stated dimension";
    finish("terminal: no further reduction", s, std::nullopt);
    return out;
  }
}

P1Classification classify_P1(i64 rk, i64 deg) {
  if (rk < 0) fail(Errc::NegativeRank, "sheaves on a curve have rank >= 0");
  if (rk == 0 && deg == 0) fail(Errc::ZeroVector, "the zero class is not a moduli problem");

  P1Classification out;

  // Direct description from the splitting of vector bundles on P^1 into line
  // bundles (positive rank) and the structure of finite-length sheaves.
  K2Classification direct;
  bool route = true;
  if (rk > 0) {
    if (deg % rk == 0) {
      bool st = rk == 1;
      direct.semistable = ModuliDescription::point(
          st, st ? "the line bundle O(" + std::to_string(deg) + ")"
                 : "the polystable bundle O(" + std::to_string(deg / rk) + ")^" +
                       std::to_string(rk));
      direct.stable =
          st ? direct.semistable
             : ModuliDescription::empty("integer slope with rank > 1: no stable bundle");
    } else {
      direct = empty_pair("fractional slope: a semistable bundle on P^1 splits");
    }
  } else if (deg > 0) {
    direct.semistable = ModuliDescription::projective(
        deg, "finite-length sheaves of length " + std::to_string(deg));
    direct.stable = deg == 1
                        ? ModuliDescription::projective(1, "structure sheaves of points")
                        : ModuliDescription::empty("length >= 2 sheaves are never simple");
  } else {
    direct = empty_pair("rank 0 with negative degree");
    route = false;  // no dimension vector with nonnegative entries exists
  }

  if (route) {
    out.k = rk > 0 ? floor_div(deg, rk) : 0;
    out.d = {deg - out.k * rk, deg - (out.k - 1) * rk};
    K2Classification viaK2 = classify_K2(out.d);
    if (!same_space(viaK2.semistable, direct.semistable) ||
        !same_space(viaK2.stable, direct.stable))
      fail(Errc::Internal, "P^1 classification routes disagree on (" + std::to_string(rk) + ", " +
                               std::to_string(deg) + ")");
  }
  out.semistable = direct.semistable;
  out.stable = direct.stable;
  return out;
}

}  // namespace quivmod
