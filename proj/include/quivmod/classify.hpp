#pragma once

#include "quivmod/ktheory.hpp"
#include "quivmod/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quivmod {

// Closed-form descriptions of Kronecker moduli spaces K(n; a, b) (dimension
// vector (a, b) with the canonical orthogonal weight, primitive of (-b, a))
// and of the sheaf moduli they identify.
enum class ModuliKind {
  Empty,
  Point,              // a single S-equivalence class
  ProjectiveSpace,    // P^m
  Grassmannian,       // Gr_k(C^n)
  SymbolicKronecker,  // K(n; a, b), no further reduction applied
  SymbolicQuiver,     // a quiver moduli space reported by (quiver id, dims)
};
const char* moduli_kind_name(ModuliKind k);

struct ModuliDescription {
  ModuliKind kind = ModuliKind::Empty;
  bool has_stable = false;  // Point: whether the point is a stable class
  i64 m = 0;                // ProjectiveSpace: the dimension
  i64 gr_k = 0, gr_n = 0;   // Grassmannian parameters
  i64 kn = 0, ka = 0, kb = 0;  // SymbolicKronecker parameters
  std::string quiver_id;       // SymbolicQuiver
  I64Vec dims;                 // SymbolicQuiver dimension vector
  std::optional<i64> dimension;  // dimension of the space, when defined
  std::string note;

  static ModuliDescription empty(std::string why = {});
  static ModuliDescription point(bool stable_point, std::string note = {});
  static ModuliDescription projective(i64 m, std::string note = {});
  static ModuliDescription grassmannian(i64 k, i64 n, std::string note = {});
};

std::string moduli_str(const ModuliDescription& d);

// Structural equality after canonicalization (Gr_1(n) = Gr_{n-1}(n) = P^{n-1},
// P^0 = point). Used to assert that independent identification routes agree.
bool same_space(const ModuliDescription& a, const ModuliDescription& b);

struct K2Classification {
  ModuliDescription semistable;
  ModuliDescription stable;
};

// Complete classification of K(2; d_{-1}, d_0) for the canonical weight:
// empty unless d lies on one of the lines p*d_0 = (p+1)*d_{-1} (p > 0),
// d_{-1} = d_0, or p*d_{-1} = (p-1)*d_0 (p < 0); a reduced point on the
// off-diagonal lines (stable iff |d_0 - d_{-1}| == 1); P^m with stable locus
// P^1 (m == 1) or empty (m >= 2) on the diagonal (m, m). The one-vertex axes
// (0, m), (m, 0) are points (stable iff m == 1).
// Preconditions: d has size 2, entries >= 0, d != 0; errors ZeroVector.
K2Classification classify_K2(const I64Vec& d);

struct ReductionStep {
  std::string rule;  // human-readable description of the move applied
  i64 a = 0, b = 0;  // dimension pair after the move
};

struct KnReduction {
  i64 n = 0;
  i64 a = 0, b = 0;  // the input pair
  std::vector<ReductionStep> trace;
  ModuliDescription semistable;
  std::optional<ModuliDescription> stable;  // when the analysis determines it
};

// Iteratively reduces K(n; a, b) by the reflection isomorphisms
// K(n; a, b) = K(n; na-b, a) = K(n; b, nb-a) (each applied only when it
// strictly decreases a+b) and recognizes the closed-form base cases:
// emptiness outside the wedge na >= b, nb >= a; points on the wedge walls;
// Grassmannians K(n; 1, k) = Gr_k(C^n); K(3; 2, 2) = P^5; and the complete
// two-arrow classification (classify_K2) when n == 2. Anything else is
// reported symbolically with dim = nab + 1 - a^2 - b^2.
// Preconditions: n >= 1, a, b >= 0, (a, b) != (0, 0); errors ZeroVector.
KnReduction reduce_Kn(i64 n, i64 a, i64 b);

struct P1Classification {
  ModuliDescription semistable;
  ModuliDescription stable;
  i64 k = 0;   // collection parameter used by the dimension-vector route
  I64Vec d;    // the dimension vector handed to classify_K2
};

// Moduli of semistable sheaves on P^1 with invariants (rk, deg): a point when
// rk > 0 and rk | deg (stable iff rk == 1, the line bundle O(deg/rk)); empty
// when rk > 0 and rk does not divide deg; P^deg for torsion classes (rk == 0,
// deg > 0), with stable locus P^1 exactly when deg == 1. Computed through the
// two-arrow dictionary (k = floor(deg/rk), d = (deg - k rk, deg - (k-1) rk))
// and cross-checked against the direct Birkhoff-Grothendieck description.
// Errors: NegativeRank (rk < 0), ZeroVector ((0, 0)).
P1Classification classify_P1(i64 rk, i64 deg);

}  // namespace quivmod
