#pragma once

#include "quivmod/classify.hpp"
#include "quivmod/ktheory.hpp"
#include "quivmod/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quivmod {

// One attempted exceptional-collection route for a moduli identification:
// the canonical twist into the collection's region, the dimension vector and
// weight arrays of the twisted class, the region flags, and whatever closed
// form the route supports.
struct RouteReport {
  CollectionId collection;
  i64 twist_m = 0, twist_n = 0;  // v was twisted by O(m) (resp. O(m, n))
  SheafClass twisted;
  RegionFlags flags;
  bool theorem_applies = false;  // region hypothesis of the moduli isomorphism
  I64Vec d;
  ThetaArrays theta;
  I64Vec theta_integral;  // integral weight numerically equivalent to theta_G
  bool coprime = false;   // d admits no subvector pairing to zero with theta_G
  std::optional<ModuliDescription> semistable;  // closed form through this route
  std::optional<ModuliDescription> stable;
  std::vector<std::string> notes;
};

struct ModuliReport {
  SheafClass input;
  Polarization polarization;
  std::optional<Int> discriminant;     // c1^2 - 2 rk ch2 (surfaces only)
  bool empty_by_discriminant = false;  // discriminant < 0 forces emptiness
  // 1 - rk^2 + discriminant on the surfaces, 1 - rk^2 on P^1: the dimension
  // of the stable locus whenever that locus is nonempty.
  std::optional<i64> expected_dimension;
  i64 invariant_gcd = 0;  // gcd(rk, deg_A, chi)
  std::vector<RouteReport> routes;
  // The agreed identification. Conclusive closed forms (empty / point / P^m /
  // Grassmannian) from different routes are asserted equal; symbolic
  // reductions are reported only when no route concludes.
  std::optional<ModuliDescription> semistable;
  std::optional<ModuliDescription> stable;
  std::vector<std::string> notes;
};

// Identifies the moduli space of Gieseker-semistable sheaves of class v with
// respect to the polarization A through the quiver dictionary, trying every
// collection available on the surface of v. Never guesses: identifications
// are emitted only when the producing route's region flags verify the
// hypothesis of the corresponding isomorphism theorem, and emptiness is only
// concluded from the discriminant bound, a negative dimension-vector entry in
// a theorem-verified region, or a closed-form classification.
// Errors: NonPositiveRank (rank <= 0 on a surface), NegativeRank / ZeroVector
// on P^1, OutOfRegion when no collection admits a region twist.
ModuliReport identify_moduli(const SheafClass& v, const Polarization& A);

std::string report_str(const ModuliReport& r);  // human-readable rendering

}  // namespace quivmod
