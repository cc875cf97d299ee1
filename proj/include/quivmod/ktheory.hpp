#pragma once

#include "quivmod/poly.hpp"

#include <string>
#include <vector>

namespace quivmod {

enum class Surface { P1, P2, P1xP1 };

const char* surface_name(Surface s);
Surface surface_parse(const std::string& s);

// Ample divisor: A = a*H on P1/P2 (written degA = a), A = a*H + b*F on P1xP1.
struct Polarization {
  i64 a = 1;
  i64 b = 1;
};

// A K-theory class of the surface, stored by Chern data:
//   P1:    (rank, c1) with c1 an integer degree; ch2 unused.
//   P2:    (rank, c1, ch2) with c1 a multiple of the line class H.
//   P1xP1: (rank, c1 = alpha*H + beta*F, ch2); deg_H = c1.H = beta and
//          deg_F = c1.F = alpha under H.F = 1, H^2 = F^2 = 0.
struct SheafClass {
  Surface surface = Surface::P2;
  i64 rank = 0;
  i64 c1a = 0;  // P1/P2: the degree; P1xP1: alpha
  i64 c1b = 0;  // P1xP1 only: beta
  Rat ch2 = Rat(0);

  i64 deg() const;    // P1/P2 degree (c1a); error on P1xP1
  i64 deg_H() const;  // P1xP1 only
  i64 deg_F() const;  // P1xP1 only
};

SheafClass sheaf_p1(i64 rank, i64 deg);
SheafClass sheaf_p2(i64 rank, i64 deg, const Rat& ch2);
SheafClass sheaf_p1xp1(i64 rank, i64 deg_h, i64 deg_f, const Rat& ch2);

// O(k) on P1/P2; the P1xP1 line bundle with the given H- and F-degrees.
SheafClass line_bundle(Surface s, i64 k);
SheafClass line_bundle_p1xp1(i64 deg_h, i64 deg_f);
SheafClass canonical_class(Surface s);  // O(-2), O(-3), O(-2,-2) respectively

// Integrality checks: ch2 in (1/2)Z and chi(v) in Z. Throws MalformedInput.
void validate(const SheafClass& v);

bool same_class(const SheafClass& a, const SheafClass& b);
std::string sheaf_str(const SheafClass& v);

Rat chi(const SheafClass& v);        // Euler characteristic (always an integer)
Int chi_int(const SheafClass& v);
i64 deg_a(const SheafClass& v, const Polarization& A);  // c1 . A
Rat slope(const SheafClass& v, const Polarization& A);  // deg_A / rank, rank != 0

RatPoly hilbert_polynomial(const SheafClass& v, const Polarization& A);

SheafClass dual(const SheafClass& v);
SheafClass tensor(const SheafClass& a, const SheafClass& b);
Int intersect_c1(const SheafClass& a, const SheafClass& b);

// chi(v, w) := chi(dual(v) tensor w); the bilinear Euler pairing.
Int euler_pairing(const SheafClass& v, const SheafClass& w);

// v tensor L for a line bundle L (rank 1, ch2 = c1^2/2); errors NotALineBundle.
SheafClass twist(const SheafClass& v, const SheafClass& L);
SheafClass twist_p1_or_p2(const SheafClass& v, i64 k);
SheafClass twist_p1xp1(const SheafClass& v, i64 m, i64 n);  // by deg_H = m, deg_F = n

// Discriminant c1^2 - 2 rk ch2; always an integer. Error WrongSurface on P1.
Int bogomolov_delta(const SheafClass& v);

// ---------------------------------------------------------------------------
// Exceptional collections and the dictionary to dimension vectors
// ---------------------------------------------------------------------------

enum class CollectionKind { P1_k, P2_first, P2_second, P1xP1_std };

struct CollectionId {
  CollectionKind kind = CollectionKind::P2_first;
  i64 k = 0;  // parameter of the P1 family only

  friend bool operator==(const CollectionId&, const CollectionId&) = default;
};

std::string collection_str(const CollectionId& c);  // "P1:k=0", "P2:first", ...
CollectionId collection_parse(const std::string& s);
Surface collection_surface(const CollectionId& c);
int collection_size(const CollectionId& c);                 // number of vertices
std::vector<std::string> vertex_names(const CollectionId& c);

// The left-dual bundles generating the tilting equivalence, as sheaf classes
// in collection order. Entry i computes dim-vector coordinate i through the
// Euler pairing (see psi_sign).
std::vector<SheafClass> dual_collection_classes(const CollectionId& c);

// d_i = psi_sign * chi(dualE_i, v): +1 on P1, -1 on the two surfaces (their
// hearts place the sheaf in homological degree 1).
int psi_sign(const CollectionId& c);

I64Vec to_dim_vector(const SheafClass& v, const CollectionId& c);
SheafClass from_dim_vector(const I64Vec& d, const CollectionId& c);

// ---------------------------------------------------------------------------
// Stability weights and regions
// ---------------------------------------------------------------------------

struct ThetaArrays {
  std::vector<Rat> theta_m;       // slope part: theta_M . d^w = sigma_M(v, w)
  std::vector<Rat> theta_chi;     // Euler part: theta_chi . d^w = sigma_chi(v, w)
  std::vector<RatPoly> theta_g;   // t * theta_M + theta_chi
};

ThetaArrays theta_arrays(const SheafClass& v, const CollectionId& c, const Polarization& A);

// sigma_M(v,w) = deg_A v rk w - deg_A w rk v; sigma_chi(v,w) = chi(v) rk w - chi(w) rk v.
Rat sigma_m(const SheafClass& v, const SheafClass& w, const Polarization& A);
Rat sigma_chi(const SheafClass& v, const SheafClass& w);
// The Gieseker comparison polynomial t*sigma_M + sigma_chi; its lex sign
// equals the sign of sigma(P_v, P_w) for positive ranks.
RatPoly sigma_g(const SheafClass& v, const SheafClass& w, const Polarization& A);

struct RegionFlags {
  bool in_r = false;       // the collection's slope window (dictionary region)
  bool in_s0 = false;      // interior slope window
  bool in_s = false;       // closure used for semistable classes
  bool in_rg = false;      // Gieseker sandwich between the fixed bundles
  bool in_rtilde = false;  // in_rg && in_s
};

RegionFlags region_membership(const SheafClass& v, const CollectionId& c, const Polarization& A);

struct TwistResult {
  SheafClass twisted;
  i64 m = 0;  // twisted = twist(v, O(m)) or twist(v, O(m,n)) on P1xP1
  i64 n = 0;
};

// Finds the canonical twist placing v in the collection's region (P2_second
// admits slope-0 classes with chi < rk as the region substitute). Errors:
// NonPositiveRank, NoTwistFound, ZeroVector.
TwistResult normalize_twist(const SheafClass& v, const CollectionId& c, const Polarization& A);

}  // namespace quivmod
