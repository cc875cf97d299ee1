#include "doctest.h"

#include "quivmod/ktheory.hpp"
#include "quivmod/stability.hpp"

#include <random>
#include <vector>

using namespace quivmod;

namespace {

// Random valid classes: chi is forced integral by solving for ch2.
SheafClass random_class(Surface s, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> rk(1, 4), dg(-5, 5), ch(-5, 5);
  switch (s) {
    case Surface::P1: return sheaf_p1(rk(rng), dg(rng));
    case Surface::P2: {
      i64 r = rk(rng), d = dg(rng), x = ch(rng);
      return sheaf_p2(r, d, Rat(x) - r - Rat(3 * d, 2));
    }
    case Surface::P1xP1: {
      i64 r = rk(rng), dh = dg(rng), df = dg(rng), x = ch(rng);
      return sheaf_p1xp1(r, dh, df, Rat(x - r - dh - df));
    }
  }
  fail(Errc::Internal, "unreachable");
}

std::vector<CollectionId> all_collections() {
  return {{CollectionKind::P1_k, 0},
          {CollectionKind::P1_k, -2},
          {CollectionKind::P2_first, 0},
          {CollectionKind::P2_second, 0},
          {CollectionKind::P1xP1_std, 0}};
}

}  // namespace

TEST_CASE("Euler characteristics of line bundles") {
  for (i64 k = -4; k <= 4; ++k) {
    CHECK(chi_int(line_bundle(Surface::P1, k)) == k + 1);
    CHECK(chi_int(line_bundle(Surface::P2, k)) == (k + 1) * (k + 2) / 2);
  }
  for (i64 m = -3; m <= 3; ++m)
    for (i64 n = -3; n <= 3; ++n) {
      SheafClass l = line_bundle_p1xp1(m, n);
      CHECK(l.deg_H() == m);
      CHECK(l.deg_F() == n);
      CHECK(l.ch2 == Rat(m * n));
      CHECK(chi_int(l) == (m + 1) * (n + 1));
    }
}

TEST_CASE("class validation enforces integrality") {
  CHECK_NOTHROW(validate(sheaf_p2(1, 1, Rat(1, 2))));   // O(1)
  CHECK_THROWS_AS(validate(sheaf_p2(1, 1, Rat(0))), Error);      // chi = 5/2
  CHECK_THROWS_AS(validate(sheaf_p2(1, 0, Rat(1, 3))), Error);   // ch2 not half-integral
  CHECK_THROWS_AS(validate(sheaf_p1xp1(1, 0, 0, Rat(1, 2))), Error);  // chi not integral
  CHECK_NOTHROW(validate(sheaf_p1xp1(2, 1, -1, Rat(-3))));
}

TEST_CASE("printing conventions") {
  CHECK(sheaf_str(sheaf_p2(2, -1, Rat(1, 2))) == "(2,-1,1/2)");
  // Degree order (deg_H, deg_F) on the product surface.
  CHECK(sheaf_str(sheaf_p1xp1(2, 0, -1, Rat(-1))) == "(2,(0,-1),-1)");
  CHECK(sheaf_str(sheaf_p1(1, 3)) == "(1,3)");
  CHECK(surface_parse("P1xP1") == Surface::P1xP1);
  CHECK_THROWS_AS(surface_parse("P3"), Error);
}

TEST_CASE("Hilbert polynomials evaluate to twisted Euler characteristics") {
  // Pinned: P_O(t) = (t+1)(t+2)/2 on the plane with the line polarization.
  CHECK(hilbert_polynomial(line_bundle(Surface::P2, 0), {1, 1}) ==
        rp({Rat(1), Rat(3, 2), Rat(1, 2)}));
  CHECK(hilbert_polynomial(sheaf_p1(1, 0), {1, 1}) == rp({Rat(1), Rat(1)}));
  CHECK(hilbert_polynomial(line_bundle_p1xp1(1, 2), {1, 1}) == rp({Rat(6), Rat(5), Rat(1)}));

  std::mt19937_64 rng(42);
  for (Surface s : {Surface::P1, Surface::P2, Surface::P1xP1}) {
    for (int trial = 0; trial < 40; ++trial) {
      SheafClass v = random_class(s, rng);
      Polarization A{1 + static_cast<i64>(rng() % 3), 1 + static_cast<i64>(rng() % 3)};
      RatPoly p = hilbert_polynomial(v, A);
      CHECK(p.coeff(0) == chi(v));
      for (i64 k = -3; k <= 3; ++k) {
        // O(kA) for A = aH + bF has deg_H = kb and deg_F = ka.
        SheafClass w = s == Surface::P1xP1 ? twist_p1xp1(v, k * A.b, k * A.a)
                                           : twist_p1_or_p2(v, k * A.a);
        CHECK(p.eval(Rat(k)) == chi(w));
      }
    }
  }
}

TEST_CASE("Euler pairing against line-bundle differences and Serre duality") {
  std::mt19937_64 rng(7);
  CHECK(euler_pairing(line_bundle(Surface::P2, 0), line_bundle(Surface::P2, 1)) == 3);
  for (Surface s : {Surface::P1, Surface::P2, Surface::P1xP1}) {
    SheafClass omega = canonical_class(s);
    int sign = s == Surface::P1 ? -1 : 1;
    for (int trial = 0; trial < 30; ++trial) {
      SheafClass v = random_class(s, rng), w = random_class(s, rng);
      // chi(O, w) = chi(w).
      SheafClass o = s == Surface::P1xP1 ? line_bundle_p1xp1(0, 0) : line_bundle(s, 0);
      CHECK(euler_pairing(o, w) == chi_int(w));
      // Serre duality: chi(v, w) = (-1)^dim chi(w, v tensor omega).
      CHECK(euler_pairing(v, w) == sign * euler_pairing(w, tensor(v, omega)));
      // Twist invariance of the pairing.
      SheafClass L = s == Surface::P1xP1 ? line_bundle_p1xp1(1, -1) : line_bundle(s, 1);
      CHECK(euler_pairing(twist(v, L), twist(w, L)) == euler_pairing(v, w));
    }
  }
  CHECK(chi_int(canonical_class(Surface::P1)) == -1);
  CHECK(chi_int(canonical_class(Surface::P2)) == 1);
  CHECK(chi_int(canonical_class(Surface::P1xP1)) == 1);
}

TEST_CASE("discriminant: value, twist invariance, wrong surface") {
  for (i64 k = -3; k <= 3; ++k) {
    CHECK(bogomolov_delta(line_bundle(Surface::P2, k)) == 0);
    CHECK(bogomolov_delta(line_bundle_p1xp1(k, 2)) == 0);
  }
  // Ideal sheaf of ell points: Delta = 2 ell.
  for (i64 ell = 1; ell <= 5; ++ell)
    CHECK(bogomolov_delta(sheaf_p2(1, 0, Rat(-ell))) == 2 * ell);
  CHECK_THROWS_AS(bogomolov_delta(sheaf_p1(1, 0)), Error);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    for (Surface s : {Surface::P2, Surface::P1xP1}) {
      SheafClass v = random_class(s, rng);
      SheafClass L = s == Surface::P1xP1
                         ? line_bundle_p1xp1(static_cast<i64>(rng() % 7) - 3,
                                             static_cast<i64>(rng() % 7) - 3)
                         : line_bundle(s, static_cast<i64>(rng() % 7) - 3);
      CHECK(bogomolov_delta(twist(v, L)) == bogomolov_delta(v));
    }
  }
}

TEST_CASE("dictionary matrices invert each other and match the derived-bundle pairing") {
  std::mt19937_64 rng(2024);
  for (const CollectionId& c : all_collections()) {
    Surface s = collection_surface(c);
    int n = collection_size(c);
    CHECK(static_cast<int>(vertex_names(c).size()) == n);
    CHECK(collection_parse(collection_str(c)) == c);

    std::vector<SheafClass> duals = dual_collection_classes(c);
    REQUIRE(static_cast<int>(duals.size()) == n);
    int sign = psi_sign(c);

    for (int trial = 0; trial < 60; ++trial) {
      SheafClass v = random_class(s, rng);
      I64Vec d = to_dim_vector(v, c);
      REQUIRE(static_cast<int>(d.size()) == n);
      // Round trip through the inverse matrix.
      CHECK(same_class(from_dim_vector(d, c), v));
      // Independent derivation of each coordinate through the Euler pairing
      // with the dual collection.
      for (int i = 0; i < n; ++i)
        CHECK(Int(d[static_cast<size_t>(i)]) == sign * euler_pairing(duals[static_cast<size_t>(i)], v));
    }
  }
}

TEST_CASE("pinned dictionary vectors") {
  // Ideal sheaf of one point on the plane.
  SheafClass ideal = sheaf_p2(1, 0, Rat(-1));
  CHECK(to_dim_vector(ideal, {CollectionKind::P2_first, 0}) == I64Vec{1, 3, 1});
  CHECK(to_dim_vector(ideal, {CollectionKind::P2_second, 0}) == I64Vec{1, 1, 0});

  // Trivial and (1,-1) twists on the product surface.
  CHECK(to_dim_vector(line_bundle_p1xp1(0, 0), {CollectionKind::P1xP1_std, 0}) ==
        I64Vec{0, 1, 0, 0});
  CHECK(to_dim_vector(line_bundle_p1xp1(1, -1), {CollectionKind::P1xP1_std, 0}) ==
        I64Vec{0, 0, 1, 0});

  // Ideal sheaf of one point on the product surface.
  SheafClass ideal2 = sheaf_p1xp1(1, 0, 0, Rat(-1));
  CHECK(to_dim_vector(ideal2, {CollectionKind::P1xP1_std, 0}) == I64Vec{1, 2, 1, 1});

  // Window k on the line: O(k) is the right-hand simple, while O(k-1) only
  // enters shifted, so its class is minus a simple.
  for (i64 k : {-2, 0, 3}) {
    CollectionId c{CollectionKind::P1_k, k};
    CHECK(to_dim_vector(line_bundle(Surface::P1, k), c) == I64Vec{0, 1});
    CHECK(to_dim_vector(line_bundle(Surface::P1, k - 1), c) == I64Vec{-1, 0});
    CHECK(to_dim_vector(sheaf_p1(0, 1), c) == I64Vec{1, 1});  // a point
  }
}

TEST_CASE("weight arrays represent the sigma pairings") {
  std::mt19937_64 rng(5);
  for (const CollectionId& c : all_collections()) {
    Surface s = collection_surface(c);
    for (int trial = 0; trial < 40; ++trial) {
      SheafClass v = random_class(s, rng), w = random_class(s, rng);
      Polarization A{1 + static_cast<i64>(rng() % 3), 1 + static_cast<i64>(rng() % 3)};
      ThetaArrays th = theta_arrays(v, c, A);
      I64Vec dw = to_dim_vector(w, c);
      Weight theta_m, theta_chi;
      for (const Rat& x : th.theta_m) theta_m.push_back(Poly<Rat>::constant(x));
      for (const Rat& x : th.theta_chi) theta_chi.push_back(Poly<Rat>::constant(x));
      CHECK(weight_pairing(theta_m, dw) == Poly<Rat>::constant(sigma_m(v, w, A)));
      CHECK(weight_pairing(theta_chi, dw) == Poly<Rat>::constant(sigma_chi(v, w)));
      CHECK(weight_pairing(th.theta_g, dw) == sigma_g(v, w, A));
      // The weight kills its own class.
      CHECK(weight_pairing(th.theta_g, to_dim_vector(v, c)).is_zero());
    }
  }
}

TEST_CASE("pinned weight arrays") {
  Polarization H{1, 1};
  SheafClass ideal = sheaf_p2(1, 0, Rat(-1));
  ThetaArrays first = theta_arrays(ideal, {CollectionKind::P2_first, 0}, H);
  CHECK(first.theta_g == std::vector<RatPoly>{rp({Rat(0), Rat(-1)}), rp({Rat(-1)}),
                                              rp({Rat(3), Rat(1)})});
  ThetaArrays second = theta_arrays(ideal, {CollectionKind::P2_second, 0}, H);
  CHECK(second.theta_g == std::vector<RatPoly>{rp({Rat(0), Rat(-1)}), rp({Rat(0), Rat(1)}),
                                               rp({Rat(1)})});

  SheafClass m4 = sheaf_p2(4, -2, Rat(-2));  // chi = 4 - 3 - 2 = -1
  CHECK(chi_int(m4) == -1);
  CHECK(to_dim_vector(m4, {CollectionKind::P2_second, 0}) == I64Vec{1, 3, 1});
  ThetaArrays prime = theta_arrays(m4, {CollectionKind::P2_second, 0}, H);
  CHECK(prime.theta_g == std::vector<RatPoly>{rp({Rat(1), Rat(-2)}), rp({Rat(-2)}),
                                              rp({Rat(5), Rat(2)})});

  // Hilbert-scheme weights on the product surface, generic polarization.
  for (i64 ell = 1; ell <= 4; ++ell) {
    for (Polarization A : {Polarization{1, 1}, Polarization{2, 5}}) {
      SheafClass v = sheaf_p1xp1(1, 0, 0, Rat(-ell));
      ThetaArrays th = theta_arrays(v, {CollectionKind::P1xP1_std, 0}, A);
      CHECK(th.theta_g ==
            std::vector<RatPoly>{rp({Rat(ell - 1), Rat(-A.b)}), rp({Rat(-ell)}),
                                 rp({Rat(1 - ell), Rat(A.b - A.a)}), rp({Rat(ell + 1), Rat(A.a)})});
    }
  }
}

TEST_CASE("region membership on the plane") {
  CollectionId first{CollectionKind::P2_first, 0};
  CollectionId second{CollectionKind::P2_second, 0};
  Polarization H{1, 1};

  RegionFlags f = region_membership(sheaf_p2(1, 0, Rat(-1)), first, H);
  CHECK(f.in_r);
  CHECK(f.in_s);
  CHECK(f.in_rg);
  CHECK(f.in_rtilde);
  CHECK_FALSE(region_membership(sheaf_p2(1, 1, Rat(1, 2)), first, H).in_r);
  CHECK_FALSE(region_membership(sheaf_p2(2, -2, Rat(0)), first, H).in_r);
  CHECK(region_membership(sheaf_p2(3, 2, Rat(0)), first, H).in_r);

  CHECK(region_membership(sheaf_p2(2, -1, Rat(-1, 2)), second, H).in_r);
  CHECK_FALSE(region_membership(sheaf_p2(1, 0, Rat(-1)), second, H).in_r);  // slope 0
  CHECK_FALSE(region_membership(sheaf_p2(2, 1, Rat(1, 2)), second, H).in_r);  // positive slope
  CHECK_FALSE(region_membership(sheaf_p2(2, -2, Rat(1)), second, H).in_r);  // slope -1

  CollectionId prod{CollectionKind::P1xP1_std, 0};
  CHECK(region_membership(sheaf_p1xp1(1, 0, 0, Rat(-1)), prod, {1, 1}).in_r);
  CHECK_FALSE(region_membership(sheaf_p1xp1(1, 1, 0, Rat(0)), prod, {1, 1}).in_r);
  // Polarization-dependent: deg_A = 2 - 3 = -1 lands in (-3, 1) for A = (1, 3).
  CHECK(region_membership(sheaf_p1xp1(1, 2, -1, Rat(0)), prod, {1, 3}).in_r);

  CollectionId line{CollectionKind::P1_k, 0};
  CHECK(region_membership(sheaf_p1(2, 1), line, H).in_r);
  CHECK_FALSE(region_membership(sheaf_p1(2, -1), line, H).in_r);
  CHECK(region_membership(sheaf_p1(0, 3), line, H).in_r);  // torsion included
}

TEST_CASE("canonical twists into the regions") {
  Polarization H{1, 1};

  TwistResult t1 = normalize_twist(sheaf_p1(2, 7), {CollectionKind::P1_k, 0}, H);
  CHECK(t1.m == -3);
  CHECK(t1.twisted.deg() == 1);
  CHECK(region_membership(t1.twisted, {CollectionKind::P1_k, 0}, H).in_r);

  TwistResult t2 = normalize_twist(line_bundle(Surface::P2, 5), {CollectionKind::P2_first, 0}, H);
  CHECK(t2.m == -5);
  CHECK(same_class(t2.twisted, line_bundle(Surface::P2, 0)));

  // Zero-slope classes enter the second region exactly when chi < rk.
  TwistResult t3 = normalize_twist(sheaf_p2(1, 0, Rat(-1)), {CollectionKind::P2_second, 0}, H);
  CHECK(t3.m == 0);
  CHECK_THROWS_AS(normalize_twist(sheaf_p2(1, 0, Rat(0)), {CollectionKind::P2_second, 0}, H),
                  Error);  // the trivial bundle has no second-region twist

  TwistResult t4 = normalize_twist(sheaf_p1xp1(1, 4, -2, Rat(0)), {CollectionKind::P1xP1_std, 0},
                                   {1, 1});
  CHECK(same_class(t4.twisted, twist_p1xp1(sheaf_p1xp1(1, 4, -2, Rat(0)), t4.m, t4.n)));
  CHECK(region_membership(t4.twisted, {CollectionKind::P1xP1_std, 0}, {1, 1}).in_r);

  CHECK_THROWS_AS(normalize_twist(sheaf_p2(0, 1, Rat(0)), {CollectionKind::P2_first, 0}, H),
                  Error);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    SheafClass v = random_class(Surface::P2, rng);
    TwistResult t = normalize_twist(v, {CollectionKind::P2_first, 0}, H);
    CHECK(region_membership(t.twisted, {CollectionKind::P2_first, 0}, H).in_r);
    CHECK(same_class(t.twisted, twist_p1_or_p2(v, t.m)));
  }
}

TEST_CASE("Gieseker comparison of classes matches the Hilbert-polynomial preorder") {
  std::mt19937_64 rng(77);
  for (Surface s : {Surface::P1, Surface::P2, Surface::P1xP1}) {
    for (int trial = 0; trial < 60; ++trial) {
      SheafClass v = random_class(s, rng), w = random_class(s, rng);
      Polarization A{1 + static_cast<i64>(rng() % 2), 1 + static_cast<i64>(rng() % 2)};
      GiesekerOrder direct =
          gieseker_compare(hilbert_polynomial(v, A), hilbert_polynomial(w, A));
      int via_sigma = lex_sign(sigma_g(v, w, A));
      if (direct == GiesekerOrder::StrictlyLess) CHECK(via_sigma < 0);
      if (direct == GiesekerOrder::StrictlyGreater) CHECK(via_sigma > 0);
      if (direct == GiesekerOrder::Equivalent) CHECK(via_sigma == 0);
    }
  }
}
