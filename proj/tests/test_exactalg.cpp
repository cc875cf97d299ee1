#include "doctest.h"

#include "quivmod/factor.hpp"
#include "quivmod/matrix.hpp"
#include "quivmod/poly.hpp"

#include <random>

using namespace quivmod;

namespace {

RatPoly P(std::vector<Rat> c) { return rp(std::move(c)); }

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  return Rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing and printing are canonical") {
  CHECK(rat_str(rat_parse("3/6")) == "1/2");
  CHECK(rat_str(rat_parse("-4/2")) == "-2");
  CHECK(rat_str(rat_parse("  7 ")) == "7");
  CHECK(rat_str(rat_parse("-0/5")) == "0");
  CHECK(rat_parse("5/3") == Rat(5, 3));
  CHECK(int_parse("-12") == Int(-12));
  CHECK_THROWS_AS(rat_parse("1/0"), Error);
  CHECK_THROWS_AS(rat_parse("a/2"), Error);
  CHECK_THROWS_AS(rat_parse(""), Error);
  CHECK_THROWS_AS(int_parse("1/2"), Error);
}

TEST_CASE("floor_div rounds toward minus infinity") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(floor_div(Int(-7), Int(-2)) == 3);
  CHECK(floor_div(Int(6), Int(3)) == 2);
  CHECK(floor_div(Int(-6), Int(3)) == -2);
}

TEST_CASE("prime field arithmetic") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));  // 7 * 13

  for (i64 a = 1; a < 7; ++a) {
    Fp x(a, 7);
    CHECK((x * x.inv()).v == 1);
    CHECK(x.pow(Int(6)).v == 1);  // Fermat
  }
  CHECK((Fp(3, 7) + Fp(5, 7)).v == 1);
  CHECK((Fp(2, 7) - Fp(5, 7)).v == 4);
  CHECK((-Fp(0, 7)).v == 0);
  CHECK(Fp(-1, 7).v == 6);
  CHECK_THROWS_AS(Fp(0, 7).inv(), Error);
}

TEST_CASE("polynomial division, gcd, calculus") {
  RatPoly a = P({Rat(-1), Rat(0), Rat(0), Rat(1)});  // t^3 - 1
  RatPoly b = P({Rat(-1), Rat(1)});                  // t - 1
  auto [q, r] = poly_divmod(a, b);
  CHECK(r.is_zero());
  CHECK(q == P({Rat(1), Rat(1), Rat(1)}));
  CHECK(q * b + r == a);

  // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1, returned monic.
  RatPoly g = poly_gcd(P({Rat(-1), Rat(0), Rat(1)}), P({Rat(1), Rat(-2), Rat(1)}));
  CHECK(g == b);

  RatPoly p = P({Rat(5), Rat(-3), Rat(0), Rat(2)});  // 2t^3 - 3t + 5
  CHECK(p.derivative() == P({Rat(-3), Rat(0), Rat(6)}));
  CHECK(p.eval(Rat(2)) == Rat(15));
  // p(t + c) evaluated at x equals p(x + c).
  RatPoly shifted = p.shift(Rat(3, 2));
  CHECK(shifted.eval(Rat(1, 2)) == p.eval(Rat(2)));
  CHECK(shifted.degree() == p.degree());

  CHECK(RatPoly(Rat(0)).degree() == -1);
  CHECK_THROWS_AS(poly_divmod(a, rp()), Error);
}

TEST_CASE("polynomial division over a prime field") {
  Fp z(0, 5);
  Poly<Fp> f(z, {Fp(1, 5), Fp(0, 5), Fp(1, 5)});  // x^2 + 1 = (x+2)(x+3) mod 5
  Poly<Fp> d(z, {Fp(2, 5), Fp(1, 5)});
  auto [q, r] = poly_divmod(f, d);
  CHECK(r.is_zero());
  CHECK(q == Poly<Fp>(z, {Fp(3, 5), Fp(1, 5)}));
}

TEST_CASE("lexicographic comparison reads from the top coefficient") {
  CHECK(lex_compare(P({Rat(100), Rat(5)}), P({Rat(0), Rat(0), Rat(1)})) < 0);
  CHECK(lex_compare(P({Rat(0), Rat(2)}), P({Rat(9), Rat(1)})) > 0);
  CHECK(lex_compare(P({Rat(1), Rat(2)}), P({Rat(3), Rat(2)})) < 0);
  CHECK(lex_compare(P({Rat(1)}), P({Rat(1)})) == 0);
  CHECK(lex_sign(P({Rat(7), Rat(-1)})) == -1);
  CHECK(lex_sign(rp()) == 0);
}

TEST_CASE("sigma polynomial is antisymmetric and vanishes on proportional pairs") {
  RatPoly p = P({Rat(1), Rat(2), Rat(3)});
  RatPoly q = P({Rat(4), Rat(0), Rat(1)});
  CHECK(sigma_poly(p, q) == -sigma_poly(q, p));
  CHECK(sigma_poly(p, p).is_zero());
  CHECK(sigma_poly(p, Rat(7) * p).is_zero());
  // sigma(t+1, t+2) = (t+1) - (t+2) = -1.
  CHECK(sigma_poly(P({Rat(1), Rat(1)}), P({Rat(2), Rat(1)})) == P({Rat(-1)}));
}

TEST_CASE("ordering routes agree on hand-picked pairs") {
  RatPoly o0 = P({Rat(1), Rat(1)});                    // t + 1
  RatPoly o1 = P({Rat(2), Rat(1)});                    // t + 2
  RatPoly surf = P({Rat(1), Rat(3, 2), Rat(1, 2)});    // (t+1)(t+2)/2
  RatPoly twice = P({Rat(2), Rat(2)});
  RatPoly quad = P({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});

  for (GiesekerOrder expected :
       {gieseker_by_sigma(o0, o1), gieseker_by_degree_profile(o0, o1),
        gieseker_by_cross_scaling(o0, o1), gieseker_compare(o0, o1)})
    CHECK(expected == GiesekerOrder::StrictlyLess);

  // Higher degree sorts strictly below: deg 2 < deg 1 in the preorder.
  CHECK(gieseker_compare(surf, o1) == GiesekerOrder::StrictlyLess);
  CHECK(gieseker_by_degree_profile(surf, o1) == GiesekerOrder::StrictlyLess);
  CHECK(gieseker_by_cross_scaling(surf, o1) == GiesekerOrder::StrictlyLess);
  CHECK(gieseker_compare(o1, surf) == GiesekerOrder::StrictlyGreater);
  CHECK(gieseker_compare(quad, o0) == GiesekerOrder::StrictlyLess);

  // Equivalence is exactly proportionality.
  CHECK(gieseker_compare(o0, twice) == GiesekerOrder::Equivalent);
  CHECK(is_proportional(o0, twice));
  CHECK_FALSE(is_proportional(o0, o1));

  // Same slope, smaller constant term: (2t+1) strictly below 2*(t+1).
  CHECK(gieseker_compare(P({Rat(1), Rat(2)}), twice) == GiesekerOrder::StrictlyLess);

  CHECK_THROWS_AS(require_admissible(rp()), Error);
  CHECK_THROWS_AS(require_admissible(P({Rat(1), Rat(-1)})), Error);
  CHECK_NOTHROW(require_admissible(P({Rat(-5), Rat(1)})));
}

TEST_CASE("rational factorization is exact and deterministically ordered") {
  // t^2 - 1 = (t - 1)(t + 1).
  auto f1 = factor_poly(P({Rat(-1), Rat(0), Rat(1)}));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].base == P({Rat(-1), Rat(1)}));
  CHECK(f1[0].exponent == 1);
  CHECK(f1[1].base == P({Rat(1), Rat(1)}));

  // 4 (t - 1/2)^2 (t^2 + 1): repeated rational root plus an irreducible quadratic.
  RatPoly f = Rat(4) * poly_pow(P({Rat(-1, 2), Rat(1)}), 2) * P({Rat(1), Rat(0), Rat(1)});
  auto f2 = factor_poly(f);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].base == P({Rat(-1, 2), Rat(1)}));
  CHECK(f2[0].exponent == 2);
  CHECK(f2[1].base == P({Rat(1), Rat(0), Rat(1)}));
  CHECK(f2[1].exponent == 1);
  RatPoly re = Poly<Rat>::constant(Rat(1));
  for (const auto& pp : f2) re = re * poly_pow(pp.base, pp.exponent);
  CHECK(re == f.monic());

  // x^4 + 1 is irreducible over the rationals (no linear or quadratic factor).
  auto f3 = factor_poly(P({Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)}));
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].base.degree() == 4);
}

TEST_CASE("prime field factorization splits according to the field") {
  std::mt19937_64 rng(12345);
  Fp z3(0, 3), z5(0, 5);

  // x^2 + 1 stays irreducible over F_3 ...
  auto over3 = factor_poly(Poly<Fp>(z3, {Fp(1, 3), Fp(0, 3), Fp(1, 3)}), rng);
  REQUIRE(over3.size() == 1);
  CHECK(over3[0].base.degree() == 2);

  // ... and splits as (x + 2)(x + 3) over F_5.
  auto over5 = factor_poly(Poly<Fp>(z5, {Fp(1, 5), Fp(0, 5), Fp(1, 5)}), rng);
  REQUIRE(over5.size() == 2);
  CHECK(over5[0].base == Poly<Fp>(z5, {Fp(2, 5), Fp(1, 5)}));
  CHECK(over5[1].base == Poly<Fp>(z5, {Fp(3, 5), Fp(1, 5)}));

  // Random reassembly: product of the factors returns the monic input.
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Fp> coeffs;
    int deg = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i <= deg; ++i) coeffs.push_back(Fp(static_cast<i64>(rng() % 5), 5));
    Poly<Fp> f(z5, coeffs);
    if (f.degree() < 1) continue;
    auto factors = factor_poly(f, rng);
    Poly<Fp> re = Poly<Fp>::constant(Fp(1, 5));
    for (const auto& pp : factors) re = re * poly_pow(pp.base, pp.exponent);
    CHECK(re == f.monic());
  }
}

TEST_CASE("matrix rank, inverse, solve, kernel over the rationals") {
  Rat z(0);
  Matrix<Rat> a = Matrix<Rat>::from_rows(z, {{Rat(1), Rat(2)}, {Rat(3), Rat(4)}});
  CHECK(rank(a) == 2);
  CHECK(det(a) == Rat(-2));
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(*inv == Matrix<Rat>::from_rows(z, {{Rat(-2), Rat(1)}, {Rat(3, 2), Rat(-1, 2)}}));
  CHECK(a * *inv == Matrix<Rat>::identity(2, z));

  Matrix<Rat> sing = Matrix<Rat>::from_rows(z, {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
  CHECK(rank(sing) == 1);
  CHECK_FALSE(inverse(sing).has_value());
  CHECK(det(sing) == Rat(0));

  // Inconsistent system has no solution; consistent one checks out.
  Matrix<Rat> b_bad = Matrix<Rat>::from_rows(z, {{Rat(1)}, {Rat(3)}});
  CHECK_FALSE(solve(sing, b_bad).has_value());
  Matrix<Rat> b_ok = Matrix<Rat>::from_rows(z, {{Rat(1)}, {Rat(2)}});
  auto x = solve(sing, b_ok);
  REQUIRE(x.has_value());
  CHECK(sing * *x == b_ok);

  Matrix<Rat> wide = Matrix<Rat>::from_rows(z, {{Rat(1), Rat(2), Rat(3)}});
  Matrix<Rat> ker = kernel_basis(wide);
  CHECK(ker.cols() == 2);
  CHECK((wide * ker).is_zero());
  CHECK(rank(ker) == 2);

  Matrix<Rat> sup = Matrix<Rat>::from_rows(z, {{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}});
  Matrix<Rat> inside = Matrix<Rat>::from_rows(z, {{Rat(2), Rat(3), Rat(5)}});
  Matrix<Rat> outside = Matrix<Rat>::from_rows(z, {{Rat(1), Rat(0), Rat(0)}});
  CHECK(row_space_contains(sup, inside));
  CHECK_FALSE(row_space_contains(sup, outside));
}

TEST_CASE("random matrix identities over F_5 and the rationals") {
  std::mt19937_64 rng(999);
  Fp z5(0, 5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    Matrix<Fp> m(n, n, z5);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = Fp(static_cast<i64>(rng() % 5), 5);
    auto inv = inverse(m);
    bool full_rank = rank(m) == n;
    CHECK(inv.has_value() == full_rank);
    CHECK(full_rank == !f_is_zero(det(m)));
    if (inv) CHECK(m * *inv == Matrix<Fp>::identity(n, z5));
    Matrix<Fp> ker = kernel_basis(m);
    CHECK(ker.cols() == n - rank(m));
    CHECK((m * ker).is_zero());
  }
  // Rational random sanity: (A B)^T = B^T A^T.
  Rat z(0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Rat> a(2, 3, z), b(3, 2, z);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) a.at(i, j) = random_rat(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) b.at(i, j) = random_rat(rng);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
  }
}
