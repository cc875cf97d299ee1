#include "quivmod/fp.hpp"

namespace quivmod {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 Fp::mulmod(i64 a, i64 b, i64 p) {
  // Moduli here are small primes, so 128-bit intermediate products suffice.
  return static_cast<i64>((static_cast<__int128>(a) * b) % p);
}

Fp Fp::inv() const {
  if (v == 0) fail(Errc::ZeroInput, "division by zero in F_" + std::to_string(p));
  // Extended Euclid on (v, p).
  i64 old_r = v, r = p;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) fail(Errc::Internal, "non-invertible element: modulus not prime?");
  return Fp(old_s, p);
}

Fp Fp::pow(Int e) const {
  if (e < 0) return inv().pow(-e);
  Fp base = *this;
  Fp acc = Fp(1, p);
  while (e > 0) {
    if ((e & 1) != 0) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace quivmod
