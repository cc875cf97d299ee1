#pragma once

#include "quivmod/poly.hpp"

#include <random>
#include <vector>

namespace quivmod {

template <class K>
struct PolyPower {
  Poly<K> base;  // monic irreducible
  int exponent = 1;
};

// Monic irreducible factorization of f over F_p (Cantor-Zassenhaus) or over Q
// (rational roots + modular irreducibility certificates + a complete bounded
// Kronecker divisor search). The product of base^exponent equals f.monic().
// Output order is deterministic: by degree, then by coefficient sequence.
std::vector<PolyPower<Fp>> factor_poly(const Poly<Fp>& f, std::mt19937_64& rng);
std::vector<PolyPower<Rat>> factor_poly(const Poly<Rat>& f);

// Deterministic irreducibility test over F_p (Rabin).
bool is_irreducible(const Poly<Fp>& f);

}  // namespace quivmod
