#pragma once

#include "quivmod/kcf.hpp"
#include "quivmod/quiver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quivmod {

// A stability weight: one polynomial per vertex. Constant weights are just
// degree-zero polynomials; comparisons against 0 are lexicographic from the
// top coefficient.
using Weight = std::vector<RatPoly>;

Weight weight_from_ints(const I64Vec& w);
std::string weight_str(const Weight& w);

// theta . d = sum_i theta_i d_i.
RatPoly weight_pairing(const Weight& theta, const I64Vec& d);
int weight_sign(const Weight& theta, const I64Vec& d);  // lex sign of the pairing

enum class StabMode { Auto, Exhaustive, KroneckerCanonical };

inline constexpr i64 kDefaultBudget = 5'000'000;

template <class K>
struct SubrepWitness {
  I64Vec dims;
  std::vector<Matrix<K>> bases;  // rows: basis vectors of W_i in ambient coordinates
  RatPoly pairing = rp();
};

template <class K>
struct StabilityVerdict {
  StabStatus status = StabStatus::Stable;
  bool vacuous = false;  // the weight does not vanish on the total dimension vector
  std::optional<SubrepWitness<K>> witness;
  bool mod_p_evidence = false;  // representation was reduced from rational data
  std::string note;
};

// Checks that a claimed witness really is an arrow-invariant subrepresentation
// with the stated dimensions and pairing; throws Internal otherwise.
template <class K>
void verify_subrep(const Representation<K>& r, const Weight& theta,
                   const SubrepWitness<K>& w);

// King (semi)stability: semistable iff theta.dims = 0 and theta.dim W >= 0 for
// every subrepresentation W. Exhaustive mode enumerates subspace tuples in
// reduced-row-echelon order (finite fields only); KroneckerCanonical decides
// through the pencil block structure (2-arrow Kronecker quiver, any field).
// Auto picks KroneckerCanonical for K2 and Exhaustive otherwise. The first
// destabilizer in enumeration order is returned for Unstable; a zero-pairing
// witness for StrictlySemistable.
template <class K>
StabilityVerdict<K> find_destabilizer(const Representation<K>& r, const Weight& theta,
                                      StabMode mode = StabMode::Auto,
                                      i64 budget = kDefaultBudget);

// Harder-Narasimhan filtration for the slope mu_theta(W) = theta.dim W / sum(dim W):
// the unique chain 0 < A_1 < ... < A_s = V whose factors are semistable with
// strictly increasing slopes. A_1 is the minimal-slope subrepresentation of
// maximal total dimension.
template <class K>
struct HnStep {
  I64Vec dims;                   // dimension vector of A_i
  std::vector<Matrix<K>> bases;  // rows: basis of A_i at each vertex, ambient coordinates
  I64Vec factor_dims;            // dims of A_i / A_{i-1}
  RatPoly factor_slope = rp();   // mu_theta of the factor
};

template <class K>
std::vector<HnStep<K>> hn_filtration(const Representation<K>& r, const Weight& theta,
                                     StabMode mode = StabMode::Auto,
                                     i64 budget = kDefaultBudget);

// ---------------------------------------------------------------------------
// Walls, numerical equivalence, integral weights (field-free)
// ---------------------------------------------------------------------------

// The wall of a direction d' <= d (componentwise, d' nonzero, d not an integer
// multiple of d') is W(d') = {theta in d-perp : theta . d' = 0}. One wall per
// primitive direction; `hyperplane` is a canonical label of the cut locus
// inside d-perp (directions projecting to parallel normals share it).
struct Wall {
  I64Vec normal;      // primitive d'
  I64Vec hyperplane;  // primitive, sign-normalized projection of d' onto d-perp
};

std::vector<Wall> walls(const I64Vec& d);
int distinct_hyperplanes(const std::vector<Wall>& ws);

// True iff theta1 . d' and theta2 . d' have the same lex sign for every
// 0 <= d' <= d. Requires both weights to vanish on d (NotOrthogonal).
bool numerically_equivalent(const Weight& theta1, const Weight& theta2, const I64Vec& d);

// For a weight of polynomial degree <= 1 vanishing on d, returns a primitive
// integer weight in the same numerical-equivalence class.
I64Vec integral_weight_in_class(const Weight& theta, const I64Vec& d);

// True iff theta . d' != 0 for every 0 != d' < d.
bool is_theta_coprime(const Weight& theta, const I64Vec& d);

}  // namespace quivmod
