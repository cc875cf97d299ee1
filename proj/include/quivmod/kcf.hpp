#pragma once

#include "quivmod/factor.hpp"
#include "quivmod/matrix.hpp"
#include "quivmod/quiver.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quivmod {

enum class StabStatus { Stable, StrictlySemistable, Unstable };
const char* stab_status_name(StabStatus s);

// A matrix pencil (f0, f1): two maps V_source -> V_target of equal shape,
// i.e. a representation of the two-arrow Kronecker quiver.
template <class K>
struct Pencil {
  Matrix<K> f0;
  Matrix<K> f1;

  Pencil(Matrix<K> a, Matrix<K> b) : f0(std::move(a)), f1(std::move(b)) {
    if (f0.rows() != f1.rows() || f0.cols() != f1.cols())
      fail(Errc::ShapeMismatch, "pencil members must have equal shape");
  }
  int source_dim() const { return f0.cols(); }
  int target_dim() const { return f0.rows(); }
};

enum class BlockKind {
  ZeroSource,        // (1, 0): a source line killed by both maps
  ZeroTarget,        // (0, 1): a target line missed by both maps
  RowBlock,          // L_n^T, (n+1, n): f0 = [I|0], f1 = [0|I]
  ColumnBlock,       // L_n,   (n, n+1): f0 = [I;0], f1 = [0;I]
  Jordan,            // (n, n): (I_n, J_n(lambda)), ones on the superdiagonal
  GeneralizedJordan, // (eh, eh): (I, companion(q^h)), q irreducible of degree e
  JordanAtInfinity,  // (n, n): (J_n(0)^T, I_n)
};
const char* block_kind_name(BlockKind k);

template <class K>
struct KcfBlock {
  BlockKind kind = BlockKind::Jordan;
  int size = 1;    // n for Jordan/JordanAtInfinity/ColumnBlock/RowBlock; h for GeneralizedJordan
  K eigenvalue;    // Jordan only
  Poly<K> minpoly; // GeneralizedJordan only: monic irreducible q

  explicit KcfBlock(const K& exemplar) : eigenvalue(f_zero(exemplar)), minpoly(exemplar) {}

  int source_dim() const;
  int target_dim() const;
  bool same_label(const KcfBlock& o) const;
};

template <class K>
std::string block_str(const KcfBlock<K>& b);

// The canonical pencil with the given blocks on the diagonal, in order.
template <class K>
Pencil<K> canonical_pencil(const std::vector<KcfBlock<K>>& blocks, const K& exemplar);

template <class K>
struct KcfResult {
  std::vector<KcfBlock<K>> blocks;  // sorted canonically
  Matrix<K> basis_source;           // columns: adapted basis of the source
  Matrix<K> basis_target;           // columns: adapted basis of the target
  // Invariant: f_j * basis_source == basis_target * D_j where (D_0, D_1) is
  // canonical_pencil(blocks); checked before returning.
};

// Column ranges of each block inside the adapted bases.
struct BlockSpan {
  int src_offset = 0, src_dim = 0, tgt_offset = 0, tgt_dim = 0;
};
template <class K>
std::vector<BlockSpan> block_spans(const KcfResult<K>& r);

// Exact Kronecker canonical form. Over F_p the regular part needs an
// invertible member among the p+1 rational pencil members; if none exists the
// field is reported as too small (never an issue when p >= matrix size).
template <class K>
KcfResult<K> kcf(const Pencil<K>& pencil);

template <class K>
Pencil<K> pencil_from_representation(const Representation<K>& r);
template <class K>
Representation<K> representation_from_pencil(const Pencil<K>& p);

// ---------------------------------------------------------------------------
// Stability and the splitting dictionary on the projective line
// ---------------------------------------------------------------------------

// King stability of the Kronecker representation with respect to the weight
// orthogonal to its own dimension vector (primitive (-d_0, d_{-1})).
struct BlockStability {
  StabStatus status = StabStatus::Stable;
  int destabilizer_block = -1;        // index into blocks when Unstable
  bool stable_over_base_field = false;
  bool stable_geometrically = false;  // after extending to the algebraic closure
  std::string note;
};

template <class K>
BlockStability stability_from_blocks(const std::vector<KcfBlock<K>>& blocks);

// Sheaf summands on the projective line corresponding to the blocks of a
// Kronecker complex for the k-th dictionary window. RowBlock or ZeroSource
// blocks mean the complex is not a sheaf (error NotASheaf).
struct SheafSummand {
  enum class Kind { LineBundle, FatPoint };
  Kind kind = Kind::LineBundle;
  i64 degree = 0;                // LineBundle: O(degree)
  int length = 0;                // FatPoint: multiplicity over the closed point
  int point_degree = 1;          // FatPoint: degree of the closed point
  std::string point;             // "[a:b]" for rational points, else "V(q)"
  std::string defining_poly;     // FatPoint on a non-rational closed point
};

std::string summand_str(const SheafSummand& s);

template <class K>
std::vector<SheafSummand> blocks_to_sheaf(const std::vector<KcfBlock<K>>& blocks, i64 k);

}  // namespace quivmod
