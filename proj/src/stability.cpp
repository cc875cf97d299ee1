#include "quivmod/stability.hpp"

#include "quivmod/fp.hpp"

#include <algorithm>
#include <type_traits>
#include <numeric>
#include <utility>

namespace quivmod {

namespace {

bool is_kronecker2(const QuiverPresentation& q) {
  return q.vertex_count() == 2 && q.arrows.size() == 2 && q.relations.empty();
}

i64 total_dim(const I64Vec& d) {
  i64 t = 0;
  for (i64 x : d) t += x;
  return t;
}

// All 0 <= d' <= d in lexicographic order (first component most significant),
// including the zero vector and d itself.  A negative entry makes the box
// empty: no integer x satisfies 0 <= x <= d_i < 0.
std::vector<I64Vec> boxed_vectors(const I64Vec& d) {
  std::vector<I64Vec> out;
  for (i64 x : d)
    if (x < 0) return out;
  I64Vec cur(d.size(), 0);
  while (true) {
    out.push_back(cur);
    size_t i = d.size();
    while (i > 0 && cur[i - 1] == d[i - 1]) cur[--i] = 0;
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

I64Vec primitive_of(I64Vec v) {
  Int g(0);
  for (i64 x : v) g = gcd(g, Int(x < 0 ? -x : x));
  if (g > 1)
    for (i64& x : v) x = static_cast<i64>(Int(Int(x) / g).convert_to<long long>());
  return v;
}

// Sign-normalize so the first nonzero entry is positive.
I64Vec sign_normalized(I64Vec v) {
  for (i64 x : v) {
    if (x > 0) break;
    if (x < 0) {
      for (i64& y : v) y = -y;
      break;
    }
  }
  return v;
}

// Extract a block of basis columns as a row-basis matrix.
template <class K>
Matrix<K> cols_as_rows(const Matrix<K>& m, int off, int cnt) {
  Matrix<K> out(cnt, m.rows(), m.zero_exemplar());
  for (int j = 0; j < cnt; ++j)
    for (int i = 0; i < m.rows(); ++i) out.at(j, i) = m.at(i, off + j);
  return out;
}

template <class K>
Matrix<K> empty_rows(int ambient, const K& ex) {
  return Matrix<K>(0, ambient, ex);
}

// Greedy completion of a row space by standard basis vectors (deterministic).
template <class K>
Matrix<K> row_space_completion(const Matrix<K>& rows) {
  const K& ex = rows.zero_exemplar();
  int n = rows.cols();
  Matrix<K> acc = rows;
  Matrix<K> comp(0, n, ex);
  int r = rank(acc);
  for (int j = 0; j < n && r < n; ++j) {
    Matrix<K> e(1, n, ex);
    e.at(0, j) = f_one(ex);
    Matrix<K> cand = vstack(acc, e);
    if (rank(cand) > r) {
      acc = cand;
      comp = vstack(comp, e);
      ++r;
    }
  }
  if (r != n) fail(Errc::Internal, "row space completion failed");
  return comp;
}

}  // namespace

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

Weight weight_from_ints(const I64Vec& w) {
  Weight out;
  out.reserve(w.size());
  for (i64 x : w) out.push_back(RatPoly::constant(Rat(x)));
  return out;
}

std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += poly_str(w[i]);
  }
  return s + ")";
}

RatPoly weight_pairing(const Weight& theta, const I64Vec& d) {
  if (theta.size() != d.size())
    fail(Errc::DimensionMismatch, "weight has " + std::to_string(theta.size()) +
                                      " entries but the dimension vector has " +
                                      std::to_string(d.size()));
  RatPoly acc = rp();
  for (size_t i = 0; i < d.size(); ++i) acc = acc + Rat(d[i]) * theta[i];
  return acc;
}

int weight_sign(const Weight& theta, const I64Vec& d) { return lex_sign(weight_pairing(theta, d)); }

// ---------------------------------------------------------------------------
// Witness verification (always on: every returned witness passes through here)
// ---------------------------------------------------------------------------

template <class K>
void verify_subrep(const Representation<K>& r, const Weight& theta, const SubrepWitness<K>& w) {
  int n = r.quiver.vertex_count();
  if (static_cast<int>(w.dims.size()) != n || static_cast<int>(w.bases.size()) != n)
    fail(Errc::Internal, "witness has the wrong number of vertices");
  for (int i = 0; i < n; ++i) {
    const Matrix<K>& b = w.bases[static_cast<size_t>(i)];
    if (b.rows() != w.dims[static_cast<size_t>(i)] || b.cols() != r.dims[static_cast<size_t>(i)])
      fail(Errc::Internal, "witness basis has the wrong shape at vertex " + std::to_string(i));
    if (rank(b) != b.rows()) fail(Errc::Internal, "witness basis rows are dependent");
  }
  i64 tot = total_dim(w.dims);
  if (tot == 0 || tot >= total_dim(r.dims))
    fail(Errc::Internal, "witness is not a proper nonzero subrepresentation");
  for (size_t h = 0; h < r.quiver.arrows.size(); ++h) {
    const Arrow& a = r.quiver.arrows[h];
    const Matrix<K>& ws = w.bases[static_cast<size_t>(a.src)];
    const Matrix<K>& wt = w.bases[static_cast<size_t>(a.dst)];
    if (ws.rows() == 0) continue;
    // Rows of ws are source basis vectors; their images must lie in the row
    // space of wt.
    Matrix<K> img = ws * r.mats[h].transpose();
    if (!row_space_contains(wt, img))
      fail(Errc::Internal, "witness is not invariant under arrow " + a.label);
  }
  if (weight_pairing(theta, w.dims) != w.pairing)
    fail(Errc::Internal, "witness pairing does not match its dimension vector");
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration over a finite field
// ---------------------------------------------------------------------------

namespace {

Int gauss_binom(int n, int k, i64 p) {
  if (k < 0 || k > n) return Int(0);
  Int numr(1), denr(1);
  for (int i = 0; i < k; ++i) {
    numr *= boost::multiprecision::pow(Int(p), static_cast<unsigned>(n - i)) - 1;
    denr *= boost::multiprecision::pow(Int(p), static_cast<unsigned>(k - i)) - 1;
  }
  return numr / denr;
}

struct SubF {
  Matrix<Fp> rows;       // k x n reduced row-echelon basis
  std::vector<int> piv;  // pivot columns, ascending
};

// All k-dimensional subspaces of F_p^n as reduced row-echelon bases, ordered
// lexicographically by pivot columns, then by the free entries.
std::vector<SubF> rref_bases(int n, int k, const Fp& ex) {
  std::vector<SubF> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back({Matrix<Fp>(0, n, ex), {}});
    return out;
  }
  i64 p = ex.p;
  std::vector<int> piv(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<size_t>(i)] = i;
  while (true) {
    std::vector<char> ispiv(static_cast<size_t>(n), 0);
    for (int c : piv) ispiv[static_cast<size_t>(c)] = 1;
    std::vector<std::pair<int, int>> freepos;
    for (int i = 0; i < k; ++i)
      for (int j = piv[static_cast<size_t>(i)] + 1; j < n; ++j)
        if (!ispiv[static_cast<size_t>(j)]) freepos.push_back({i, j});
    std::vector<i64> vals(freepos.size(), 0);
    while (true) {
      Matrix<Fp> m(k, n, f_zero(ex));
      for (int i = 0; i < k; ++i) m.at(i, piv[static_cast<size_t>(i)]) = f_one(ex);
      for (size_t t = 0; t < freepos.size(); ++t)
        m.at(freepos[t].first, freepos[t].second) = Fp::raw(vals[t], p);
      out.push_back({std::move(m), piv});
      size_t t = freepos.size();
      while (t > 0 && vals[t - 1] == p - 1) vals[--t] = 0;
      if (t == 0) break;
      ++vals[t - 1];
    }
    int i = k - 1;
    while (i >= 0 && piv[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++piv[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) piv[static_cast<size_t>(j)] = piv[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

// v reduces to zero against an RREF basis iff v lies in its row space.
bool rref_contains(const SubF& w, std::vector<Fp> v) {
  for (int i = 0; i < w.rows.rows(); ++i) {
    int c = w.piv[static_cast<size_t>(i)];
    if (!f_is_zero(v[static_cast<size_t>(c)])) {
      Fp s = v[static_cast<size_t>(c)];
      for (int j = 0; j < w.rows.cols(); ++j)
        v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] - s * w.rows.at(i, j);
    }
  }
  for (const Fp& x : v)
    if (!f_is_zero(x)) return false;
  return true;
}

// Per-vertex caches of all subspaces, generated once per call.
struct SubspaceTables {
  std::vector<std::vector<std::vector<SubF>>> by_vertex_dim;  // [vertex][k] -> list
};

SubspaceTables build_tables(const Representation<Fp>& r, i64 budget) {
  Int total(1);
  i64 p = r.field_exemplar.p;
  for (i64 nd : r.dims) {
    Int cnt(0);
    for (int k = 0; k <= nd; ++k) cnt += gauss_binom(static_cast<int>(nd), k, p);
    total *= cnt;
  }
  if (total > Int(budget))
    fail(Errc::BudgetExceeded, "subspace enumeration needs " + total.str() +
                                   " tuples, over the budget of " + std::to_string(budget));
  SubspaceTables tabs;
  for (i64 nd : r.dims) {
    std::vector<std::vector<SubF>> per;
    for (int k = 0; k <= nd; ++k)
      per.push_back(rref_bases(static_cast<int>(nd), k, r.field_exemplar));
    tabs.by_vertex_dim.push_back(std::move(per));
  }
  return tabs;
}

bool tuple_invariant(const Representation<Fp>& r, const std::vector<const SubF*>& w) {
  for (size_t h = 0; h < r.quiver.arrows.size(); ++h) {
    const Arrow& a = r.quiver.arrows[h];
    const SubF& ws = *w[static_cast<size_t>(a.src)];
    const SubF& wt = *w[static_cast<size_t>(a.dst)];
    for (int i = 0; i < ws.rows.rows(); ++i) {
      if (!rref_contains(wt, r.mats[h].apply(ws.rows.row(i)))) return false;
    }
  }
  return true;
}

// Visits invariant subspace tuples with dimension profile dprime in
// deterministic (vertex-major, reduced-row-echelon) order; stops when the
// callback returns true. Returns whether the callback accepted a tuple.
template <class F>
bool scan_profile(const Representation<Fp>& r, const SubspaceTables& tabs, const I64Vec& dprime,
                  F&& accept) {
  size_t n = dprime.size();
  std::vector<const std::vector<SubF>*> lists(n);
  for (size_t i = 0; i < n; ++i) {
    lists[i] = &tabs.by_vertex_dim[i][static_cast<size_t>(dprime[i])];
    if (lists[i]->empty()) return false;
  }
  std::vector<size_t> idx(n, 0);
  std::vector<const SubF*> cur(n);
  while (true) {
    for (size_t i = 0; i < n; ++i) cur[i] = &(*lists[i])[idx[i]];
    if (tuple_invariant(r, cur) && accept(cur)) return true;
    size_t i = n;
    while (i > 0 && idx[i - 1] + 1 == lists[i - 1]->size()) idx[--i] = 0;
    if (i == 0) return false;
    ++idx[i - 1];
  }
}

SubrepWitness<Fp> witness_from_tuple(const Weight& theta, const I64Vec& dprime,
                                     const std::vector<const SubF*>& w) {
  SubrepWitness<Fp> out;
  out.dims = dprime;
  for (const SubF* s : w) out.bases.push_back(s->rows);
  out.pairing = weight_pairing(theta, dprime);
  return out;
}

StabilityVerdict<Fp> exhaustive_destabilizer(const Representation<Fp>& r, const Weight& theta,
                                             i64 budget) {
  SubspaceTables tabs = build_tables(r, budget);
  StabilityVerdict<Fp> out;
  out.mod_p_evidence = r.reduced_from_rationals;
  std::optional<SubrepWitness<Fp>> zero_witness;
  for (const I64Vec& dprime : boxed_vectors(r.dims)) {
    i64 tot = total_dim(dprime);
    if (tot == 0 || tot == total_dim(r.dims)) continue;
    int sgn_here = weight_sign(theta, dprime);
    if (sgn_here > 0) continue;
    if (sgn_here == 0 && zero_witness) continue;
    std::optional<SubrepWitness<Fp>> found;
    scan_profile(r, tabs, dprime, [&](const std::vector<const SubF*>& w) {
      found = witness_from_tuple(theta, dprime, w);
      return true;
    });
    if (!found) continue;
    if (sgn_here < 0) {
      out.status = StabStatus::Unstable;
      out.witness = std::move(found);
      verify_subrep(r, theta, *out.witness);
      return out;
    }
    zero_witness = std::move(found);
  }
  if (zero_witness) {
    out.status = StabStatus::StrictlySemistable;
    out.witness = std::move(zero_witness);
    verify_subrep(r, theta, *out.witness);
  } else {
    out.status = StabStatus::Stable;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kronecker canonical-form route (2-arrow Kronecker quiver, any field)
// ---------------------------------------------------------------------------

template <class K>
SubrepWitness<K> block_witness(const KcfResult<K>& res, const BlockSpan& sp, const Weight& theta) {
  SubrepWitness<K> w;
  w.dims = {sp.src_dim, sp.tgt_dim};
  w.bases = {cols_as_rows(res.basis_source, sp.src_offset, sp.src_dim),
             cols_as_rows(res.basis_target, sp.tgt_offset, sp.tgt_dim)};
  w.pairing = weight_pairing(theta, w.dims);
  return w;
}

// One-dimensional subrepresentation (0, span of a single target basis column).
template <class K>
SubrepWitness<K> target_line_witness(const KcfResult<K>& res, int col, const Weight& theta) {
  SubrepWitness<K> w;
  w.dims = {0, 1};
  w.bases = {empty_rows(res.basis_source.rows(), res.basis_source.zero_exemplar()),
             cols_as_rows(res.basis_target, col, 1)};
  w.pairing = weight_pairing(theta, w.dims);
  return w;
}

// Internal destabilizing subrepresentation of a single canonical block that is
// strictly semistable: for a Jordan block the eigenline at the top of the
// chain, for a block at infinity the line at the bottom, and for a generalized
// Jordan block the unique minimal submodule q^(h-1) . K[x]/(q^h).
template <class K>
SubrepWitness<K> internal_block_witness(const KcfResult<K>& res, const KcfBlock<K>& b,
                                        const BlockSpan& sp, const Weight& theta) {
  const K ex = res.basis_source.zero_exemplar();
  auto line = [&](int idx) {
    SubrepWitness<K> w;
    w.dims = {1, 1};
    w.bases = {cols_as_rows(res.basis_source, sp.src_offset + idx, 1),
               cols_as_rows(res.basis_target, sp.tgt_offset + idx, 1)};
    w.pairing = weight_pairing(theta, w.dims);
    return w;
  };
  if (b.kind == BlockKind::Jordan) return line(0);
  if (b.kind == BlockKind::JordanAtInfinity) return line(sp.src_dim - 1);
  // Generalized Jordan block: minimal polynomial q with deg q = e, block size
  // e*h. In the power basis of K[x]/(q^h) the submodule is spanned by the
  // coefficient vectors of x^i * q^(h-1), i = 0..e-1; the pencil acts by
  // (identity, multiplication by x), so the same combinations work on both
  // sides.
  int e = b.minpoly.degree();
  int h = sp.src_dim / e;
  Poly<K> qpow = poly_pow(b.minpoly, h - 1);
  int m = sp.src_dim;
  SubrepWitness<K> w;
  w.dims = {e, e};
  Matrix<K> src(e, res.basis_source.rows(), ex);
  Matrix<K> tgt(e, res.basis_target.rows(), ex);
  for (int i = 0; i < e; ++i) {
    Poly<K> gen = Poly<K>::monomial(f_one(ex), i) * qpow;
    for (int j = 0; j < m; ++j) {
      K c = gen.coeff(j);
      if (f_is_zero(c)) continue;
      for (int row = 0; row < res.basis_source.rows(); ++row)
        src.at(i, row) = src.at(i, row) + c * res.basis_source.at(row, sp.src_offset + j);
      for (int row = 0; row < res.basis_target.rows(); ++row)
        tgt.at(i, row) = tgt.at(i, row) + c * res.basis_target.at(row, sp.tgt_offset + j);
    }
  }
  w.bases = {std::move(src), std::move(tgt)};
  w.pairing = weight_pairing(theta, w.dims);
  return w;
}

template <class K>
StabilityVerdict<K> kronecker_destabilizer(const Representation<K>& r, const Weight& theta) {
  Pencil<K> pen = pencil_from_representation(r);
  KcfResult<K> res = kcf(pen);
  std::vector<BlockSpan> spans = block_spans(res);
  StabilityVerdict<K> out;
  out.mod_p_evidence = r.reduced_from_rationals;

  // A block with negative pairing is itself a destabilizing subrepresentation.
  for (size_t i = 0; i < res.blocks.size(); ++i) {
    I64Vec bd = {spans[i].src_dim, spans[i].tgt_dim};
    if (weight_sign(theta, bd) < 0) {
      out.status = StabStatus::Unstable;
      out.witness = block_witness(res, spans[i], theta);
      out.note = "canonical block " + std::to_string(i) + " destabilizes";
      verify_subrep(r, theta, *out.witness);
      return out;
    }
  }
  // All blocks pair to zero now (they are nonnegative and sum to zero). A
  // negative weight at the sink still destabilizes through any target line.
  if (lex_sign(theta[1]) < 0 && r.dims[1] > 0) {
    for (size_t i = 0; i < res.blocks.size(); ++i) {
      if (spans[i].tgt_dim > 0) {
        out.status = StabStatus::Unstable;
        out.witness = target_line_witness(res, spans[i].tgt_offset, theta);
        out.note = "negative sink weight; a target line destabilizes";
        verify_subrep(r, theta, *out.witness);
        return out;
      }
    }
  }
  if (res.blocks.size() >= 2) {
    out.status = StabStatus::StrictlySemistable;
    out.witness = block_witness(res, spans[0], theta);
    verify_subrep(r, theta, *out.witness);
    return out;
  }
  // Single canonical block, pairing zero.
  const KcfBlock<K>& b = res.blocks[0];
  const BlockSpan& sp = spans[0];
  if (b.kind == BlockKind::ZeroSource || b.kind == BlockKind::ZeroTarget) {
    out.status = StabStatus::Stable;  // simple representation
    return out;
  }
  bool theta_zero = lex_sign(theta[0]) == 0 && lex_sign(theta[1]) == 0;
  if (theta_zero) {
    out.status = StabStatus::StrictlySemistable;
    out.witness = target_line_witness(res, sp.tgt_offset, theta);
    out.note = "zero weight: every subrepresentation pairs to zero";
    verify_subrep(r, theta, *out.witness);
    return out;
  }
  switch (b.kind) {
    case BlockKind::RowBlock:
    case BlockKind::ColumnBlock:
      out.status = StabStatus::Stable;
      return out;
    case BlockKind::Jordan:
    case BlockKind::JordanAtInfinity:
      if (sp.src_dim == 1) {
        out.status = StabStatus::Stable;
        return out;
      }
      out.status = StabStatus::StrictlySemistable;
      out.witness = internal_block_witness(res, b, sp, theta);
      verify_subrep(r, theta, *out.witness);
      return out;
    case BlockKind::GeneralizedJordan: {
      int e = b.minpoly.degree();
      int h = sp.src_dim / e;
      if (h == 1) {
        out.status = StabStatus::Stable;
        out.note = "simple over the base field; decomposes after base change to the "
                   "splitting field of its minimal polynomial";
        return out;
      }
      out.status = StabStatus::StrictlySemistable;
      out.witness = internal_block_witness(res, b, sp, theta);
      verify_subrep(r, theta, *out.witness);
      return out;
    }
    default:
      fail(Errc::Internal, "unexpected block kind in stability analysis");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// find_destabilizer
// ---------------------------------------------------------------------------

template <class K>
StabilityVerdict<K> find_destabilizer(const Representation<K>& r, const Weight& theta,
                                      StabMode mode, i64 budget) {
  validate_shapes(r);
  if (static_cast<int>(theta.size()) != r.quiver.vertex_count())
    fail(Errc::DimensionMismatch, "weight size does not match vertex count");
  if (total_dim(r.dims) == 0) fail(Errc::ZeroInput, "zero representation");
  if (weight_sign(theta, r.dims) != 0) {
    StabilityVerdict<K> out;
    out.status = StabStatus::Unstable;
    out.vacuous = true;
    out.mod_p_evidence = r.reduced_from_rationals;
    out.note = "weight does not vanish on the dimension vector";
    return out;
  }
  StabMode resolved = mode;
  if (resolved == StabMode::Auto)
    resolved = is_kronecker2(r.quiver) ? StabMode::KroneckerCanonical : StabMode::Exhaustive;
  if (resolved == StabMode::KroneckerCanonical) {
    if (!is_kronecker2(r.quiver))
      fail(Errc::UnsupportedMode, "canonical-form mode requires the 2-arrow Kronecker quiver");
    if constexpr (std::is_same_v<K, Fp>) {
      if (mode == StabMode::Auto) {
        try {
          return kronecker_destabilizer(r, theta);
        } catch (const Error& e) {
          if (e.code() != Errc::FieldTooSmall) throw;
          return exhaustive_destabilizer(r, theta, budget);
        }
      }
    }
    return kronecker_destabilizer(r, theta);
  }
  if constexpr (std::is_same_v<K, Fp>) {
    return exhaustive_destabilizer(r, theta, budget);
  } else {
    fail(Errc::UnsupportedMode, "exhaustive enumeration requires a finite field");
  }
}

// ---------------------------------------------------------------------------
// Harder-Narasimhan filtration
// ---------------------------------------------------------------------------

namespace {

RatPoly slope_of(const Weight& theta, const I64Vec& d) {
  i64 tot = total_dim(d);
  return Rat(1, tot) * weight_pairing(theta, d);
}

// Minimal-slope subrepresentation of maximal total dimension (the first step
// of the filtration), by enumeration. Returns its profile and row bases.
std::optional<std::pair<I64Vec, std::vector<Matrix<Fp>>>> hn_first_term(
    const Representation<Fp>& r, const Weight& theta, i64 budget) {
  SubspaceTables tabs = build_tables(r, budget);
  std::vector<I64Vec> profiles;
  for (const I64Vec& dprime : boxed_vectors(r.dims))
    if (total_dim(dprime) > 0) profiles.push_back(dprime);
  std::stable_sort(profiles.begin(), profiles.end(), [&](const I64Vec& x, const I64Vec& y) {
    int c = lex_compare(slope_of(theta, x), slope_of(theta, y));
    if (c != 0) return c < 0;
    return total_dim(x) > total_dim(y);
  });
  for (const I64Vec& dprime : profiles) {
    std::optional<std::vector<Matrix<Fp>>> found;
    scan_profile(r, tabs, dprime, [&](const std::vector<const SubF*>& w) {
      std::vector<Matrix<Fp>> bases;
      for (const SubF* s : w) bases.push_back(s->rows);
      found = std::move(bases);
      return true;
    });
    if (found) return std::make_pair(dprime, std::move(*found));
  }
  return std::nullopt;  // unreachable: the full profile always succeeds
}

std::vector<HnStep<Fp>> hn_exhaustive(const Representation<Fp>& r, const Weight& theta,
                                      i64 budget) {
  std::vector<HnStep<Fp>> out;
  Representation<Fp> cur = r;
  int nv = r.quiver.vertex_count();
  const Fp ex = r.field_exemplar;
  // Row bases mapping current coordinates back to the original ambient space,
  // and the accumulated filtration rows in ambient coordinates.
  std::vector<Matrix<Fp>> lift, acc;
  for (int i = 0; i < nv; ++i) {
    lift.push_back(Matrix<Fp>::identity(static_cast<int>(r.dims[static_cast<size_t>(i)]), ex));
    acc.push_back(empty_rows(static_cast<int>(r.dims[static_cast<size_t>(i)]), ex));
  }
  I64Vec acc_dims(static_cast<size_t>(nv), 0);
  while (total_dim(cur.dims) > 0) {
    auto first = hn_first_term(cur, theta, budget);
    if (!first) fail(Errc::Internal, "filtration search found no subrepresentation");
    const I64Vec& a1 = first->first;
    const std::vector<Matrix<Fp>>& bases = first->second;
    HnStep<Fp> step;
    step.factor_dims = a1;
    step.factor_slope = slope_of(theta, a1);
    for (int i = 0; i < nv; ++i) {
      size_t iu = static_cast<size_t>(i);
      acc[iu] = vstack(acc[iu], bases[iu] * lift[iu]);
      acc_dims[iu] += a1[iu];
    }
    step.dims = acc_dims;
    step.bases = acc;
    out.push_back(std::move(step));
    if (a1 == cur.dims) break;
    // Pass to the quotient: complements give the new coordinates.
    std::vector<Matrix<Fp>> comp, trans_inv;
    for (int i = 0; i < nv; ++i) {
      size_t iu = static_cast<size_t>(i);
      Matrix<Fp> c = row_space_completion(bases[iu]);
      comp.push_back(c);
      Matrix<Fp> t = hstack(bases[iu].transpose(), c.transpose());
      auto inv = inverse(t);
      if (!inv) fail(Errc::Internal, "quotient coordinate change is singular");
      trans_inv.push_back(std::move(*inv));
    }
    Representation<Fp> quot;
    quot.quiver = cur.quiver;
    quot.field_exemplar = ex;
    quot.reduced_from_rationals = cur.reduced_from_rationals;
    quot.dims.resize(static_cast<size_t>(nv));
    for (int i = 0; i < nv; ++i)
      quot.dims[static_cast<size_t>(i)] = cur.dims[static_cast<size_t>(i)] - a1[static_cast<size_t>(i)];
    for (size_t h = 0; h < cur.quiver.arrows.size(); ++h) {
      const Arrow& ar = cur.quiver.arrows[h];
      size_t s = static_cast<size_t>(ar.src), t = static_cast<size_t>(ar.dst);
      int kt = static_cast<int>(a1[t]);
      Matrix<Fp> x = trans_inv[t] * (cur.mats[h] * comp[s].transpose());
      quot.mats.push_back(x.submatrix(kt, x.rows(), 0, x.cols()));
    }
    for (int i = 0; i < nv; ++i) {
      size_t iu = static_cast<size_t>(i);
      lift[iu] = comp[iu] * lift[iu];
    }
    cur = std::move(quot);
  }
  return out;
}

// Kronecker route: the filtration is read off the canonical blocks. With
// a = theta(source) lex-below b = theta(sink), slopes group as
//   kernel lines (a) < row blocks by ascending size < regular blocks
//   ((a+b)/2) < column blocks by descending size < cokernel lines (b);
// for b below a the filtration is 0 < (0, V_0) < V, and for a = b the
// representation is semistable.
template <class K>
std::vector<HnStep<K>> hn_kronecker(const Representation<K>& r, const Weight& theta) {
  Pencil<K> pen = pencil_from_representation(r);
  KcfResult<K> res = kcf(pen);
  std::vector<BlockSpan> spans = block_spans(res);
  const K ex = r.field_exemplar;
  const RatPoly a = theta[0], b = theta[1];
  std::vector<HnStep<K>> out;
  auto push_whole = [&]() {
    HnStep<K> step;
    step.dims = r.dims;
    step.factor_dims = r.dims;
    step.factor_slope = slope_of(theta, r.dims);
    step.bases = {Matrix<K>::identity(static_cast<int>(r.dims[0]), ex),
                  Matrix<K>::identity(static_cast<int>(r.dims[1]), ex)};
    out.push_back(std::move(step));
  };
  int ab = lex_compare(a, b);
  if (ab == 0) {
    push_whole();
    return out;
  }
  if (ab > 0) {  // sink weight below source weight: target space first
    if (r.dims[0] == 0 || r.dims[1] == 0) {
      push_whole();
      return out;
    }
    HnStep<K> step;
    step.dims = {0, r.dims[1]};
    step.factor_dims = step.dims;
    step.factor_slope = b;
    step.bases = {empty_rows(static_cast<int>(r.dims[0]), ex),
                  Matrix<K>::identity(static_cast<int>(r.dims[1]), ex)};
    out.push_back(std::move(step));
    HnStep<K> last;
    last.dims = r.dims;
    last.factor_dims = {r.dims[0], 0};
    last.factor_slope = a;
    last.bases = {Matrix<K>::identity(static_cast<int>(r.dims[0]), ex),
                  Matrix<K>::identity(static_cast<int>(r.dims[1]), ex)};
    out.push_back(std::move(last));
    return out;
  }
  // a lex-below b: group the blocks by slope.
  auto group_slope = [&](const KcfBlock<K>& blk) -> RatPoly {
    switch (blk.kind) {
      case BlockKind::ZeroSource:
        return a;
      case BlockKind::RowBlock: {
        i64 n = blk.size;
        return Rat(1, 2 * n + 1) * (Rat(n + 1) * a + Rat(n) * b);
      }
      case BlockKind::Jordan:
      case BlockKind::GeneralizedJordan:
      case BlockKind::JordanAtInfinity:
        return Rat(1, 2) * (a + b);
      case BlockKind::ColumnBlock: {
        i64 n = blk.size;
        return Rat(1, 2 * n + 1) * (Rat(n) * a + Rat(n + 1) * b);
      }
      case BlockKind::ZeroTarget:
        return b;
    }
    fail(Errc::Internal, "unknown block kind");
  };
  std::vector<size_t> order(res.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return lex_compare(group_slope(res.blocks[x]), group_slope(res.blocks[y])) < 0;
  });
  Matrix<K> src_rows = empty_rows(static_cast<int>(r.dims[0]), ex);
  Matrix<K> tgt_rows = empty_rows(static_cast<int>(r.dims[1]), ex);
  I64Vec dims = {0, 0};
  size_t i = 0;
  while (i < order.size()) {
    RatPoly mu = group_slope(res.blocks[order[i]]);
    I64Vec fdims = {0, 0};
    while (i < order.size() && group_slope(res.blocks[order[i]]) == mu) {
      const BlockSpan& sp = spans[order[i]];
      src_rows = vstack(src_rows, cols_as_rows(res.basis_source, sp.src_offset, sp.src_dim));
      tgt_rows = vstack(tgt_rows, cols_as_rows(res.basis_target, sp.tgt_offset, sp.tgt_dim));
      fdims[0] += sp.src_dim;
      fdims[1] += sp.tgt_dim;
      ++i;
    }
    dims[0] += fdims[0];
    dims[1] += fdims[1];
    HnStep<K> step;
    step.dims = dims;
    step.factor_dims = fdims;
    step.factor_slope = mu;
    step.bases = {src_rows, tgt_rows};
    out.push_back(std::move(step));
  }
  return out;
}

template <class K>
void validate_filtration(const Representation<K>& r, const std::vector<HnStep<K>>& steps) {
  if (steps.empty()) fail(Errc::Internal, "empty filtration");
  I64Vec run(r.dims.size(), 0);
  for (size_t s = 0; s < steps.size(); ++s) {
    for (size_t i = 0; i < run.size(); ++i) run[i] += steps[s].factor_dims[i];
    if (steps[s].dims != run) fail(Errc::Internal, "filtration dimensions do not telescope");
    for (size_t i = 0; i < run.size(); ++i) {
      const Matrix<K>& bm = steps[s].bases[i];
      if (bm.rows() != run[i] || bm.cols() != r.dims[i] || rank(bm) != bm.rows())
        fail(Errc::Internal, "filtration basis has the wrong rank");
      if (s > 0 && !row_space_contains(bm, steps[s - 1].bases[i]))
        fail(Errc::Internal, "filtration steps are not nested");
    }
    if (s > 0 && lex_compare(steps[s - 1].factor_slope, steps[s].factor_slope) >= 0)
      fail(Errc::Internal, "factor slopes are not strictly increasing");
  }
  if (steps.back().dims != r.dims) fail(Errc::Internal, "filtration does not end at the whole representation");
}

}  // namespace

template <class K>
std::vector<HnStep<K>> hn_filtration(const Representation<K>& r, const Weight& theta,
                                     StabMode mode, i64 budget) {
  validate_shapes(r);
  if (static_cast<int>(theta.size()) != r.quiver.vertex_count())
    fail(Errc::DimensionMismatch, "weight size does not match vertex count");
  if (total_dim(r.dims) == 0) fail(Errc::ZeroInput, "zero representation");
  StabMode resolved = mode;
  if (resolved == StabMode::Auto)
    resolved = is_kronecker2(r.quiver) ? StabMode::KroneckerCanonical : StabMode::Exhaustive;
  std::vector<HnStep<K>> steps;
  if (resolved == StabMode::KroneckerCanonical) {
    if (!is_kronecker2(r.quiver))
      fail(Errc::UnsupportedMode, "canonical-form mode requires the 2-arrow Kronecker quiver");
    if constexpr (std::is_same_v<K, Fp>) {
      if (mode == StabMode::Auto) {
        try {
          steps = hn_kronecker(r, theta);
        } catch (const Error& e) {
          if (e.code() != Errc::FieldTooSmall) throw;
          steps = hn_exhaustive(r, theta, budget);
        }
      } else {
        steps = hn_kronecker(r, theta);
      }
    } else {
      steps = hn_kronecker(r, theta);
    }
  } else {
    if constexpr (std::is_same_v<K, Fp>) {
      steps = hn_exhaustive(r, theta, budget);
    } else {
      fail(Errc::UnsupportedMode, "exhaustive enumeration requires a finite field");
    }
  }
  validate_filtration(r, steps);
  return steps;
}

// ---------------------------------------------------------------------------
// Walls and numerical equivalence
// ---------------------------------------------------------------------------

std::vector<Wall> walls(const I64Vec& d) {
  std::vector<Wall> out;
  std::vector<I64Vec> seen;
  for (const I64Vec& dp : boxed_vectors(d)) {
    if (total_dim(dp) == 0) continue;
    bool divides = false;
    // dp divides d iff d = m * dp for an integer m >= 1.
    for (size_t i = 0; i < dp.size() && !divides; ++i) {
      if (dp[i] == 0) {
        if (d[i] != 0) break;  // cannot be a multiple
        continue;
      }
      if (d[i] % dp[i] != 0) break;
      i64 m = d[i] / dp[i];
      bool ok = true;
      for (size_t j = 0; j < dp.size(); ++j)
        if (d[j] != m * dp[j]) ok = false;
      divides = ok;
      break;
    }
    if (divides) continue;
    I64Vec prim = primitive_of(dp);
    if (std::find(seen.begin(), seen.end(), prim) != seen.end()) continue;
    seen.push_back(prim);
    // Canonical label of the cut hyperplane inside d-perp: the projection of
    // dp onto d-perp, cleared of denominators and sign-normalized.
    i64 dd = 0, pd = 0;
    for (size_t i = 0; i < d.size(); ++i) {
      dd += d[i] * d[i];
      pd += prim[i] * d[i];
    }
    I64Vec hyp(d.size());
    for (size_t i = 0; i < d.size(); ++i) hyp[i] = prim[i] * dd - d[i] * pd;
    hyp = sign_normalized(primitive_of(hyp));
    out.push_back({prim, hyp});
  }
  std::sort(out.begin(), out.end(),
            [](const Wall& x, const Wall& y) { return x.normal < y.normal; });
  return out;
}

int distinct_hyperplanes(const std::vector<Wall>& ws) {
  std::vector<I64Vec> keys;
  for (const Wall& w : ws)
    if (std::find(keys.begin(), keys.end(), w.hyperplane) == keys.end())
      keys.push_back(w.hyperplane);
  return static_cast<int>(keys.size());
}

bool numerically_equivalent(const Weight& theta1, const Weight& theta2, const I64Vec& d) {
  if (weight_sign(theta1, d) != 0 || weight_sign(theta2, d) != 0)
    fail(Errc::NotOrthogonal, "weights must vanish on the dimension vector");
  for (const I64Vec& dp : boxed_vectors(d)) {
    if (total_dim(dp) == 0) continue;
    if (weight_sign(theta1, dp) != weight_sign(theta2, dp)) return false;
  }
  return true;
}

I64Vec integral_weight_in_class(const Weight& theta, const I64Vec& d) {
  if (theta.size() != d.size())
    fail(Errc::DimensionMismatch, "weight size does not match the dimension vector");
  for (const RatPoly& p : theta)
    if (p.degree() > 1)
      fail(Errc::UnsupportedMode, "integral representative requires weight entries of degree <= 1");
  if (weight_sign(theta, d) != 0)
    fail(Errc::NotOrthogonal, "weight must vanish on the dimension vector");
  size_t n = d.size();
  std::vector<Rat> tm(n), tc(n);
  for (size_t i = 0; i < n; ++i) {
    tm[i] = theta[i].coeff(1);
    tc[i] = theta[i].coeff(0);
  }
  // Small enough eps keeps the sign of t*sM + sC equal to the sign of
  // sM + eps*sC on every direction below d.
  Rat eps(1);
  bool found = false;
  for (const I64Vec& dp : boxed_vectors(d)) {
    if (total_dim(dp) == 0) continue;
    Rat sm(0), sc(0);
    for (size_t i = 0; i < n; ++i) {
      sm += tm[i] * dp[i];
      sc += tc[i] * dp[i];
    }
    if (sm == 0 || sc == 0) continue;
    Rat bound = abs(sm) / (2 * abs(sc));
    if (!found || bound < eps) eps = bound;
    found = true;
  }
  std::vector<Rat> w(n);
  Int denlcm(1);
  for (size_t i = 0; i < n; ++i) {
    w[i] = tm[i] + eps * tc[i];
    denlcm = denlcm / gcd(denlcm, den(w[i])) * den(w[i]);
  }
  I64Vec out(n);
  Int g(0);
  std::vector<Int> big(n);
  for (size_t i = 0; i < n; ++i) {
    big[i] = num(w[i]) * (denlcm / den(w[i]));
    g = gcd(g, abs(big[i]));
  }
  for (size_t i = 0; i < n; ++i)
    out[i] = static_cast<i64>(Int(g == 0 ? big[i] : big[i] / g).convert_to<long long>());
  if (!numerically_equivalent(theta, weight_from_ints(out), d))
    fail(Errc::Internal, "integral representative is not in the same class");
  return out;
}

bool is_theta_coprime(const Weight& theta, const I64Vec& d) {
  if (theta.size() != d.size())
    fail(Errc::DimensionMismatch, "weight size does not match the dimension vector");
  for (const I64Vec& dp : boxed_vectors(d)) {
    if (total_dim(dp) == 0 || dp == d) continue;
    if (weight_sign(theta, dp) == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Explicit instantiations
// ---------------------------------------------------------------------------

template void verify_subrep<Rat>(const Representation<Rat>&, const Weight&,
                                 const SubrepWitness<Rat>&);
template void verify_subrep<Fp>(const Representation<Fp>&, const Weight&,
                                const SubrepWitness<Fp>&);
template StabilityVerdict<Rat> find_destabilizer<Rat>(const Representation<Rat>&, const Weight&,
                                                      StabMode, i64);
template StabilityVerdict<Fp> find_destabilizer<Fp>(const Representation<Fp>&, const Weight&,
                                                    StabMode, i64);
template std::vector<HnStep<Rat>> hn_filtration<Rat>(const Representation<Rat>&, const Weight&,
                                                     StabMode, i64);
template std::vector<HnStep<Fp>> hn_filtration<Fp>(const Representation<Fp>&, const Weight&,
                                                   StabMode, i64);

}  // namespace quivmod
