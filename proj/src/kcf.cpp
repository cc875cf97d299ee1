#include "quivmod/kcf.hpp"

#include "quivmod/ktheory.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

namespace quivmod {

const char* stab_status_name(StabStatus s) {
  switch (s) {
    case StabStatus::Stable: return "Stable";
    case StabStatus::StrictlySemistable: return "StrictlySemistable";
    case StabStatus::Unstable: return "Unstable";
  }
  return "?";
}

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::ZeroSource: return "ZeroSource";
    case BlockKind::ZeroTarget: return "ZeroTarget";
    case BlockKind::RowBlock: return "RowBlock";
    case BlockKind::ColumnBlock: return "ColumnBlock";
    case BlockKind::Jordan: return "Jordan";
    case BlockKind::GeneralizedJordan: return "GeneralizedJordan";
    case BlockKind::JordanAtInfinity: return "JordanAtInfinity";
  }
  return "?";
}

template <class K>
int KcfBlock<K>::source_dim() const {
  switch (kind) {
    case BlockKind::ZeroSource: return 1;
    case BlockKind::ZeroTarget: return 0;
    case BlockKind::RowBlock: return size + 1;
    case BlockKind::ColumnBlock: return size;
    case BlockKind::Jordan:
    case BlockKind::JordanAtInfinity: return size;
    case BlockKind::GeneralizedJordan: return size * minpoly.degree();
  }
  return 0;
}

template <class K>
int KcfBlock<K>::target_dim() const {
  switch (kind) {
    case BlockKind::ZeroSource: return 0;
    case BlockKind::ZeroTarget: return 1;
    case BlockKind::RowBlock: return size;
    case BlockKind::ColumnBlock: return size + 1;
    default: return source_dim();
  }
}

template <class K>
bool KcfBlock<K>::same_label(const KcfBlock& o) const {
  if (kind != o.kind || size != o.size) return false;
  if (kind == BlockKind::Jordan) return eigenvalue == o.eigenvalue;
  if (kind == BlockKind::GeneralizedJordan) return minpoly == o.minpoly;
  return true;
}

template <class K>
std::string block_str(const KcfBlock<K>& b) {
  std::ostringstream os;
  switch (b.kind) {
    case BlockKind::ZeroSource:
    case BlockKind::ZeroTarget: os << block_kind_name(b.kind); break;
    case BlockKind::Jordan:
      os << "Jordan(" << f_str(b.eigenvalue) << "," << b.size << ")";
      break;
    case BlockKind::GeneralizedJordan:
      os << "GeneralizedJordan(" << poly_str(b.minpoly, "x") << "," << b.size << ")";
      break;
    default: os << block_kind_name(b.kind) << "(" << b.size << ")"; break;
  }
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// small matrix helpers
// ---------------------------------------------------------------------------

template <class K>
Matrix<K> mat_from_cols(int rows, const std::vector<std::vector<K>>& cols, const K& ex) {
  Matrix<K> m(rows, static_cast<int>(cols.size()), ex);
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) fail(Errc::Internal, "column length mismatch");
    for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][static_cast<size_t>(i)];
  }
  return m;
}

template <class K>
std::vector<std::vector<K>> cols_of(const Matrix<K>& m) {
  std::vector<std::vector<K>> cs;
  cs.reserve(static_cast<size_t>(m.cols()));
  for (int j = 0; j < m.cols(); ++j) cs.push_back(m.col(j));
  return cs;
}

template <class K>
Matrix<K> mat_pow(const Matrix<K>& m, int e) {
  Matrix<K> acc = Matrix<K>::identity(m.rows(), m.zero_exemplar());
  for (int i = 0; i < e; ++i) acc = acc * m;
  return acc;
}

template <class K>
Matrix<K> eval_poly_at(const Poly<K>& p, const Matrix<K>& m) {
  const K ex = m.zero_exemplar();
  Matrix<K> acc(m.rows(), m.rows(), ex);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    for (int d = 0; d < m.rows(); ++d) acc.at(d, d) = acc.at(d, d) + p.coeff(i);
  }
  return acc;
}

// Standard basis vectors completing the column space of m to the full space.
template <class K>
Matrix<K> standard_completion(const Matrix<K>& m) {
  const K ex = m.zero_exemplar();
  int n = m.rows();
  Matrix<K> cur = m;
  int r = rank(cur);
  std::vector<std::vector<K>> extra;
  for (int i = 0; i < n && r < n; ++i) {
    std::vector<K> e(static_cast<size_t>(n), f_zero(ex));
    e[static_cast<size_t>(i)] = f_one(ex);
    Matrix<K> cand = hstack(cur, mat_from_cols(n, {e}, ex));
    if (rank(cand) > r) {
      cur = cand;
      ++r;
      extra.push_back(e);
    }
  }
  if (rank(cur) != n || cur.cols() != n) fail(Errc::Internal, "basis completion failed");
  return mat_from_cols(n, extra, ex);
}

// Pivot columns of m: a basis of its column space made of actual columns.
template <class K>
Matrix<K> column_space_basis(const Matrix<K>& m) {
  Matrix<K> tmp = m;
  std::vector<int> piv = rref_in_place(tmp);
  std::vector<std::vector<K>> cs;
  for (int p : piv) cs.push_back(m.col(p));
  return mat_from_cols(m.rows(), cs, m.zero_exemplar());
}

template <class K>
Matrix<K> solve_or_die(const Matrix<K>& a, const Matrix<K>& b, const char* what) {
  std::optional<Matrix<K>> x = solve(a, b);
  if (!x) fail(Errc::Internal, std::string("unsolvable system: ") + what);
  return *x;
}

template <class K>
Matrix<K> inverse_or_die(const Matrix<K>& a, const char* what) {
  std::optional<Matrix<K>> x = inverse(a);
  if (!x) fail(Errc::Internal, std::string("singular matrix: ") + what);
  return *x;
}

template <class K>
int value_cmp(const K&, const K&);
template <>
int value_cmp(const Rat& a, const Rat& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}
template <>
int value_cmp(const Fp& a, const Fp& b) {
  return a.v < b.v ? -1 : (b.v < a.v ? 1 : 0);
}

template <class K>
int poly_cmp(const Poly<K>& a, const Poly<K>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i)
    if (int c = value_cmp(a.coeff(i), b.coeff(i)); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// the peel-and-recurse driver
// ---------------------------------------------------------------------------

template <class K>
struct BlockWithBasis {
  KcfBlock<K> block;
  std::vector<std::vector<K>> src;  // ambient source columns, in canonical order
  std::vector<std::vector<K>> tgt;  // ambient target columns
};

template <class K>
int block_order_rank(const KcfBlock<K>& b) {
  switch (b.kind) {
    case BlockKind::ZeroSource: return 0;
    case BlockKind::ZeroTarget: return 1;
    case BlockKind::RowBlock: return 2;
    case BlockKind::ColumnBlock: return 3;
    case BlockKind::Jordan: return 4;
    case BlockKind::GeneralizedJordan: return 5;
    case BlockKind::JordanAtInfinity: return 6;
  }
  return 7;
}

template <class K>
bool block_less(const BlockWithBasis<K>& x, const BlockWithBasis<K>& y) {
  const KcfBlock<K>&a = x.block, &b = y.block;
  if (block_order_rank(a) != block_order_rank(b)) return block_order_rank(a) < block_order_rank(b);
  if (a.kind == BlockKind::Jordan) {
    if (int c = value_cmp(a.eigenvalue, b.eigenvalue); c != 0) return c < 0;
  }
  if (a.kind == BlockKind::GeneralizedJordan) {
    if (int c = poly_cmp(a.minpoly, b.minpoly); c != 0) return c < 0;
  }
  return a.size < b.size;
}

// Minimal right kernel chain x_0..x_eps of the pencil: f0 x_0 = 0,
// f0 x_i = -f1 x_{i-1}, f1 x_eps = 0, encoded as the kernel of a banded
// convolution matrix. Returns the chain columns, or empty when none exists
// with eps <= max_eps.
template <class K>
std::vector<std::vector<K>> minimal_right_chain(const Matrix<K>& f0, const Matrix<K>& f1,
                                                int max_eps) {
  const K ex = f0.zero_exemplar();
  int s = f0.cols(), t = f0.rows();
  for (int eps = 1; eps <= max_eps; ++eps) {
    Matrix<K> conv((eps + 2) * t, (eps + 1) * s, ex);
    for (int i = 0; i <= eps; ++i) {
      for (int r = 0; r < t; ++r)
        for (int c = 0; c < s; ++c) {
          conv.at(i * t + r, i * s + c) = f0.at(r, c);
          conv.at((i + 1) * t + r, i * s + c) = f1.at(r, c);
        }
    }
    Matrix<K> ker = kernel_basis(conv);
    if (ker.cols() == 0) continue;
    std::vector<std::vector<K>> chain;
    for (int i = 0; i <= eps; ++i) {
      std::vector<K> x(static_cast<size_t>(s), f_zero(ex));
      for (int c = 0; c < s; ++c) x[static_cast<size_t>(c)] = ker.at(i * s + c, 0);
      chain.push_back(std::move(x));
    }
    return chain;
  }
  return {};
}

// Given an invariant direct summand of the pencil with source basis S and
// target basis T (f_j S contained in col T), computes an invariant complement
// (U', W'): bases with col S + col U' and col T + col W' full, f_j U' in col W'.
template <class K>
std::pair<Matrix<K>, Matrix<K>> split_off(const Matrix<K>& f0, const Matrix<K>& f1,
                                          const Matrix<K>& S, const Matrix<K>& T) {
  const K ex = f0.zero_exemplar();
  int s = f0.cols(), t = f0.rows(), k = S.cols(), l = T.cols();
  Matrix<K> eu = standard_completion(S);  // s x (s-k)
  Matrix<K> ew = standard_completion(T);  // t x (t-l)
  int su = eu.cols(), tw = ew.cols();
  if (su == 0 && tw == 0) return {eu, ew};

  Matrix<K> mt = hstack(T, ew);  // invertible
  std::vector<Matrix<K>> alpha, beta, g;
  for (const Matrix<K>* f : {&f0, &f1}) {
    Matrix<K> x = solve_or_die(mt, (*f) * eu, "target-space decomposition");
    alpha.push_back(x.submatrix(0, l, 0, su));
    beta.push_back(x.submatrix(l, l + tw, 0, su));
    g.push_back(solve_or_die(T, (*f) * S, "summand invariance"));
  }

  // Unknowns: Phi (k x su), Psi (l x tw); equations over both pencil members:
  //   G_j Phi[:,m] - Psi beta_j[:,m] = -alpha_j[:,m].
  int n_phi = k * su, n_psi = l * tw;
  Matrix<K> a(2 * su * l, n_phi + n_psi, ex);
  Matrix<K> rhs(2 * su * l, 1, ex);
  int row = 0;
  for (int j = 0; j < 2; ++j)
    for (int m = 0; m < su; ++m)
      for (int i = 0; i < l; ++i, ++row) {
        for (int r = 0; r < k; ++r) a.at(row, r * su + m) = g[static_cast<size_t>(j)].at(i, r);
        for (int c = 0; c < tw; ++c)
          a.at(row, n_phi + i * tw + c) =
              a.at(row, n_phi + i * tw + c) - beta[static_cast<size_t>(j)].at(c, m);
        rhs.at(row, 0) = -alpha[static_cast<size_t>(j)].at(i, m);
      }
  Matrix<K> z = solve_or_die(a, rhs, "invariant complement");

  Matrix<K> phi(k, su, ex), psi(l, tw, ex);
  for (int r = 0; r < k; ++r)
    for (int m = 0; m < su; ++m) phi.at(r, m) = z.at(r * su + m, 0);
  for (int i = 0; i < l; ++i)
    for (int c = 0; c < tw; ++c) psi.at(i, c) = z.at(n_phi + i * tw + c, 0);
  Matrix<K> uprime = eu + S * phi;
  Matrix<K> wprime = ew + T * psi;
  if (rank(hstack(S, uprime)) != s || rank(hstack(T, wprime)) != t)
    fail(Errc::Internal, "complement is not complementary");
  return {uprime, wprime};
}

// Chain tops (vector, height) of the nilpotent operator d on the whole space,
// where the module structure is generated by mult (heights measured by d,
// spans closed under mult^i for i < ext_degree).
template <class K>
std::vector<std::pair<std::vector<K>, int>> nilpotent_chain_tops(const Matrix<K>& d,
                                                                 const Matrix<K>& mult,
                                                                 int ext_degree) {
  const K ex = d.zero_exemplar();
  int m = d.rows();
  if (m == 0) return {};
  std::vector<Matrix<K>> kernels;  // kernels[j] = ker d^{j+1}
  Matrix<K> dj = d;
  int h = 0;
  for (;;) {
    ++h;
    kernels.push_back(kernel_basis(dj));
    if (kernels.back().cols() == m) break;
    if (h > m) fail(Errc::Internal, "operator is not nilpotent");
    dj = dj * d;
  }
  std::vector<std::pair<std::vector<K>, int>> tops;
  for (int j = h; j >= 1; --j) {
    std::vector<std::vector<K>> avoid =
        j >= 2 ? cols_of(kernels[static_cast<size_t>(j - 2)]) : std::vector<std::vector<K>>{};
    for (const auto& [v, ht] : tops) {
      if (ht <= j) continue;
      Matrix<K> vm = mat_from_cols(m, {v}, ex);
      Matrix<K> w = mat_pow(d, ht - j) * vm;
      for (int i = 0; i < ext_degree; ++i) {
        avoid.push_back(w.col(0));
        w = mult * w;
      }
    }
    Matrix<K> a = mat_from_cols(m, avoid, ex);
    int ra = rank(a);
    const Matrix<K>& kj = kernels[static_cast<size_t>(j - 1)];
    for (int c = 0; c < kj.cols(); ++c) {
      std::vector<K> v = kj.col(c);
      Matrix<K> cand = hstack(a, mat_from_cols(m, {v}, ex));
      if (rank(cand) == ra) continue;
      tops.emplace_back(v, j);
      Matrix<K> w = mat_from_cols(m, {v}, ex);
      for (int i = 0; i < ext_degree; ++i) {
        avoid.push_back(w.col(0));
        w = mult * w;
      }
      a = mat_from_cols(m, avoid, ex);
      ra = rank(a);
    }
  }
  int total = 0;
  for (const auto& t : tops) total += t.second * ext_degree;
  if (total != m) fail(Errc::Internal, "chain decomposition does not fill the space");
  return tops;
}

template <class K>
void kcf_run(const Matrix<K>& f0, const Matrix<K>& f1, const Matrix<K>& src_embed,
             const Matrix<K>& tgt_embed, std::vector<BlockWithBasis<K>>& out);

// The regular part: square pencil with an invertible member. Decomposes the
// whole space into Jordan-type summands; returns false when no invertible
// member exists over K among the tested ones.
template <class K>
bool regular_part(const Matrix<K>& f0, const Matrix<K>& f1, const Matrix<K>& src_embed,
                  const Matrix<K>& tgt_embed, std::vector<BlockWithBasis<K>>& out) {
  const K ex = f0.zero_exemplar();
  const K one = f_one(ex);
  int n = f0.rows();

  // Pencil members W = mu0 f0 + lam0 f1 to test: [1:c] for small c, then [0:1].
  std::vector<std::pair<K, K>> candidates;
  if constexpr (std::is_same_v<K, Fp>) {
    for (i64 c = 0; c < ex.p && c <= static_cast<i64>(n); ++c)
      candidates.emplace_back(one, Fp::raw(c, ex.p));
  } else {
    for (int c = 0; c <= n; ++c) candidates.emplace_back(one, f_from_int(ex, Int(c)));
  }
  candidates.emplace_back(f_zero(ex), one);

  std::optional<Matrix<K>> winv;
  K mu0 = f_zero(ex), lam0 = f_zero(ex), gamma = f_zero(ex), delta = f_zero(ex);
  for (const auto& [m0, l0] : candidates) {
    Matrix<K> w = m0 * f0 + l0 * f1;
    std::optional<Matrix<K>> inv = inverse(w);
    if (!inv) continue;
    winv = std::move(inv);
    mu0 = m0;
    lam0 = l0;
    if (f_is_zero(m0)) {
      gamma = one;
      delta = f_zero(ex);
    } else {
      gamma = f_zero(ex);
      delta = one;
    }
    break;
  }
  if (!winv) return false;

  const K det_g = mu0 * delta - lam0 * gamma;
  Matrix<K> nmat = gamma * f0 + delta * f1;
  Matrix<K> b = (*winv) * nmat;
  Poly<K> chi = charpoly(b);
  std::vector<PolyPower<K>> factors;
  if constexpr (std::is_same_v<K, Fp>) {
    std::mt19937_64 rng(0x6b63665f70656e63ull);
    factors = factor_poly(chi, rng);
  } else {
    factors = factor_poly(chi);
  }

  // First pencil member in canonical coordinates: P(x) = (delta - lam0 x)/det_g,
  // second: Q(x) = (-gamma + mu0 x)/det_g, so that f0 = W P(B), f1 = W Q(B).
  const K dginv = f_inv(det_g);
  auto p_of = [&](const Matrix<K>& m) {
    Matrix<K> r = (-lam0) * m;
    for (int i = 0; i < m.rows(); ++i) r.at(i, i) = r.at(i, i) + delta;
    return dginv * r;
  };
  auto q_of = [&](const Matrix<K>& m) {
    Matrix<K> r = mu0 * m;
    for (int i = 0; i < m.rows(); ++i) r.at(i, i) = r.at(i, i) - gamma;
    return dginv * r;
  };

  int covered = 0;
  for (const PolyPower<K>& fac : factors) {
    const Poly<K>& q = fac.base;
    int e = q.degree();
    Matrix<K> qb = eval_poly_at(q, b);
    Matrix<K> uq = kernel_basis(mat_pow(qb, fac.exponent));
    int m = uq.cols();
    if (m != e * fac.exponent) fail(Errc::Internal, "primary component has the wrong dimension");
    covered += m;
    Matrix<K> bu = solve_or_die(uq, b * uq, "restriction to a primary component");
    Matrix<K> pu = p_of(bu), qu = q_of(bu);

    bool infinite = false;
    K beta = f_zero(ex);
    if (e == 1) {
      beta = -q.coeff(0);
      infinite = f_is_zero(delta - lam0 * beta);
    }

    if (infinite) {
      Matrix<K> dprime = inverse_or_die(qu, "second member on the infinite part") * pu;
      for (const auto& [v, ht] : nilpotent_chain_tops(dprime, bu, 1)) {
        BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
        bb.block.kind = BlockKind::JordanAtInfinity;
        bb.block.size = ht;
        Matrix<K> vm = mat_from_cols(m, {v}, ex);
        for (int j = 1; j <= ht; ++j) {
          std::vector<K> u_amb = (uq * vm).col(0);
          bb.src.push_back(u_amb);
          bb.tgt.push_back(f1.apply(u_amb));
          vm = dprime * vm;
        }
        std::vector<std::vector<K>> srcs, tgts;
        for (const auto& cvec : bb.src) srcs.push_back(src_embed.apply(cvec));
        for (const auto& cvec : bb.tgt) tgts.push_back(tgt_embed.apply(cvec));
        bb.src = std::move(srcs);
        bb.tgt = std::move(tgts);
        out.push_back(std::move(bb));
      }
      continue;
    }

    Matrix<K> dfull = inverse_or_die(pu, "first member on a finite part") * qu;
    if (e == 1) {
      K lambda = (mu0 * beta - gamma) * f_inv(delta - lam0 * beta);
      Matrix<K> d = dfull;
      for (int i = 0; i < m; ++i) d.at(i, i) = d.at(i, i) - lambda;
      for (const auto& [v, ht] : nilpotent_chain_tops(d, bu, 1)) {
        BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
        bb.block.kind = BlockKind::Jordan;
        bb.block.size = ht;
        bb.block.eigenvalue = lambda;
        Matrix<K> vm = mat_from_cols(m, {v}, ex);
        std::vector<std::vector<K>> chain;  // v, Dv, ..., D^{ht-1} v
        for (int j = 0; j < ht; ++j) {
          chain.push_back((uq * vm).col(0));
          vm = d * vm;
        }
        for (int j = ht - 1; j >= 0; --j) {
          const std::vector<K>& u_amb = chain[static_cast<size_t>(j)];
          bb.src.push_back(src_embed.apply(u_amb));
          bb.tgt.push_back(tgt_embed.apply(f0.apply(u_amb)));
        }
        out.push_back(std::move(bb));
      }
    } else {
      // Transform q through the Moebius map x -> Q(x)/P(x):
      // qhat(y) = monic( sum_i q_i (gamma + delta y)^i (mu0 + lam0 y)^{e-i} ).
      Poly<K> lin_a(ex, {gamma, delta});
      Poly<K> lin_b(ex, {mu0, lam0});
      Poly<K> qhat(ex);
      for (int i = 0; i <= e; ++i) {
        if (f_is_zero(q.coeff(i))) continue;
        qhat = qhat + q.coeff(i) * (poly_pow(lin_a, i) * poly_pow(lin_b, e - i));
      }
      qhat = qhat.monic();
      if (qhat.degree() != e) fail(Errc::Internal, "Moebius transform dropped the degree");
      Matrix<K> dtilde = eval_poly_at(qhat, dfull);
      for (const auto& [v, ht] : nilpotent_chain_tops(dtilde, dfull, e)) {
        BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
        bb.block.kind = BlockKind::GeneralizedJordan;
        bb.block.size = ht;
        bb.block.minpoly = qhat;
        Matrix<K> vm = mat_from_cols(m, {v}, ex);
        for (int j = 0; j < e * ht; ++j) {
          std::vector<K> u_amb = (uq * vm).col(0);
          bb.src.push_back(src_embed.apply(u_amb));
          bb.tgt.push_back(tgt_embed.apply(f0.apply(u_amb)));
          vm = dfull * vm;
        }
        out.push_back(std::move(bb));
      }
    }
  }
  if (covered != n) fail(Errc::Internal, "primary components do not fill the space");
  return true;
}

template <class K>
void kcf_run(const Matrix<K>& f0, const Matrix<K>& f1, const Matrix<K>& src_embed,
             const Matrix<K>& tgt_embed, std::vector<BlockWithBasis<K>>& out) {
  const K ex = f0.zero_exemplar();
  int s = f0.cols(), t = f0.rows();
  if (s == 0 && t == 0) return;

  // Source lines killed by both members split off as ZeroSource copies.
  if (s > 0) {
    Matrix<K> ker = kernel_basis(vstack(f0, f1));
    if (ker.cols() > 0) {
      for (int j = 0; j < ker.cols(); ++j) {
        BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
        bb.block.kind = BlockKind::ZeroSource;
        bb.src.push_back(src_embed.apply(ker.col(j)));
        out.push_back(std::move(bb));
      }
      Matrix<K> comp = standard_completion(ker);
      kcf_run(f0 * comp, f1 * comp, src_embed * comp, tgt_embed, out);
      return;
    }
  }

  // Target lines missed by both members split off as ZeroTarget copies.
  if (t > 0) {
    Matrix<K> im = hstack(f0, f1);
    if (rank(im) < t) {
      Matrix<K> c = column_space_basis(im);
      Matrix<K> z = standard_completion(c);
      for (int j = 0; j < z.cols(); ++j) {
        BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
        bb.block.kind = BlockKind::ZeroTarget;
        bb.tgt.push_back(tgt_embed.apply(z.col(j)));
        out.push_back(std::move(bb));
      }
      kcf_run(solve_or_die(c, f0, "target restriction"), solve_or_die(c, f1, "target restriction"),
              src_embed, tgt_embed * c, out);
      return;
    }
  }

  // Square pencils first try the regular route.
  if (s == t && regular_part(f0, f1, src_embed, tgt_embed, out)) return;

  if (s >= t) {
    // Wide or square-singular: peel one RowBlock from a minimal right chain.
    std::vector<std::vector<K>> chain = minimal_right_chain(f0, f1, s);
    if (chain.empty()) {
      if constexpr (std::is_same_v<K, Fp>) {
        if (ex.p <= static_cast<i64>(s))
          fail(Errc::FieldTooSmall,
               "no invertible pencil member exists over F_" + std::to_string(ex.p) +
                   "; rerun over a field with more than " + std::to_string(s) + " elements");
      }
      fail(Errc::Internal, "singular square pencil without a right kernel chain");
    }
    int eps = static_cast<int>(chain.size()) - 1;
    // Canonical source basis b_j = (-1)^{eps+1-j} x_{eps+1-j}, target y_j = f0 b_j.
    std::vector<std::vector<K>> bs, ys;
    for (int j = 1; j <= eps + 1; ++j) {
      std::vector<K> bj = chain[static_cast<size_t>(eps + 1 - j)];
      if ((eps + 1 - j) % 2 == 1)
        for (K& x : bj) x = -x;
      bs.push_back(std::move(bj));
    }
    for (int j = 0; j < eps; ++j) ys.push_back(f0.apply(bs[static_cast<size_t>(j)]));
    Matrix<K> bmat = mat_from_cols(s, bs, ex);
    Matrix<K> ymat = mat_from_cols(t, ys, ex);
    if (rank(bmat) != eps + 1 || rank(ymat) != eps)
      fail(Errc::Internal, "minimal chain is not independent");

    BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
    bb.block.kind = BlockKind::RowBlock;
    bb.block.size = eps;
    for (const auto& v : bs) bb.src.push_back(src_embed.apply(v));
    for (const auto& v : ys) bb.tgt.push_back(tgt_embed.apply(v));
    out.push_back(std::move(bb));

    auto [uprime, wprime] = split_off(f0, f1, bmat, ymat);
    kcf_run(solve_or_die(wprime, f0 * uprime, "complement restriction"),
            solve_or_die(wprime, f1 * uprime, "complement restriction"), src_embed * uprime,
            tgt_embed * wprime, out);
    return;
  }

  // Tall: peel one ColumnBlock, via the minimal right chain of the transpose.
  Matrix<K> g0 = f0.transpose(), g1 = f1.transpose();
  std::vector<std::vector<K>> chain = minimal_right_chain(g0, g1, t);
  if (chain.empty()) fail(Errc::Internal, "tall pencil without a left kernel chain");
  int eps = static_cast<int>(chain.size()) - 1;
  std::vector<std::vector<K>> bstar, ystar;
  for (int j = 1; j <= eps + 1; ++j) {
    std::vector<K> bj = chain[static_cast<size_t>(eps + 1 - j)];
    if ((eps + 1 - j) % 2 == 1)
      for (K& x : bj) x = -x;
    bstar.push_back(std::move(bj));
  }
  for (int j = 0; j < eps; ++j) ystar.push_back(g0.apply(bstar[static_cast<size_t>(j)]));
  Matrix<K> bsm = mat_from_cols(t, bstar, ex);   // functionals on the target
  Matrix<K> ysm = mat_from_cols(s, ystar, ex);   // functionals on the source
  if (rank(bsm) != eps + 1 || rank(ysm) != eps)
    fail(Errc::Internal, "minimal chain is not independent");

  auto [ustar, wstar] = split_off(g0, g1, bsm, ysm);
  // Primal summand: U = ann(wstar), W = ann(ustar); primal complement:
  // U' = ann(ystar), W' = ann(bstar).
  Matrix<K> u_sub = kernel_basis(wstar.transpose());   // s x eps
  Matrix<K> w_sub = kernel_basis(ustar.transpose());   // t x (eps+1)
  if (u_sub.cols() != eps || w_sub.cols() != eps + 1)
    fail(Errc::Internal, "annihilator has the wrong dimension");
  Matrix<K> ub = u_sub;
  if (eps > 0)
    ub = u_sub * inverse_or_die(ysm.transpose() * u_sub, "source dual normalization");
  Matrix<K> wb = w_sub * inverse_or_die(bsm.transpose() * w_sub, "target dual normalization");

  BlockWithBasis<K> bb{KcfBlock<K>(ex), {}, {}};
  bb.block.kind = BlockKind::ColumnBlock;
  bb.block.size = eps;
  for (int j = 0; j < eps; ++j) bb.src.push_back(src_embed.apply(ub.col(j)));
  for (int j = 0; j < eps + 1; ++j) bb.tgt.push_back(tgt_embed.apply(wb.col(j)));
  out.push_back(std::move(bb));

  Matrix<K> uprime = kernel_basis(ysm.transpose());
  Matrix<K> wprime = kernel_basis(bsm.transpose());
  if (rank(hstack(ub, uprime)) != s || rank(hstack(wb, wprime)) != t)
    fail(Errc::Internal, "primal complement is not complementary");
  kcf_run(solve_or_die(wprime, f0 * uprime, "complement restriction"),
          solve_or_die(wprime, f1 * uprime, "complement restriction"), src_embed * uprime,
          tgt_embed * wprime, out);
}

}  // namespace

template <class K>
Pencil<K> canonical_pencil(const std::vector<KcfBlock<K>>& blocks, const K& exemplar) {
  const K ex = f_zero(exemplar);
  const K one = f_one(ex);
  int s = 0, t = 0;
  for (const KcfBlock<K>& b : blocks) {
    s += b.source_dim();
    t += b.target_dim();
  }
  Matrix<K> d0(t, s, ex), d1(t, s, ex);
  int so = 0, to = 0;
  for (const KcfBlock<K>& b : blocks) {
    int n = b.size;
    switch (b.kind) {
      case BlockKind::ZeroSource:
      case BlockKind::ZeroTarget: break;
      case BlockKind::RowBlock:
        for (int i = 0; i < n; ++i) {
          d0.at(to + i, so + i) = one;
          d1.at(to + i, so + i + 1) = one;
        }
        break;
      case BlockKind::ColumnBlock:
        for (int i = 0; i < n; ++i) {
          d0.at(to + i, so + i) = one;
          d1.at(to + i + 1, so + i) = one;
        }
        break;
      case BlockKind::Jordan:
        for (int i = 0; i < n; ++i) {
          d0.at(to + i, so + i) = one;
          d1.at(to + i, so + i) = b.eigenvalue;
          if (i + 1 < n) d1.at(to + i, so + i + 1) = one;
        }
        break;
      case BlockKind::JordanAtInfinity:
        for (int i = 0; i < n; ++i) {
          d1.at(to + i, so + i) = one;
          if (i + 1 < n) d0.at(to + i + 1, so + i) = one;
        }
        break;
      case BlockKind::GeneralizedJordan: {
        Poly<K> g = poly_pow(b.minpoly, n);
        int m = g.degree();
        for (int i = 0; i < m; ++i) {
          d0.at(to + i, so + i) = one;
          if (i + 1 < m) d1.at(to + i + 1, so + i) = one;
          d1.at(to + i, so + m - 1) = -g.coeff(i);
        }
        break;
      }
    }
    so += b.source_dim();
    to += b.target_dim();
  }
  return Pencil<K>(std::move(d0), std::move(d1));
}

template <class K>
std::vector<BlockSpan> block_spans(const KcfResult<K>& r) {
  std::vector<BlockSpan> spans;
  int so = 0, to = 0;
  for (const KcfBlock<K>& b : r.blocks) {
    spans.push_back({so, b.source_dim(), to, b.target_dim()});
    so += b.source_dim();
    to += b.target_dim();
  }
  return spans;
}

template <class K>
KcfResult<K> kcf(const Pencil<K>& pencil) {
  const K ex = pencil.f0.zero_exemplar();
  int s = pencil.source_dim(), t = pencil.target_dim();
  std::vector<BlockWithBasis<K>> work;
  kcf_run(pencil.f0, pencil.f1, Matrix<K>::identity(s, ex), Matrix<K>::identity(t, ex), work);
  std::stable_sort(work.begin(), work.end(), block_less<K>);

  std::vector<KcfBlock<K>> blocks;
  std::vector<std::vector<K>> src_cols, tgt_cols;
  for (BlockWithBasis<K>& w : work) {
    blocks.push_back(w.block);
    for (auto& c : w.src) src_cols.push_back(std::move(c));
    for (auto& c : w.tgt) tgt_cols.push_back(std::move(c));
  }
  Matrix<K> ps = mat_from_cols(s, src_cols, ex);
  Matrix<K> pt = mat_from_cols(t, tgt_cols, ex);
  if (ps.cols() != s || pt.cols() != t || rank(ps) != s || rank(pt) != t)
    fail(Errc::Internal, "adapted bases are not invertible");

  Pencil<K> canon = canonical_pencil(blocks, ex);
  if (pencil.f0 * ps != pt * canon.f0 || pencil.f1 * ps != pt * canon.f1)
    fail(Errc::Internal, "canonical form self-check failed");
  return KcfResult<K>{std::move(blocks), std::move(ps), std::move(pt)};
}

template <class K>
Pencil<K> pencil_from_representation(const Representation<K>& r) {
  validate_shapes(r);
  if (r.quiver.vertex_count() != 2 || r.quiver.arrows.size() != 2 || !r.quiver.relations.empty())
    fail(Errc::MalformedInput, "expected a representation of the 2-arrow Kronecker quiver");
  return Pencil<K>(r.mats[0], r.mats[1]);
}

template <class K>
Representation<K> representation_from_pencil(const Pencil<K>& p) {
  Representation<K> r{kronecker_quiver(2), p.f0.zero_exemplar(),
                      I64Vec{p.source_dim(), p.target_dim()},
                      std::vector<Matrix<K>>{p.f0, p.f1}, false};
  validate_shapes(r);
  return r;
}

template <class K>
BlockStability stability_from_blocks(const std::vector<KcfBlock<K>>& blocks) {
  if (blocks.empty()) fail(Errc::ZeroInput, "no blocks given");
  Int dm1 = 0, d0 = 0;
  for (const KcfBlock<K>& b : blocks) {
    dm1 += b.source_dim();
    d0 += b.target_dim();
  }
  Int g = gcd(dm1, d0);
  if (g == 0) fail(Errc::ZeroInput, "zero dimension vector");
  Int th_src = -d0 / g, th_tgt = dm1 / g;

  BlockStability res;
  std::vector<Int> pairing;
  for (const KcfBlock<K>& b : blocks)
    pairing.push_back(th_src * b.source_dim() + th_tgt * b.target_dim());
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (pairing[i] < 0) {
      res.status = StabStatus::Unstable;
      res.destabilizer_block = static_cast<int>(i);
      res.note = "summand " + block_str(blocks[i]) + " has negative weight pairing";
      return res;
    }
  }
  // All block pairings vanish (they are nonnegative and sum to zero).
  if (blocks.size() > 1) {
    res.status = StabStatus::StrictlySemistable;
    res.note = "decomposable: every summand is a subrepresentation of weight zero";
    return res;
  }
  const KcfBlock<K>& b = blocks[0];
  switch (b.kind) {
    case BlockKind::ZeroSource:
    case BlockKind::ZeroTarget:
    case BlockKind::RowBlock:
    case BlockKind::ColumnBlock:
      res.status = StabStatus::Stable;
      res.stable_over_base_field = res.stable_geometrically = true;
      break;
    case BlockKind::Jordan:
    case BlockKind::JordanAtInfinity:
      if (b.size == 1) {
        res.status = StabStatus::Stable;
        res.stable_over_base_field = res.stable_geometrically = true;
      } else {
        res.status = StabStatus::StrictlySemistable;
        res.note = "a single Jordan block of size > 1 has a weight-zero subrepresentation";
      }
      break;
    case BlockKind::GeneralizedJordan:
      if (b.size == 1) {
        res.status = StabStatus::Stable;
        res.stable_over_base_field = true;
        res.stable_geometrically = false;
        res.note = "simple over the base field; splits into " +
                   std::to_string(b.minpoly.degree()) +
                   " conjugate points over the algebraic closure";
      } else {
        res.status = StabStatus::StrictlySemistable;
        res.note = "a repeated irreducible factor gives a weight-zero subrepresentation";
      }
      break;
  }
  return res;
}

std::string summand_str(const SheafSummand& s) {
  std::ostringstream os;
  if (s.kind == SheafSummand::Kind::LineBundle) {
    os << "O(" << s.degree << ")";
  } else if (s.point_degree == 1) {
    os << (s.length == 1 ? "point " : "fat point of length " + std::to_string(s.length) + " at ")
       << s.point;
  } else {
    os << "fat point of length " << s.length << " on the degree-" << s.point_degree
       << " closed point " << s.point;
  }
  return os.str();
}

template <class K>
std::vector<SheafSummand> blocks_to_sheaf(const std::vector<KcfBlock<K>>& blocks, i64 k) {
  std::vector<SheafSummand> out;
  i64 dm1 = 0, d0 = 0;
  for (const KcfBlock<K>& b : blocks) {
    dm1 += b.source_dim();
    d0 += b.target_dim();
    SheafSummand s;
    switch (b.kind) {
      case BlockKind::RowBlock:
        fail(Errc::NotASheaf, "a RowBlock summand has a nonzero kernel sheaf");
      case BlockKind::ZeroSource:
        fail(Errc::NotASheaf, "a ZeroSource summand has a nonzero kernel sheaf");
      case BlockKind::ZeroTarget:
        s.kind = SheafSummand::Kind::LineBundle;
        s.degree = k;
        break;
      case BlockKind::ColumnBlock:
        s.kind = SheafSummand::Kind::LineBundle;
        s.degree = k + b.size;
        break;
      case BlockKind::Jordan:
        s.kind = SheafSummand::Kind::FatPoint;
        s.length = b.size;
        s.point_degree = 1;
        s.point = "[" + f_str(-b.eigenvalue) + ":1]";
        break;
      case BlockKind::JordanAtInfinity:
        s.kind = SheafSummand::Kind::FatPoint;
        s.length = b.size;
        s.point_degree = 1;
        s.point = "[1:0]";
        break;
      case BlockKind::GeneralizedJordan:
        s.kind = SheafSummand::Kind::FatPoint;
        s.length = b.size;
        s.point_degree = b.minpoly.degree();
        s.defining_poly = poly_str(b.minpoly, "x");
        s.point = "V(" + s.defining_poly + ")";
        break;
    }
    out.push_back(std::move(s));
  }
  // The summand classes must add up to the class of the dimension vector.
  i64 total_rank = 0, total_deg = 0;
  for (const SheafSummand& s : out) {
    if (s.kind == SheafSummand::Kind::LineBundle) {
      total_rank += 1;
      total_deg += s.degree;
    } else {
      total_deg += static_cast<i64>(s.length) * s.point_degree;
    }
  }
  SheafClass expected = from_dim_vector(I64Vec{dm1, d0}, CollectionId{CollectionKind::P1_k, k});
  if (expected.rank != total_rank || expected.deg() != total_deg)
    fail(Errc::Internal, "summand classes do not add up to the dictionary class");
  return out;
}

template struct KcfBlock<Rat>;
template struct KcfBlock<Fp>;
template std::string block_str(const KcfBlock<Rat>&);
template std::string block_str(const KcfBlock<Fp>&);
template Pencil<Rat> canonical_pencil(const std::vector<KcfBlock<Rat>>&, const Rat&);
template Pencil<Fp> canonical_pencil(const std::vector<KcfBlock<Fp>>&, const Fp&);
template std::vector<BlockSpan> block_spans(const KcfResult<Rat>&);
template std::vector<BlockSpan> block_spans(const KcfResult<Fp>&);
template KcfResult<Rat> kcf(const Pencil<Rat>&);
template KcfResult<Fp> kcf(const Pencil<Fp>&);
template Pencil<Rat> pencil_from_representation(const Representation<Rat>&);
template Pencil<Fp> pencil_from_representation(const Representation<Fp>&);
template Representation<Rat> representation_from_pencil(const Pencil<Rat>&);
template Representation<Fp> representation_from_pencil(const Pencil<Fp>&);
template BlockStability stability_from_blocks(const std::vector<KcfBlock<Rat>>&);
template BlockStability stability_from_blocks(const std::vector<KcfBlock<Fp>>&);
template std::vector<SheafSummand> blocks_to_sheaf(const std::vector<KcfBlock<Rat>>&, i64);
template std::vector<SheafSummand> blocks_to_sheaf(const std::vector<KcfBlock<Fp>>&, i64);

}  // namespace quivmod
