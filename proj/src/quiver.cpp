#include "quivmod/quiver.hpp"

namespace quivmod {

int QuiverPresentation::arrow_index(const std::string& label) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].label == label) return static_cast<int>(i);
  fail(Errc::MalformedInput, "unknown arrow '" + label + "' in quiver " + id);
}

QuiverPresentation kronecker_quiver(int n) {
  if (n < 1) fail(Errc::MalformedInput, "Kronecker quiver needs at least one arrow");
  QuiverPresentation q;
  q.id = "K" + std::to_string(n);
  q.vertices = {"-1", "0"};
  for (int i = 0; i < n; ++i) q.arrows.push_back({"f" + std::to_string(i), 0, 1});
  return q;
}

namespace {

QuiverPresentation beilinson_base() {
  QuiverPresentation q;
  q.vertices = {"-1", "0", "1"};
  for (int i = 1; i <= 3; ++i) q.arrows.push_back({"a" + std::to_string(i), 0, 1});
  for (int i = 1; i <= 3; ++i) q.arrows.push_back({"b" + std::to_string(i), 1, 2});
  return q;
}

}  // namespace

QuiverPresentation beilinson_quiver_j() {
  QuiverPresentation q = beilinson_base();
  q.id = "B3_J";
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) {
      int ai = q.arrow_index("a" + std::to_string(i));
      int aj = q.arrow_index("a" + std::to_string(j));
      int bi = q.arrow_index("b" + std::to_string(i));
      int bj = q.arrow_index("b" + std::to_string(j));
      Relation r;
      if (i == j) {
        r.label = "2*b" + std::to_string(i) + "*a" + std::to_string(i);
        r.terms = {{2, bi, ai}};
      } else {
        r.label = "b" + std::to_string(i) + "*a" + std::to_string(j) + "+b" + std::to_string(j) +
                  "*a" + std::to_string(i);
        r.terms = {{1, bi, aj}, {1, bj, ai}};
      }
      q.relations.push_back(r);
    }
  return q;
}

QuiverPresentation beilinson_quiver_jprime() {
  QuiverPresentation q = beilinson_base();
  q.id = "B3_Jprime";
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      int ai = q.arrow_index("a" + std::to_string(i));
      int aj = q.arrow_index("a" + std::to_string(j));
      int bi = q.arrow_index("b" + std::to_string(i));
      int bj = q.arrow_index("b" + std::to_string(j));
      Relation r;
      r.label = "b" + std::to_string(i) + "*a" + std::to_string(j) + "-b" + std::to_string(j) +
                "*a" + std::to_string(i);
      r.terms = {{1, bi, aj}, {-1, bj, ai}};
      q.relations.push_back(r);
    }
  return q;
}

QuiverPresentation product_quiver_j() {
  QuiverPresentation q;
  q.id = "Q4_J";
  q.vertices = {"(0,-1)", "(0,0)", "(1,-1)", "(1,0)"};
  for (int i = 1; i <= 2; ++i) q.arrows.push_back({"a1_" + std::to_string(i), 0, 1});
  for (int i = 1; i <= 2; ++i) q.arrows.push_back({"a2_" + std::to_string(i), 0, 2});
  for (int i = 1; i <= 2; ++i) q.arrows.push_back({"b1_" + std::to_string(i), 1, 3});
  for (int i = 1; i <= 2; ++i) q.arrows.push_back({"b2_" + std::to_string(i), 2, 3});
  // Relations b1_i a1_j + b2_j a2_i for i, j in {1, 2}; note the transposed
  // indices on the second summand.
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      int a1j = q.arrow_index("a1_" + std::to_string(j));
      int a2i = q.arrow_index("a2_" + std::to_string(i));
      int b1i = q.arrow_index("b1_" + std::to_string(i));
      int b2j = q.arrow_index("b2_" + std::to_string(j));
      Relation r;
      r.label = "b1_" + std::to_string(i) + "*a1_" + std::to_string(j) + "+b2_" +
                std::to_string(j) + "*a2_" + std::to_string(i);
      r.terms = {{1, b1i, a1j}, {1, b2j, a2i}};
      q.relations.push_back(r);
    }
  return q;
}

QuiverPresentation quiver_by_name(const std::string& id) {
  if (id == "B3_J") return beilinson_quiver_j();
  if (id == "B3_Jprime") return beilinson_quiver_jprime();
  if (id == "Q4_J") return product_quiver_j();
  if (id.size() >= 2 && id[0] == 'K') {
    i64 n = to_i64(int_parse(id.substr(1)));
    if (n >= 1 && n <= 64) return kronecker_quiver(static_cast<int>(n));
  }
  fail(Errc::MalformedInput, "unknown quiver '" + id + "'");
}

Int euler_form(const QuiverPresentation& q, const I64Vec& d, const I64Vec& e) {
  if (static_cast<int>(d.size()) != q.vertex_count() ||
      static_cast<int>(e.size()) != q.vertex_count())
    fail(Errc::DimensionMismatch, "dimension vector size mismatch");
  Int acc = 0;
  for (size_t i = 0; i < d.size(); ++i) acc += Int(d[i]) * Int(e[i]);
  for (const Arrow& a : q.arrows)
    acc -= Int(d[static_cast<size_t>(a.src)]) * Int(e[static_cast<size_t>(a.dst)]);
  return acc;
}

Int moduli_dimension(const QuiverPresentation& q, const I64Vec& d) {
  Int dim = 1 - euler_form(q, d, d);
  for (const Relation& rel : q.relations) {
    if (rel.terms.empty()) continue;
    const Arrow& first = q.arrows[static_cast<size_t>(rel.terms[0].first)];
    const Arrow& second = q.arrows[static_cast<size_t>(rel.terms[0].second)];
    dim -= Int(d[static_cast<size_t>(first.src)]) * Int(d[static_cast<size_t>(second.dst)]);
  }
  return dim;
}

Representation<Fp> reduce_mod_p(const Representation<Rat>& r, i64 p) {
  if (!is_prime(p)) fail(Errc::MalformedInput, "modulus must be prime");
  Fp ex(0, p);
  Representation<Fp> out;
  out.quiver = r.quiver;
  out.field_exemplar = ex;
  out.dims = r.dims;
  out.reduced_from_rationals = true;
  for (const Matrix<Rat>& m : r.mats) {
    Matrix<Fp> mp(m.rows(), m.cols(), ex);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        const Rat& x = m.at(i, j);
        if (den(x) % p == 0)
          fail(Errc::MalformedInput, "denominator not invertible mod " + std::to_string(p));
        mp.at(i, j) = f_from_int(ex, num(x)) / f_from_int(ex, den(x));
      }
    out.mats.push_back(mp);
  }
  return out;
}

}  // namespace quivmod
