#pragma once

#include "quivmod/matrix.hpp"

#include <string>
#include <vector>

namespace quivmod {

struct Arrow {
  std::string label;
  int src = 0;
  int dst = 0;
};

// A formal sum of length-2 paths: sum of coeff * second∘first, where first
// and second are arrow indices and the composite reads right to left.
struct RelationTerm {
  i64 coeff = 1;
  int second = 0;
  int first = 0;
};

struct Relation {
  std::string label;
  std::vector<RelationTerm> terms;
};

struct QuiverPresentation {
  std::string id;  // "K<n>", "B3_J", "B3_Jprime", "Q4_J"
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int arrow_index(const std::string& label) const;
};

// The n-arrow Kronecker quiver on vertices {-1, 0}; no relations.
QuiverPresentation kronecker_quiver(int n);
// The three-vertex quiver with arrows a1..a3, b1..b3 and the antisymmetrizing
// relations b_i a_j + b_j a_i (i <= j), resp. the symmetrizing b_i a_j - b_j a_i (i < j).
QuiverPresentation beilinson_quiver_j();
QuiverPresentation beilinson_quiver_jprime();
// The four-vertex product quiver with relations b1_i a1_j + b2_j a2_i.
QuiverPresentation product_quiver_j();
QuiverPresentation quiver_by_name(const std::string& id);

// Euler form of the arrow data (relations not included):
// chi(d, e) = sum_i d_i e_i - sum_h d_{s(h)} e_{t(h)}.
Int euler_form(const QuiverPresentation& q, const I64Vec& d, const I64Vec& e);

// Expected dimension of the stable locus: 1 - chi(d, d) minus one correction
// d_src * d_dst per relation (each relation is a path between fixed endpoints).
Int moduli_dimension(const QuiverPresentation& q, const I64Vec& d);

template <class K>
struct Representation {
  QuiverPresentation quiver;
  K field_exemplar;  // zero of the coefficient field
  I64Vec dims;
  std::vector<Matrix<K>> mats;  // one per arrow, shape dims[dst] x dims[src]
  bool reduced_from_rationals = false;
};

template <class K>
void validate_shapes(const Representation<K>& r) {
  if (static_cast<int>(r.dims.size()) != r.quiver.vertex_count())
    fail(Errc::ShapeMismatch, "dims size does not match vertex count");
  for (i64 d : r.dims)
    if (d < 0) fail(Errc::ShapeMismatch, "negative dimension");
  if (r.mats.size() != r.quiver.arrows.size())
    fail(Errc::ShapeMismatch, "matrix count does not match arrow count");
  for (size_t h = 0; h < r.mats.size(); ++h) {
    const Arrow& a = r.quiver.arrows[h];
    if (r.mats[h].rows() != r.dims[static_cast<size_t>(a.dst)] ||
        r.mats[h].cols() != r.dims[static_cast<size_t>(a.src)])
      fail(Errc::ShapeMismatch, "matrix for arrow " + a.label + " has the wrong shape");
  }
}

// Labels of violated relations (empty means all satisfied).
template <class K>
std::vector<std::string> check_relations(const Representation<K>& r) {
  validate_shapes(r);
  std::vector<std::string> violated;
  for (const Relation& rel : r.quiver.relations) {
    if (rel.terms.empty()) continue;
    const Arrow& a0 = r.quiver.arrows[static_cast<size_t>(rel.terms[0].first)];
    const Arrow& b0 = r.quiver.arrows[static_cast<size_t>(rel.terms[0].second)];
    Matrix<K> acc(r.dims[static_cast<size_t>(b0.dst)], r.dims[static_cast<size_t>(a0.src)],
                  r.field_exemplar);
    for (const RelationTerm& t : rel.terms) {
      Matrix<K> prod = r.mats[static_cast<size_t>(t.second)] * r.mats[static_cast<size_t>(t.first)];
      acc = acc + f_from_int(r.field_exemplar, Int(t.coeff)) * prod;
    }
    if (!acc.is_zero()) violated.push_back(rel.label);
  }
  return violated;
}

// Reduce a rational representation mod p (denominators must be invertible).
Representation<Fp> reduce_mod_p(const Representation<Rat>& r, i64 p);

}  // namespace quivmod
