#include "quivmod/json_io.hpp"

#include <string>
#include <vector>

namespace quivmod {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& why) {
  fail(Errc::MalformedInput, what + ": " + why);
}

i64 int_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<i64>();
  if (j.is_string()) {
    try {
      return to_i64(int_parse(j.get<std::string>()));
    } catch (const Error&) {
      bad(what, "not an integer: '" + j.get<std::string>() + "'");
    }
  }
  bad(what, "expected an integer");
}

I64Vec int_vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what, "expected an array of integers");
  I64Vec out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(int_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

const json& member(const json& j, const std::string& key, const std::string& what) {
  if (!j.is_object()) bad(what, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(what, "missing key \"" + key + "\"");
  return *it;
}

template <class K>
K entry_from_json(const json& j, const K& exemplar, const std::string& what);

template <>
Rat entry_from_json<Rat>(const json& j, const Rat&, const std::string& what) {
  return rat_from_json(j, what);
}

template <>
Fp entry_from_json<Fp>(const json& j, const Fp& exemplar, const std::string& what) {
  return Fp(int_from_json(j, what), exemplar.p);
}

template <class K>
json entry_to_json(const K& x);

template <>
json entry_to_json<Rat>(const Rat& x) {
  return rat_to_json(x);
}

template <>
json entry_to_json<Fp>(const Fp& x) {
  return json(x.v);
}

template <class K>
Matrix<K> matrix_from_json(const json& j, const K& exemplar, int rows, int cols,
                           const std::string& what) {
  if (!j.is_array()) bad(what, "expected an array of rows");
  if (static_cast<int>(j.size()) != rows)
    bad(what, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Matrix<K> m(rows, cols, exemplar);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    std::string rw = what + "[" + std::to_string(i) + "]";
    if (!row.is_array()) bad(rw, "expected an array");
    if (static_cast<int>(row.size()) != cols)
      bad(rw, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (int k = 0; k < cols; ++k)
      m.at(i, k) = entry_from_json<K>(row[static_cast<size_t>(k)], exemplar,
                                      rw + "[" + std::to_string(k) + "]");
  }
  return m;
}

template <class K>
Representation<K> representation_from_json_impl(const json& j, const K& exemplar) {
  std::string qid = member(j, "quiver", "representation").get<std::string>();
  Representation<K> r{quiver_by_name(qid), f_zero(exemplar), {}, {}, false};
  r.dims = int_vec_from_json(member(j, "dims", "representation"), "dims");
  if (static_cast<int>(r.dims.size()) != r.quiver.vertex_count())
    bad("dims", "quiver " + qid + " has " + std::to_string(r.quiver.vertex_count()) + " vertices");
  for (i64 d : r.dims)
    if (d < 0) bad("dims", "dimensions must be nonnegative");
  const json& mats = member(j, "matrices", "representation");
  if (!mats.is_object()) bad("matrices", "expected an object keyed by arrow label");
  for (const Arrow& a : r.quiver.arrows) {
    auto it = mats.find(a.label);
    int rows = static_cast<int>(r.dims[static_cast<size_t>(a.dst)]);
    int cols = static_cast<int>(r.dims[static_cast<size_t>(a.src)]);
    if (it == mats.end()) {
      if (rows == 0 || cols == 0) {  // nothing to supply for an empty matrix
        r.mats.push_back(Matrix<K>(rows, cols, exemplar));
        continue;
      }
      bad("matrices", "missing arrow \"" + a.label + "\"");
    }
    r.mats.push_back(matrix_from_json<K>(*it, exemplar, rows, cols, "matrices." + a.label));
  }
  for (const auto& item : mats.items())
    (void)r.quiver.arrow_index(item.key());  // throws MalformedInput on unknown labels
  validate_shapes(r);
  return r;
}

template <class K>
json representation_to_json_impl(const Representation<K>& r, const std::string& field) {
  json j;
  j["quiver"] = r.quiver.id;
  j["field"] = field;
  j["dims"] = r.dims;
  json mats = json::object();
  for (size_t h = 0; h < r.mats.size(); ++h)
    mats[r.quiver.arrows[h].label] = matrix_to_json(r.mats[h]);
  j["matrices"] = mats;
  return j;
}

template <class K>
json witness_to_json(const SubrepWitness<K>& w) {
  json j;
  j["dims"] = w.dims;
  json bases = json::array();
  for (const Matrix<K>& m : w.bases) bases.push_back(matrix_to_json(m));
  j["bases"] = bases;
  j["pairing"] = ratpoly_to_json(w.pairing);
  return j;
}

}  // namespace

json rat_to_json(const Rat& x) { return json(rat_str(x)); }

Rat rat_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rat(j.get<i64>());
  if (j.is_string()) {
    try {
      return rat_parse(j.get<std::string>());
    } catch (const Error&) {
      bad(what, "not a rational: '" + j.get<std::string>() + "'");
    }
  }
  bad(what, "expected a rational as \"p/q\" or an integer");
}

json ratpoly_to_json(const RatPoly& p) {
  json a = json::array();
  for (const Rat& c : p.coeffs()) a.push_back(rat_to_json(c));
  return a;
}

RatPoly ratpoly_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what, "expected an array of coefficients, constant term first");
  std::vector<Rat> c;
  for (size_t i = 0; i < j.size(); ++i)
    c.push_back(rat_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return RatPoly(Rat(0), std::move(c));
}

json weight_to_json(const Weight& w) {
  json a = json::array();
  for (const RatPoly& p : w) a.push_back(ratpoly_to_json(p));
  return a;
}

Weight weight_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what, "expected an array, one entry per vertex");
  Weight w;
  for (size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    std::string ew = what + "[" + std::to_string(i) + "]";
    if (e.is_array())
      w.push_back(ratpoly_from_json(e, ew));
    else
      w.push_back(RatPoly::constant(rat_from_json(e, ew)));
  }
  return w;
}

json sheaf_to_json(const SheafClass& v) {
  json j;
  j["surface"] = surface_name(v.surface);
  j["rank"] = v.rank;
  if (v.surface == Surface::P1xP1)
    j["c1"] = json::array({v.c1b, v.c1a});  // degree order (deg_H, deg_F)
  else
    j["c1"] = v.c1a;
  if (v.surface != Surface::P1) j["ch2"] = rat_to_json(v.ch2);
  return j;
}

SheafClass sheaf_from_json(const json& j, std::optional<Surface> fallback) {
  if (!j.is_object()) bad("class", "expected an object");
  Surface s;
  if (j.contains("surface")) {
    const json& sj = j["surface"];
    if (!sj.is_string()) bad("surface", "expected \"P1\", \"P2\" or \"P1xP1\"");
    s = surface_parse(sj.get<std::string>());
  } else if (fallback) {
    s = *fallback;
  } else {
    bad("class", "missing key \"surface\" and no --surface flag given");
  }
  i64 rank = int_from_json(member(j, "rank", "class"), "rank");
  const json& c1 = member(j, "c1", "class");
  Rat ch2(0);
  if (j.contains("ch2")) ch2 = rat_from_json(j["ch2"], "ch2");
  switch (s) {
    case Surface::P1:
      if (!c1.is_number_integer() && !c1.is_string())
        bad("c1", "expected an integer degree on P1");
      if (j.contains("ch2") && ch2 != 0) bad("ch2", "P1 classes carry no ch2");
      return sheaf_p1(rank, int_from_json(c1, "c1"));
    case Surface::P2:
      if (c1.is_array()) bad("c1", "expected an integer degree on P2");
      return sheaf_p2(rank, int_from_json(c1, "c1"), ch2);
    case Surface::P1xP1: {
      if (!c1.is_array() || c1.size() != 2)
        bad("c1", "expected [degH, degF] on P1xP1");
      i64 dh = int_from_json(c1[0], "c1[0]");
      i64 df = int_from_json(c1[1], "c1[1]");
      return sheaf_p1xp1(rank, dh, df, ch2);
    }
  }
  fail(Errc::Internal, "unreachable");
}

json polarization_to_json(const Polarization& A, Surface s) {
  json j;
  if (s == Surface::P1xP1) {
    j["a"] = A.a;
    j["b"] = A.b;
  } else {
    j["degA"] = A.a;
  }
  return j;
}

Polarization polarization_from_json(const json& j) {
  if (!j.is_object()) bad("polarization", "expected an object");
  Polarization A;
  if (j.contains("degA")) {
    A.a = int_from_json(j["degA"], "degA");
    A.b = 1;
  } else {
    A.a = int_from_json(member(j, "a", "polarization"), "a");
    A.b = j.contains("b") ? int_from_json(j["b"], "b") : 1;
  }
  if (A.a <= 0 || A.b <= 0)
    fail(Errc::ZeroInput, "polarization must be ample: positive entries required");
  return A;
}

std::string field_of_representation(const json& j) {
  const json& f = member(j, "field", "representation");
  if (!f.is_string()) bad("field", "expected \"Q\" or \"F_<p>\"");
  return f.get<std::string>();
}

i64 prime_of_field(const std::string& field) {
  if (field.size() < 3 || field.substr(0, 2) != "F_")
    bad("field", "expected \"Q\" or \"F_<p>\", got '" + field + "'");
  i64 p = 0;
  try {
    p = to_i64(int_parse(field.substr(2)));
  } catch (const Error&) {
    bad("field", "'" + field + "' is not of the form F_<p>");
  }
  if (!is_prime(p)) bad("field", "F_" + std::to_string(p) + ": modulus must be prime");
  return p;
}

json representation_to_json(const Representation<Rat>& r) {
  return representation_to_json_impl(r, "Q");
}

json representation_to_json(const Representation<Fp>& r) {
  return representation_to_json_impl(r, "F_" + std::to_string(r.field_exemplar.p));
}

Representation<Rat> representation_rat_from_json(const json& j) {
  return representation_from_json_impl<Rat>(j, Rat(0));
}

Representation<Fp> representation_fp_from_json(const json& j, i64 p) {
  return representation_from_json_impl<Fp>(j, Fp(0, p));
}

json pencil_to_json(const Pencil<Rat>& p) {
  return representation_to_json(representation_from_pencil(p));
}

json pencil_to_json(const Pencil<Fp>& p) {
  return representation_to_json(representation_from_pencil(p));
}

template <class K>
json matrix_to_json(const Matrix<K>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(entry_to_json<K>(m.at(i, k)));
    rows.push_back(row);
  }
  return rows;
}

template <class K>
json block_to_json(const KcfBlock<K>& b) {
  json j;
  j["kind"] = block_kind_name(b.kind);
  j["size"] = b.size;
  if (b.kind == BlockKind::Jordan) j["eigenvalue"] = entry_to_json<K>(b.eigenvalue);
  if (b.kind == BlockKind::GeneralizedJordan) {
    json mp = json::array();
    for (const K& c : b.minpoly.coeffs()) mp.push_back(entry_to_json<K>(c));
    j["minpoly"] = mp;
  }
  return j;
}

template <class K>
json kcf_result_to_json(const KcfResult<K>& r) {
  json j;
  json blocks = json::array();
  for (const KcfBlock<K>& b : r.blocks) blocks.push_back(block_to_json(b));
  j["blocks"] = blocks;
  j["basis_source"] = matrix_to_json(r.basis_source);
  j["basis_target"] = matrix_to_json(r.basis_target);
  return j;
}

template <class K>
json verdict_to_json(const StabilityVerdict<K>& v) {
  json j;
  j["status"] = stab_status_name(v.status);
  if (v.vacuous) j["vacuous"] = true;
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  if (v.mod_p_evidence) j["mod_p_evidence"] = true;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

template <class K>
json hn_to_json(const std::vector<HnStep<K>>& steps) {
  json a = json::array();
  for (const HnStep<K>& s : steps) {
    json j;
    j["dims"] = s.dims;
    j["factor_dims"] = s.factor_dims;
    j["factor_slope"] = ratpoly_to_json(s.factor_slope);
    json bases = json::array();
    for (const Matrix<K>& m : s.bases) bases.push_back(matrix_to_json(m));
    j["bases"] = bases;
    a.push_back(j);
  }
  return a;
}

json walls_to_json(const std::vector<Wall>& ws) {
  json a = json::array();
  for (const Wall& w : ws) {
    json j;
    j["normal"] = w.normal;
    j["hyperplane"] = w.hyperplane;
    a.push_back(j);
  }
  return a;
}

json moduli_description_to_json(const ModuliDescription& d) {
  json j;
  j["kind"] = moduli_kind_name(d.kind);
  j["text"] = moduli_str(d);
  switch (d.kind) {
    case ModuliKind::Empty: break;
    case ModuliKind::Point: j["stable_point"] = d.has_stable; break;
    case ModuliKind::ProjectiveSpace: j["m"] = d.m; break;
    case ModuliKind::Grassmannian:
      j["k"] = d.gr_k;
      j["n"] = d.gr_n;
      break;
    case ModuliKind::SymbolicKronecker:
      j["n"] = d.kn;
      j["a"] = d.ka;
      j["b"] = d.kb;
      break;
    case ModuliKind::SymbolicQuiver:
      j["quiver"] = d.quiver_id;
      j["dims"] = d.dims;
      break;
  }
  if (d.dimension) j["dimension"] = *d.dimension;
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

json theta_to_json(const ThetaArrays& t) {
  json j;
  json tm = json::array(), tc = json::array();
  for (const Rat& x : t.theta_m) tm.push_back(rat_to_json(x));
  for (const Rat& x : t.theta_chi) tc.push_back(rat_to_json(x));
  j["theta_M"] = tm;
  j["theta_chi"] = tc;
  j["theta_G"] = weight_to_json(t.theta_g);
  return j;
}

json region_flags_to_json(const RegionFlags& f) {
  json j;
  j["in_R"] = f.in_r;
  j["in_S0"] = f.in_s0;
  j["in_S"] = f.in_s;
  j["in_RG"] = f.in_rg;
  j["in_Rtilde"] = f.in_rtilde;
  return j;
}

json route_to_json(const RouteReport& r) {
  json j;
  j["collection"] = collection_str(r.collection);
  if (collection_surface(r.collection) == Surface::P1xP1)
    j["twist"] = json::array({r.twist_m, r.twist_n});
  else
    j["twist"] = r.twist_m;
  j["twisted_class"] = sheaf_to_json(r.twisted);
  j["region"] = region_flags_to_json(r.flags);
  j["theorem_applies"] = r.theorem_applies;
  j["d"] = r.d;
  j["theta"] = theta_to_json(r.theta);
  if (!r.theta_integral.empty()) j["theta_integral"] = r.theta_integral;
  j["coprime"] = r.coprime;
  if (r.semistable) j["semistable"] = moduli_description_to_json(*r.semistable);
  if (r.stable) j["stable"] = moduli_description_to_json(*r.stable);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json moduli_report_to_json(const ModuliReport& r) {
  json j;
  j["input"] = sheaf_to_json(r.input);
  j["polarization"] = polarization_to_json(r.polarization, r.input.surface);
  if (r.discriminant) j["discriminant"] = int_str(*r.discriminant);
  if (r.empty_by_discriminant) j["empty_by_discriminant"] = true;
  if (r.expected_dimension) j["expected_dimension"] = *r.expected_dimension;
  j["invariant_gcd"] = r.invariant_gcd;
  json routes = json::array();
  for (const RouteReport& rt : r.routes) routes.push_back(route_to_json(rt));
  j["routes"] = routes;
  if (r.semistable) j["semistable"] = moduli_description_to_json(*r.semistable);
  if (r.stable) j["stable"] = moduli_description_to_json(*r.stable);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json error_to_json(const Error& e) {
  json j;
  json inner;
  inner["code"] = errc_name(e.code());
  std::string msg = e.what();
  std::string prefix = std::string(errc_name(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  inner["message"] = msg;
  j["error"] = inner;
  return j;
}

template json matrix_to_json<Rat>(const Matrix<Rat>&);
template json matrix_to_json<Fp>(const Matrix<Fp>&);
template json block_to_json<Rat>(const KcfBlock<Rat>&);
template json block_to_json<Fp>(const KcfBlock<Fp>&);
template json kcf_result_to_json<Rat>(const KcfResult<Rat>&);
template json kcf_result_to_json<Fp>(const KcfResult<Fp>&);
template json verdict_to_json<Rat>(const StabilityVerdict<Rat>&);
template json verdict_to_json<Fp>(const StabilityVerdict<Fp>&);
template json hn_to_json<Rat>(const std::vector<HnStep<Rat>>&);
template json hn_to_json<Fp>(const std::vector<HnStep<Fp>>&);

}  // namespace quivmod
