// quivmod: command-line front end for the sheaf/quiver moduli dictionary.
//
// Subcommands
//   dict               dimension vector, weight arrays and region flags of a class
//   classify           full moduli identification pipeline
//   stab-check         King (semi)stability of a quiver representation
//   kcf                Kronecker canonical form of a matrix pencil
//   walls              wall-and-chamber data of a dimension vector
//   cohomology-oracle  verify the dictionary against the Euler pairing
//
// Exit codes: 0 success; 1 malformed input (JSON or schema) with a
// machine-readable error object on stdout; 2 precondition violations;
// 3 search budget exceeded.

#include "quivmod/json_io.hpp"
#include "quivmod/kcf.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qm = quivmod;
using qm::i64;
using qm::json;

namespace {

// --in accepts a literal JSON document or a file name; with no --in the
// document is read from stdin.
json read_input(const std::string& in_flag) {
  std::string text;
  if (in_flag.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (!in_flag.empty() && (in_flag[0] == '{' || in_flag[0] == '[')) {
    text = in_flag;
  } else {
    std::ifstream f(in_flag);
    if (!f) qm::fail(qm::Errc::MalformedInput, "cannot open input file '" + in_flag + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    qm::fail(qm::Errc::MalformedInput, std::string("JSON parse error: ") + e.what());
  }
}

// "a" or "a,b" with positive entries.
qm::Polarization parse_polarization(const std::string& s) {
  qm::Polarization A;
  size_t comma = s.find(',');
  try {
    if (comma == std::string::npos) {
      A.a = qm::to_i64(qm::int_parse(s));
      A.b = 1;
    } else {
      A.a = qm::to_i64(qm::int_parse(s.substr(0, comma)));
      A.b = qm::to_i64(qm::int_parse(s.substr(comma + 1)));
    }
  } catch (const qm::Error&) {
    qm::fail(qm::Errc::MalformedInput, "--polarization expects 'a' or 'a,b', got '" + s + "'");
  }
  if (A.a <= 0 || A.b <= 0)
    qm::fail(qm::Errc::ZeroInput, "polarization must be ample: positive entries required");
  return A;
}

qm::I64Vec parse_dims(const std::string& s) {
  qm::I64Vec d;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      d.push_back(qm::to_i64(qm::int_parse(item)));
    } catch (const qm::Error&) {
      qm::fail(qm::Errc::MalformedInput, "--dims expects comma-separated integers, got '" + s + "'");
    }
  }
  if (d.empty()) qm::fail(qm::Errc::MalformedInput, "--dims expects comma-separated integers");
  return d;
}

std::string quiver_alias(const std::string& s) {
  if (s == "B3") return "B3_J";
  if (s == "Q4") return "Q4_J";
  return s;
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string ivec_str(const qm::I64Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<qm::CollectionId> default_collections(qm::Surface s) {
  switch (s) {
    case qm::Surface::P1: return {{qm::CollectionKind::P1_k, 0}};
    case qm::Surface::P2:
      return {{qm::CollectionKind::P2_first, 0}, {qm::CollectionKind::P2_second, 0}};
    case qm::Surface::P1xP1: return {{qm::CollectionKind::P1xP1_std, 0}};
  }
  qm::fail(qm::Errc::Internal, "unreachable");
}

qm::I64Vec primitive(qm::I64Vec v) {
  i64 g = 0;
  for (i64 x : v) g = std::gcd(g, x);
  if (g > 1)
    for (i64& x : v) x /= g;
  return v;
}

// ---------------------------------------------------------------------------
// dict
// ---------------------------------------------------------------------------

int run_dict(const json& in, std::optional<qm::Surface> surface, const std::string& collection,
             const qm::Polarization& A, bool as_json) {
  qm::SheafClass v = qm::sheaf_from_json(in, surface);
  std::vector<qm::CollectionId> cs;
  if (!collection.empty())
    cs.push_back(qm::collection_parse(collection));
  else
    cs = default_collections(v.surface);

  json out;
  out["class"] = qm::sheaf_to_json(v);
  out["polarization"] = qm::polarization_to_json(A, v.surface);
  json rows = json::array();
  std::string text = "class " + qm::sheaf_str(v) + " on " + qm::surface_name(v.surface) + "\n";
  for (const qm::CollectionId& c : cs) {
    qm::I64Vec d = qm::to_dim_vector(v, c);
    qm::ThetaArrays th = qm::theta_arrays(v, c, A);
    qm::RegionFlags f = qm::region_membership(v, c, A);
    json row;
    row["collection"] = qm::collection_str(c);
    row["vertices"] = qm::vertex_names(c);
    row["d"] = d;
    row["theta"] = qm::theta_to_json(th);
    row["region"] = qm::region_flags_to_json(f);
    rows.push_back(row);
    text += "collection " + qm::collection_str(c) + "\n";
    text += "  d = " + ivec_str(d) + "\n";
    text += "  theta_G = " + qm::weight_str(th.theta_g) + "\n";
    text += std::string("  region: window ") + (f.in_r ? "yes" : "no") + ", sandwich " +
            (f.in_rg ? "yes" : "no") + ", closure " + (f.in_s ? "yes" : "no") + "\n";
  }
  out["collections"] = rows;
  emit(as_json, out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(const json& in, std::optional<qm::Surface> surface, const qm::Polarization& A,
                 bool as_json) {
  qm::SheafClass v = qm::sheaf_from_json(in, surface);
  qm::ModuliReport rep = qm::identify_moduli(v, A);
  emit(as_json, qm::moduli_report_to_json(rep), qm::report_str(rep));
  return 0;
}

// ---------------------------------------------------------------------------
// stab-check
// ---------------------------------------------------------------------------

qm::StabMode parse_mode(const std::string& s) {
  if (s == "auto") return qm::StabMode::Auto;
  if (s == "exhaustive") return qm::StabMode::Exhaustive;
  if (s == "kcf") return qm::StabMode::KroneckerCanonical;
  qm::fail(qm::Errc::MalformedInput, "--mode expects auto|exhaustive|kcf, got '" + s + "'");
}

// The canonical weight of a two-vertex dimension vector: primitive (-d0, d-1).
qm::Weight canonical_k2_weight(const qm::I64Vec& dims) {
  qm::I64Vec w = primitive({-dims[1], dims[0]});
  return qm::weight_from_ints(w);
}

template <class K>
int run_stab_on(const qm::Representation<K>& r, const json& in, qm::StabMode mode, i64 budget,
                bool with_hn, bool as_json) {
  qm::Weight theta;
  if (in.contains("theta"))
    theta = qm::weight_from_json(in["theta"], "theta");
  else if (r.quiver.vertex_count() == 2)
    theta = canonical_k2_weight(r.dims);
  else
    qm::fail(qm::Errc::MalformedInput,
             "no \"theta\" given; a default exists only for two-vertex quivers");

  std::vector<std::string> violated = qm::check_relations(r);
  qm::StabilityVerdict<K> verdict = qm::find_destabilizer(r, theta, mode, budget);

  json out;
  out["quiver"] = r.quiver.id;
  out["dims"] = r.dims;
  out["theta"] = qm::weight_to_json(theta);
  if (!violated.empty()) out["violated_relations"] = violated;
  out["verdict"] = qm::verdict_to_json(verdict);

  std::string text = "quiver " + r.quiver.id + ", dims " + ivec_str(r.dims) + ", theta " +
                     qm::weight_str(theta) + "\n";
  for (const std::string& rel : violated) text += "violated relation: " + rel + "\n";
  if (!violated.empty())
    text += "note: the verdict below concerns the underlying quiver representation only\n";
  text += std::string("verdict: ") + qm::stab_status_name(verdict.status) + "\n";
  if (verdict.vacuous) text += "  (weight does not vanish on the dimension vector)\n";
  if (verdict.witness) {
    text += "  witness subrepresentation dims " + ivec_str(verdict.witness->dims) +
            ", pairing " + qm::poly_str(verdict.witness->pairing) + "\n";
  }
  if (verdict.mod_p_evidence) text += "  (decided over a prime field reduction)\n";
  if (!verdict.note.empty()) text += "  note: " + verdict.note + "\n";

  if (with_hn) {
    std::vector<qm::HnStep<K>> steps = qm::hn_filtration(r, theta, mode, budget);
    out["hn"] = qm::hn_to_json(steps);
    text += "Harder-Narasimhan filtration (" + std::to_string(steps.size()) + " steps)\n";
    for (const qm::HnStep<K>& s : steps)
      text += "  dims " + ivec_str(s.dims) + ", factor " + ivec_str(s.factor_dims) +
              ", slope " + qm::poly_str(s.factor_slope) + "\n";
  }
  emit(as_json, out, text);
  return 0;
}

int run_stab(const json& in, i64 prime, qm::StabMode mode, i64 budget, bool with_hn,
             bool as_json) {
  if (prime > 0 && !qm::is_prime(prime))
    qm::fail(qm::Errc::MalformedInput, "--prime must be prime, got " + std::to_string(prime));
  std::string field = qm::field_of_representation(in);
  if (field == "Q") {
    qm::Representation<qm::Rat> r = qm::representation_rat_from_json(in);
    if (prime > 0) return run_stab_on(qm::reduce_mod_p(r, prime), in, mode, budget, with_hn, as_json);
    return run_stab_on(r, in, mode, budget, with_hn, as_json);
  }
  i64 p = qm::prime_of_field(field);
  if (prime > 0 && prime != p)
    qm::fail(qm::Errc::UnsupportedMode,
             "input already lives over " + field + "; --prime " + std::to_string(prime) +
                 " cannot apply");
  return run_stab_on(qm::representation_fp_from_json(in, p), in, mode, budget, with_hn, as_json);
}

// ---------------------------------------------------------------------------
// kcf
// ---------------------------------------------------------------------------

template <class K>
int run_kcf_on(const qm::Representation<K>& rep, bool k_given, i64 k, bool as_json) {
  qm::Pencil<K> p = qm::pencil_from_representation(rep);
  qm::KcfResult<K> res = qm::kcf(p);
  qm::BlockStability stab = qm::stability_from_blocks(res.blocks);

  json out = qm::kcf_result_to_json(res);
  json sj;
  sj["status"] = qm::stab_status_name(stab.status);
  if (stab.destabilizer_block >= 0) sj["destabilizer_block"] = stab.destabilizer_block;
  sj["stable_over_base_field"] = stab.stable_over_base_field;
  sj["stable_geometrically"] = stab.stable_geometrically;
  if (!stab.note.empty()) sj["note"] = stab.note;
  out["stability"] = sj;

  std::string text = "pencil " + std::to_string(p.target_dim()) + " x " +
                     std::to_string(p.source_dim()) + ", " + std::to_string(res.blocks.size()) +
                     " block(s)\n";
  for (const qm::KcfBlock<K>& b : res.blocks) text += "  " + qm::block_str(b) + "\n";
  text += std::string("stability: ") + qm::stab_status_name(stab.status) + "\n";
  if (!stab.note.empty()) text += "  note: " + stab.note + "\n";

  if (k_given) {
    std::vector<qm::SheafSummand> summands = qm::blocks_to_sheaf(res.blocks, k);
    json arr = json::array();
    text += "sheaf summands for window k = " + std::to_string(k) + "\n";
    for (const qm::SheafSummand& s : summands) {
      json sjm;
      if (s.kind == qm::SheafSummand::Kind::LineBundle) {
        sjm["kind"] = "LineBundle";
        sjm["degree"] = s.degree;
      } else {
        sjm["kind"] = "FatPoint";
        sjm["length"] = s.length;
        sjm["point_degree"] = s.point_degree;
        sjm["point"] = s.point;
        if (!s.defining_poly.empty()) sjm["defining_poly"] = s.defining_poly;
      }
      sjm["text"] = qm::summand_str(s);
      arr.push_back(sjm);
      text += "  " + qm::summand_str(s) + "\n";
    }
    out["sheaf_summands"] = arr;
  }
  emit(as_json, out, text);
  return 0;
}

int run_kcf(const json& in, i64 prime, bool k_given, i64 k, bool as_json) {
  if (prime > 0 && !qm::is_prime(prime))
    qm::fail(qm::Errc::MalformedInput, "--prime must be prime, got " + std::to_string(prime));
  std::string field = qm::field_of_representation(in);
  if (field == "Q") {
    qm::Representation<qm::Rat> r = qm::representation_rat_from_json(in);
    if (prime > 0) return run_kcf_on(qm::reduce_mod_p(r, prime), k_given, k, as_json);
    return run_kcf_on(r, k_given, k, as_json);
  }
  i64 p = qm::prime_of_field(field);
  if (prime > 0 && prime != p)
    qm::fail(qm::Errc::UnsupportedMode,
             "input already lives over " + field + "; --prime " + std::to_string(prime) +
                 " cannot apply");
  return run_kcf_on(qm::representation_fp_from_json(in, p), k_given, k, as_json);
}

// ---------------------------------------------------------------------------
// walls
// ---------------------------------------------------------------------------

// A basis of the integer kernel of x . d = 0 for a length-3 vector d != 0.
std::pair<qm::I64Vec, qm::I64Vec> perp_basis3(const qm::I64Vec& d) {
  i64 d1 = d[0], d2 = d[1], d3 = d[2];
  if (d1 == 0 && d2 == 0) return {{1, 0, 0}, {0, 1, 0}};
  // Bezout x0*d1 + y0*d2 = g > 0 by the extended Euclid recursion.
  i64 old_r = d1, r = d2, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  i64 x0 = old_s, y0 = old_t, g = old_r;
  if (g < 0) {
    g = -g;
    x0 = -x0;
    y0 = -y0;
  }
  qm::I64Vec k1 = {-d2 / g, d1 / g, 0};
  i64 g2 = std::gcd(g, d3);
  qm::I64Vec k2 = {x0 * (-d3 / g2), y0 * (-d3 / g2), g / g2};
  return {k1, k2};
}

// One interior sample per chamber of the wall arrangement inside the weight
// plane d-perp; implemented for dimension vectors of length 2 and 3.  Each
// wall's hyperplane label is the in-plane normal of its cut line, so the cut
// line itself is spanned by the label's quarter turn within the plane.
std::vector<qm::I64Vec> chamber_samples(const qm::I64Vec& d, const std::vector<qm::Wall>& ws) {
  if (d.size() == 2) {
    qm::I64Vec g = primitive({-d[1], d[0]});
    qm::I64Vec neg = {-g[0], -g[1]};
    return {g, neg};
  }

  auto [k1, k2] = perp_basis3(d);
  auto pair3 = [](const qm::I64Vec& x, const qm::I64Vec& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  auto combine = [&](i64 a, i64 b) {
    return primitive({a * k1[0] + b * k2[0], a * k1[1] + b * k2[1], a * k1[2] + b * k2[2]});
  };

  // Cut-line directions with their plane coordinates: (a*k1 + b*k2) . h = 0
  // forces (a, b) proportional to (-k2.h, k1.h).
  struct Ray {
    qm::I64Vec vec;
    i64 a, b;
  };
  std::vector<qm::I64Vec> seen_labels;
  std::vector<Ray> rays;
  for (const qm::Wall& w : ws) {
    const qm::I64Vec& h = w.hyperplane;
    if (std::find(seen_labels.begin(), seen_labels.end(), h) != seen_labels.end()) continue;
    seen_labels.push_back(h);
    i64 a = -pair3(k2, h), b = pair3(k1, h);
    i64 g = std::gcd(std::abs(a), std::abs(b));
    a /= g;
    b /= g;
    rays.push_back({combine(a, b), a, b});
    rays.push_back({combine(-a, -b), -a, -b});
  }
  if (rays.empty()) return {primitive(k1)};
  if (rays.size() == 2) {
    // A single cut line splits the plane into two half planes; sample a basis
    // vector that pairs nonzero with the line's normal.
    const qm::I64Vec& h = seen_labels[0];
    qm::I64Vec s = primitive(pair3(k1, h) != 0 ? k1 : k2);
    qm::I64Vec neg = {-s[0], -s[1], -s[2]};
    return {s, neg};
  }

  auto half = [](const Ray& r) { return (r.b > 0 || (r.b == 0 && r.a > 0)) ? 0 : 1; };
  std::sort(rays.begin(), rays.end(), [&](const Ray& x, const Ray& y) {
    int hx = half(x), hy = half(y);
    if (hx != hy) return hx < hy;
    return x.a * y.b - y.a * x.b > 0;
  });

  std::vector<qm::I64Vec> samples;
  for (size_t t = 0; t < rays.size(); ++t) {
    const qm::I64Vec& u = rays[t].vec;
    const qm::I64Vec& v = rays[(t + 1) % rays.size()].vec;
    qm::I64Vec s = primitive({u[0] + v[0], u[1] + v[1], u[2] + v[2]});
    if (pair3(s, d) != 0) qm::fail(qm::Errc::Internal, "chamber sample left the weight plane");
    for (const qm::Wall& w : ws)
      if (pair3(s, w.normal) == 0) qm::fail(qm::Errc::Internal, "chamber sample landed on a wall");
    samples.push_back(s);
  }
  return samples;
}

int run_walls(const std::string& dims_flag, const std::string& quiver_flag, bool as_json) {
  qm::I64Vec d = parse_dims(dims_flag);
  for (i64 x : d)
    if (x < 0) qm::fail(qm::Errc::MalformedInput, "--dims entries must be nonnegative");
  if (std::all_of(d.begin(), d.end(), [](i64 x) { return x == 0; }))
    qm::fail(qm::Errc::ZeroVector, "--dims must be a nonzero dimension vector");
  if (!quiver_flag.empty()) {
    qm::QuiverPresentation q = qm::quiver_by_name(quiver_alias(quiver_flag));
    if (q.vertex_count() != static_cast<int>(d.size()))
      qm::fail(qm::Errc::ShapeMismatch, "quiver " + q.id + " has " +
                                            std::to_string(q.vertex_count()) + " vertices, --dims has " +
                                            std::to_string(d.size()));
  }
  std::vector<qm::Wall> ws = qm::walls(d);
  json out;
  out["dims"] = d;
  out["walls"] = qm::walls_to_json(ws);
  out["wall_directions"] = ws.size();
  out["distinct_hyperplanes"] = qm::distinct_hyperplanes(ws);
  std::string text = "dims " + ivec_str(d) + ": " + std::to_string(ws.size()) +
                     " wall direction(s) on " + std::to_string(qm::distinct_hyperplanes(ws)) +
                     " distinct line(s)\n";
  for (const qm::Wall& w : ws)
    text += "  normal " + ivec_str(w.normal) + "  line " + ivec_str(w.hyperplane) + "\n";
  bool whole_plane_wall =
      std::any_of(ws.begin(), ws.end(), [](const qm::Wall& w) {
        return std::all_of(w.hyperplane.begin(), w.hyperplane.end(),
                           [](i64 x) { return x == 0; });
      });
  if (d.size() == 1) {
    out["chamber_samples"] = json::array();
    out["note"] = "a single vertex has a trivial weight lattice";
    text += "note: a single vertex has a trivial weight lattice\n";
  } else if (whole_plane_wall) {
    out["chamber_samples"] = json::array();
    out["note"] =
        "a destabilizing class proportional to dims makes every orthogonal weight a wall point; "
        "no open chambers";
    text += "note: a destabilizing class proportional to dims makes every orthogonal weight a "
            "wall point; no open chambers\n";
  } else if (d.size() <= 3) {
    std::vector<qm::I64Vec> samples = chamber_samples(d, ws);
    json sj = json::array();
    for (const qm::I64Vec& s : samples) sj.push_back(s);
    out["chamber_samples"] = sj;
    text += std::to_string(samples.size()) + " chamber(s); interior sample weights:\n";
    for (const qm::I64Vec& s : samples) text += "  " + ivec_str(s) + "\n";
  } else {
    out["note"] = "chamber sampling is implemented for weight lattices of rank <= 2";
    text += "note: chamber sampling is implemented for weight lattices of rank <= 2\n";
  }
  emit(as_json, out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// cohomology-oracle
// ---------------------------------------------------------------------------

std::vector<qm::SheafClass> oracle_probes(qm::Surface s, std::uint64_t seed) {
  std::vector<qm::SheafClass> probes;
  switch (s) {
    case qm::Surface::P1:
      for (i64 k = -2; k <= 2; ++k) probes.push_back(qm::line_bundle(s, k));
      break;
    case qm::Surface::P2:
      for (i64 k = -2; k <= 2; ++k) probes.push_back(qm::line_bundle(s, k));
      break;
    case qm::Surface::P1xP1:
      for (i64 m = -2; m <= 2; ++m)
        for (i64 n = -2; n <= 2; ++n) probes.push_back(qm::line_bundle_p1xp1(m, n));
      break;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> rank(1, 3), deg(-4, 4), small(-3, 3);
  for (int t = 0; t < 10; ++t) {
    switch (s) {
      case qm::Surface::P1: probes.push_back(qm::sheaf_p1(rank(rng), deg(rng))); break;
      case qm::Surface::P2: {
        i64 dg = deg(rng);
        qm::Rat ch2 = qm::Rat(small(rng)) + (dg % 2 != 0 ? qm::Rat(1, 2) : qm::Rat(0));
        probes.push_back(qm::sheaf_p2(rank(rng), dg, ch2));
        break;
      }
      case qm::Surface::P1xP1:
        probes.push_back(qm::sheaf_p1xp1(rank(rng), deg(rng), deg(rng), qm::Rat(small(rng))));
        break;
    }
  }
  return probes;
}

int run_oracle(const std::string& collection, const std::string& in_flag, bool in_given,
               std::uint64_t seed, bool as_json) {
  if (collection.empty())
    qm::fail(qm::Errc::MalformedInput, "cohomology-oracle requires --collection");
  qm::CollectionId c = qm::collection_parse(collection);
  qm::Surface s = qm::collection_surface(c);
  std::vector<qm::SheafClass> probes;
  if (in_given)
    probes.push_back(qm::sheaf_from_json(read_input(in_flag), s));
  else
    probes = oracle_probes(s, seed);

  std::vector<qm::SheafClass> duals = qm::dual_collection_classes(c);
  int sign = qm::psi_sign(c);
  std::vector<std::string> names = qm::vertex_names(c);

  json rows = json::array();
  std::string text = "collection " + qm::collection_str(c) + ": d_i = " +
                     (sign > 0 ? std::string("+") : std::string("-")) +
                     "chi(dual E_i, v) against the dictionary matrix\n";
  bool all_ok = true;
  for (const qm::SheafClass& v : probes) {
    qm::I64Vec d = qm::to_dim_vector(v, c);
    qm::I64Vec pairings;
    bool ok = true;
    for (size_t i = 0; i < duals.size(); ++i) {
      i64 p = qm::to_i64(qm::Int(sign) * qm::euler_pairing(duals[i], v));
      pairings.push_back(p);
      ok = ok && p == d[i];
    }
    all_ok = all_ok && ok;
    json row;
    row["probe"] = qm::sheaf_to_json(v);
    row["d"] = d;
    row["pairings"] = pairings;
    row["ok"] = ok;
    rows.push_back(row);
    text += "  v = " + qm::sheaf_str(v) + ": d = " + ivec_str(d) + ", pairings = " +
            ivec_str(pairings) + (ok ? "  OK" : "  MISMATCH") + "\n";
  }
  json out;
  out["collection"] = qm::collection_str(c);
  out["vertices"] = names;
  out["psi_sign"] = sign;
  out["rows"] = rows;
  out["ok"] = all_ok;
  text += all_ok ? "all probes agree\n" : "MISMATCH: the dictionary disagrees with the pairing\n";
  emit(as_json, out, text);
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact dictionary between moduli of semistable sheaves on P1, P2, P1xP1 "
      "and King-semistable quiver representations"};
  app.require_subcommand(1);

  std::string in_flag, out_flag = "text", surface_flag, collection_flag, pol_flag = "1";
  std::string quiver_flag, dims_flag, mode_flag = "auto";
  i64 budget = qm::kDefaultBudget, prime = 0, k_window = 0;
  std::uint64_t seed = 0;
  bool with_hn = false;

  auto add_io = [&](CLI::App* cmd, bool with_class_flags) {
    cmd->add_option("--in", in_flag, "input file, or a literal JSON document");
    cmd->add_option("--out", out_flag, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_class_flags) {
      cmd->add_option("--surface", surface_flag, "P1|P2|P1xP1 (when the JSON omits it)");
      cmd->add_option("--polarization", pol_flag, "ample divisor: 'a' or 'a,b'");
    }
  };

  CLI::App* dict = app.add_subcommand(
      "dict", "dimension vector, weight arrays and region flags of a class");
  add_io(dict, true);
  dict->add_option("--collection", collection_flag, "restrict to one collection");

  CLI::App* classify =
      app.add_subcommand("classify", "identify the moduli space of a sheaf class");
  add_io(classify, true);

  CLI::App* stab = app.add_subcommand("stab-check", "King stability of a representation");
  add_io(stab, false);
  stab->add_option("--prime", prime, "reduce rational input modulo this prime");
  stab->add_option("--budget", budget, "search budget for exhaustive enumeration");
  stab->add_option("--mode", mode_flag, "auto|exhaustive|kcf");
  stab->add_flag("--hn", with_hn, "also print the Harder-Narasimhan filtration");

  CLI::App* kcf_cmd = app.add_subcommand("kcf", "Kronecker canonical form of a pencil");
  add_io(kcf_cmd, false);
  kcf_cmd->add_option("--prime", prime, "reduce rational input modulo this prime");
  CLI::Option* k_opt =
      kcf_cmd->add_option("--k", k_window, "also print sheaf summands for this window");

  CLI::App* walls_cmd = app.add_subcommand("walls", "walls and chambers of a dimension vector");
  walls_cmd->add_option("--out", out_flag, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  walls_cmd->add_option("--dims", dims_flag, "dimension vector, e.g. 1,3,1")->required();
  walls_cmd->add_option("--quiver", quiver_flag, "validate against this quiver (B3, Q4, K<n>)");

  CLI::App* oracle = app.add_subcommand(
      "cohomology-oracle", "verify the dictionary against the Euler pairing");
  add_io(oracle, false);
  oracle->add_option("--collection", collection_flag, "collection to verify")->required();
  oracle->add_option("--seed", seed, "seed for the randomized probe classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are precondition violations
  }

  try {
    bool as_json = out_flag == "json";
    std::optional<qm::Surface> surf;
    if (!surface_flag.empty()) surf = qm::surface_parse(surface_flag);

    if (app.got_subcommand(dict))
      return run_dict(read_input(in_flag), surf, collection_flag, parse_polarization(pol_flag),
                      as_json);
    if (app.got_subcommand(classify))
      return run_classify(read_input(in_flag), surf, parse_polarization(pol_flag), as_json);
    if (app.got_subcommand(stab))
      return run_stab(read_input(in_flag), prime, parse_mode(mode_flag), budget, with_hn, as_json);
    if (app.got_subcommand(kcf_cmd))
      return run_kcf(read_input(in_flag), prime, k_opt->count() > 0, k_window, as_json);
    if (app.got_subcommand(walls_cmd)) return run_walls(dims_flag, quiver_flag, as_json);
    if (app.got_subcommand(oracle))
      return run_oracle(collection_flag, in_flag, !in_flag.empty(), seed, as_json);
    return 2;
  } catch (const qm::Error& e) {
    std::cout << qm::error_to_json(e).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == qm::Errc::MalformedInput) return 1;
    if (e.code() == qm::Errc::BudgetExceeded) return 3;
    return 2;
  }
}
