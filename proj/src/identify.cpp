#include "quivmod/identify.hpp"

#include "quivmod/quiver.hpp"

#include <algorithm>
#include <numeric>

namespace quivmod {

namespace {

bool conclusive(const ModuliDescription& d) {
  switch (d.kind) {
    case ModuliKind::Empty:
    case ModuliKind::Point:
    case ModuliKind::ProjectiveSpace:
    case ModuliKind::Grassmannian: return true;
    case ModuliKind::SymbolicKronecker:
    case ModuliKind::SymbolicQuiver: return false;
  }
  fail(Errc::Internal, "unreachable");
}

// Applies a Kronecker-quiver reduction K(3; x, y) reached through a corollary
// of the dictionary theorems. Negative entries mean no representation exists.
void apply_K3(RouteReport& r, i64 x, i64 y, const std::string& why) {
  std::optional<ModuliDescription> ss, st;
  if (x < 0 || y < 0) {
    ss = ModuliDescription::empty("dimension vector has a negative entry");
    st = ss;
  } else {
    KnReduction red = reduce_Kn(3, x, y);
    ss = red.semistable;
    st = red.stable;
    std::string chain = why;
    for (const ReductionStep& s : red.trace)
      chain += "; " + s.rule + " -> (" + std::to_string(s.a) + ", " + std::to_string(s.b) + ")";
    r.notes.push_back(chain);
  }
  if (r.semistable) {
    if (!same_space(*r.semistable, *ss))
      fail(Errc::Internal, "closed-form routes disagree within one collection");
  } else {
    r.semistable = ss;
    if (x < 0 || y < 0) r.notes.push_back(why + "; a dimension is negative, so no representation exists");
  }
  if (!r.stable && st) r.stable = st;
}

// Complete analysis of a two-vertex support {src -> tgt} carrying the two
// arrows of a Kronecker subquiver of Q4 (or an isolated, arrowless pair).
void p1xp1_pair_rule(RouteReport& r, int src, int tgt, bool adjacent) {
  i64 s = r.d[src], t = r.d[tgt];
  if (!adjacent) {
    // No arrows between the supported vertices: every pair of subspaces is a
    // subrepresentation, so a vertex simple with negative weight destabilizes
    // everything. theta_G cannot vanish on both vertices inside the region.
    int sign_src = lex_sign(r.theta.theta_g[src]);
    int sign_tgt = lex_sign(r.theta.theta_g[tgt]);
    if (sign_src == 0 && sign_tgt == 0)
      fail(Errc::Internal, "isolated-pair weights cannot both vanish in region");
    r.semistable = ModuliDescription::empty("two isolated vertices: a vertex simple pairs "
                                            "negatively with the weight");
    r.stable = r.semistable;
    return;
  }
  // The weight restricted to the pair is orthogonal to (s, t), hence a
  // positive multiple of the canonical Kronecker weight; positivity holds in
  // the region (checked here), so the two-arrow classification applies.
  int sign_tgt = lex_sign(r.theta.theta_g[tgt]);
  int sign_src = lex_sign(r.theta.theta_g[src]);
  if (!(sign_tgt > 0 || sign_src < 0)) {
    r.notes.push_back("two-vertex support but the restricted weight is not positively "
                      "oriented; no closed form claimed");
    return;
  }
  K2Classification cls = classify_K2({s, t});
  r.semistable = cls.semistable;
  r.stable = cls.stable;
  r.notes.push_back("support reduces to one Kronecker pair; two-arrow classification applied");
}

void identify_p1xp1_route(RouteReport& r) {
  if (!r.theorem_applies) return;
  if (*std::min_element(r.d.begin(), r.d.end()) < 0) {
    r.semistable = ModuliDescription::empty("dimension vector has a negative entry");
    r.stable = r.semistable;
    return;
  }
  std::vector<int> supp;
  for (int i = 0; i < 4; ++i)
    if (r.d[i] != 0) supp.push_back(i);
  if (supp.empty()) fail(Errc::Internal, "zero dimension vector for a nonzero class");
  if (supp.size() == 1) {
    bool st = r.d[supp[0]] == 1;
    r.semistable = ModuliDescription::point(st, "direct sums of one vertex simple");
    r.stable = st ? *r.semistable : ModuliDescription::empty();
    return;
  }
  if (supp.size() == 2) {
    // Vertex order: 0 = (0,-1), 1 = (0,0), 2 = (1,-1), 3 = (1,0).
    // Arrow-connected pairs of Q4: 0->1, 0->2, 1->3, 2->3.
    static const bool adj[4][4] = {{false, true, true, false},
                                   {false, false, false, true},
                                   {false, false, false, true},
                                   {false, false, false, false}};
    int u = supp[0], w = supp[1];
    p1xp1_pair_rule(r, u, w, adj[u][w]);
    return;
  }
  if (supp.size() == 3 && (r.d[0] == 0 || r.d[3] == 0)) {
    ModuliDescription s;
    s.kind = ModuliKind::SymbolicQuiver;
    s.quiver_id = r.d[0] == 0 ? "Q4/J (source vertex empty)" : "Q4/J (sink vertex empty)";
    s.dims = r.d;
    s.note = "reduces to a three-vertex double-arrow quiver; the relations are vacuous";
    r.semistable = s;
    return;
  }
}

void identify_p2_route(RouteReport& r, bool first_collection) {
  // Negative entries and the special pencil rule need the full region
  // hypothesis of the isomorphism theorem.
  if (r.theorem_applies && *std::min_element(r.d.begin(), r.d.end()) < 0) {
    r.semistable = ModuliDescription::empty("dimension vector has a negative entry");
    r.stable = r.semistable;
    return;
  }
  // Kronecker reductions: with one outer coordinate zero the three-vertex
  // representations reduce to the three-arrow Kronecker quiver. The first
  // collection's cases need only the slope window; the second collection's
  // cases need the full region hypothesis.
  bool gate = first_collection ? r.flags.in_r : r.theorem_applies;
  if (gate) {
    if (r.d[0] == 0) apply_K3(r, r.d[1], r.d[2], "outer coordinate d_{-1} = 0: K(3; d_0, d_1)");
    if (r.d[2] == 0) apply_K3(r, r.d[0], r.d[1], "outer coordinate d_1 = 0: K(3; d_{-1}, d_0)");
  }
  if (r.semistable) return;
  // Pencil-space rule at d = (1,3,1): when the weight is numerically
  // equivalent to (-1,-1,4), semistable = stable = P(ker of the relation
  // pairing on 3x3 matrices): antisymmetric (first collection, P^2) or
  // symmetric (second collection, P^5) matrix pencils.
  if (r.theorem_applies && r.d == I64Vec({1, 3, 1}) &&
      numerically_equivalent(r.theta.theta_g, weight_from_ints({-1, -1, 4}), r.d)) {
    r.semistable = first_collection
                       ? ModuliDescription::projective(
                             2, "projectivized antisymmetric 3x3 matrices inside P^8")
                       : ModuliDescription::projective(
                             5, "projectivized symmetric 3x3 matrices inside P^8");
    r.stable = r.semistable;
    r.notes.push_back("weight numerically equivalent to (-1,-1,4); (1,3,1) is coprime for it");
  }
}

RouteReport build_route(const SheafClass& v, const CollectionId& c, const Polarization& A) {
  RouteReport r;
  r.collection = c;
  TwistResult tw = normalize_twist(v, c, A);
  r.twist_m = tw.m;
  r.twist_n = tw.n;
  r.twisted = tw.twisted;
  r.flags = region_membership(r.twisted, c, A);
  switch (c.kind) {
    case CollectionKind::P1_k:
    case CollectionKind::P1xP1_std: r.theorem_applies = r.flags.in_r; break;
    case CollectionKind::P2_first:
    case CollectionKind::P2_second: r.theorem_applies = r.flags.in_rtilde; break;
  }
  r.d = to_dim_vector(r.twisted, c);
  r.theta = theta_arrays(r.twisted, c, A);
  bool effective = std::all_of(r.d.begin(), r.d.end(), [](i64 x) { return x >= 0; });
  if (effective) {
    r.theta_integral = integral_weight_in_class(r.theta.theta_g, r.d);
    r.coprime = is_theta_coprime(r.theta.theta_g, r.d);
  } else {
    r.coprime = false;
    r.notes.push_back("dimension vector leaves the effective cone: no representation carries it");
  }
  return r;
}

void merge_identifications(ModuliReport& rep) {
  const ModuliDescription* agreed_ss = nullptr;
  const ModuliDescription* agreed_st = nullptr;
  const ModuliDescription* symbolic_ss = nullptr;
  for (const RouteReport& r : rep.routes) {
    if (r.semistable) {
      if (conclusive(*r.semistable)) {
        if (agreed_ss && !same_space(*agreed_ss, *r.semistable))
          fail(Errc::Internal, "conclusive identifications disagree across collections");
        if (!agreed_ss) agreed_ss = &*r.semistable;
      } else if (!symbolic_ss) {
        symbolic_ss = &*r.semistable;
      }
    }
    if (r.stable && conclusive(*r.stable)) {
      if (agreed_st && !same_space(*agreed_st, *r.stable))
        fail(Errc::Internal, "conclusive stable identifications disagree across collections");
      if (!agreed_st) agreed_st = &*r.stable;
    }
  }
  if (agreed_ss)
    rep.semistable = *agreed_ss;
  else if (symbolic_ss)
    rep.semistable = *symbolic_ss;
  if (agreed_st) rep.stable = *agreed_st;

  // A coprime dimension vector on a theorem-verified route makes the stable
  // and semistable loci coincide and guarantees a universal family.  An empty
  // space needs neither remark.
  if (rep.semistable && rep.semistable->kind == ModuliKind::Empty) return;
  for (const RouteReport& r : rep.routes)
    if (r.theorem_applies && r.coprime) {
      rep.notes.push_back("coprime weight on " + collection_str(r.collection) +
                          ": stable = semistable and a universal family exists");
      if (rep.semistable && !rep.stable && conclusive(*rep.semistable)) rep.stable = rep.semistable;
      break;
    }
}

}  // namespace

ModuliReport identify_moduli(const SheafClass& v, const Polarization& A) {
  validate(v);
  ModuliReport rep;
  rep.input = v;
  rep.polarization = A;
  i64 g = std::gcd(std::llabs(v.rank), std::llabs(deg_a(v, A)));
  rep.invariant_gcd = std::gcd(g, std::llabs(to_i64(chi_int(v))));

  if (v.surface == Surface::P1) {
    if (v.rank < 0) fail(Errc::NegativeRank, "sheaves on a curve have rank >= 0");
    if (v.rank == 0 && v.c1a == 0) fail(Errc::ZeroVector, "the zero class is not a moduli problem");
    rep.expected_dimension = 1 - v.rank * v.rank;
    P1Classification cls = classify_P1(v.rank, v.c1a);
    if (!cls.d.empty()) {
      CollectionId c{CollectionKind::P1_k, cls.k};
      RouteReport r = build_route(v, c, A);
      r.semistable = cls.semistable;
      r.stable = cls.stable;
      r.notes.push_back("splitting classification, cross-checked through the two-arrow quiver");
      rep.routes.push_back(std::move(r));
    } else {
      rep.notes.push_back("rank 0 with negative degree admits no dimension vector");
    }
    rep.semistable = cls.semistable;
    rep.stable = cls.stable;
    return rep;
  }

  if (v.rank <= 0) fail(Errc::NonPositiveRank, "surface moduli need rank > 0 here");
  Int delta = bogomolov_delta(v);
  rep.discriminant = delta;
  rep.expected_dimension = 1 - v.rank * v.rank + to_i64(delta);
  if (delta < 0) {
    rep.empty_by_discriminant = true;
    rep.semistable = ModuliDescription::empty("discriminant < 0: the Bogomolov inequality "
                                              "excludes semistable sheaves");
    rep.stable = rep.semistable;
  }

  std::vector<CollectionId> candidates;
  if (v.surface == Surface::P2)
    candidates = {{CollectionKind::P2_first, 0}, {CollectionKind::P2_second, 0}};
  else
    candidates = {{CollectionKind::P1xP1_std, 0}};

  for (const CollectionId& c : candidates) {
    try {
      RouteReport r = build_route(v, c, A);
      if (!rep.empty_by_discriminant) {
        if (v.surface == Surface::P2)
          identify_p2_route(r, c.kind == CollectionKind::P2_first);
        else
          identify_p1xp1_route(r);
      }
      rep.routes.push_back(std::move(r));
    } catch (const Error& e) {
      rep.notes.push_back(collection_str(c) + ": " + e.what());
    }
  }

  if (rep.routes.empty() && !rep.empty_by_discriminant)
    fail(Errc::OutOfRegion, "no collection admits a region twist for this class; " +
                                (rep.notes.empty() ? std::string() : rep.notes.front()));

  if (!rep.empty_by_discriminant) {
    merge_identifications(rep);
  } else {
    // Consistency: a closed form may not contradict the discriminant bound.
    for (const RouteReport& r : rep.routes)
      if (r.semistable && conclusive(*r.semistable) && r.semistable->kind != ModuliKind::Empty)
        fail(Errc::Internal, "nonempty closed form despite a negative discriminant");
  }
  return rep;
}

std::string report_str(const ModuliReport& rep) {
  std::string s;
  s += "class " + sheaf_str(rep.input) + " on " + surface_name(rep.input.surface);
  s += ", polarization (" + std::to_string(rep.polarization.a);
  if (rep.input.surface == Surface::P1xP1) s += ", " + std::to_string(rep.polarization.b);
  s += ")\n";
  if (rep.discriminant)
    s += "discriminant " + rep.discriminant->str() +
         (rep.empty_by_discriminant ? " (< 0: empty)" : "") + "\n";
  if (rep.expected_dimension)
    s += "expected stable dimension " + std::to_string(*rep.expected_dimension) + "\n";
  s += "gcd(rank, deg_A, chi) = " + std::to_string(rep.invariant_gcd) + "\n";
  for (const RouteReport& r : rep.routes) {
    s += "route " + collection_str(r.collection) + ", twist (" + std::to_string(r.twist_m);
    if (r.collection.kind == CollectionKind::P1xP1_std) s += ", " + std::to_string(r.twist_n);
    s += "): twisted class " + sheaf_str(r.twisted) + "\n";
    s += "  d = (";
    for (size_t i = 0; i < r.d.size(); ++i) s += (i ? "," : "") + std::to_string(r.d[i]);
    s += "), theta_G = (";
    for (size_t i = 0; i < r.theta.theta_g.size(); ++i)
      s += (i ? ", " : "") + poly_str(r.theta.theta_g[i]);
    s += "), integral representative (";
    for (size_t i = 0; i < r.theta_integral.size(); ++i)
      s += (i ? "," : "") + std::to_string(r.theta_integral[i]);
    s += ")\n";
    s += std::string("  region: window ") + (r.flags.in_r ? "yes" : "no") + ", sandwich " +
         (r.flags.in_rg ? "yes" : "no") + ", closure " + (r.flags.in_s ? "yes" : "no") +
         ", theorem " + (r.theorem_applies ? "applies" : "does not apply") + ", coprime " +
         (r.coprime ? "yes" : "no") + "\n";
    if (r.semistable) s += "  semistable: " + moduli_str(*r.semistable) + "\n";
    if (r.stable) s += "  stable: " + moduli_str(*r.stable) + "\n";
    for (const std::string& n : r.notes) s += "  note: " + n + "\n";
  }
  if (rep.semistable)
    s += "identification: " + moduli_str(*rep.semistable) +
         (rep.stable ? " (stable locus: " + moduli_str(*rep.stable) + ")" : "") + "\n";
  else
    s += "identification: none (diagnostics above)\n";
  for (const std::string& n : rep.notes) s += "note: " + n + "\n";
  return s;
}

}  // namespace quivmod
