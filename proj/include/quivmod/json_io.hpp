#pragma once

#include "quivmod/identify.hpp"
#include "quivmod/kcf.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace quivmod {

// All machine-readable input and output uses JSON with insertion-ordered keys
// so emitted documents are reproducible byte for byte.
using json = nlohmann::ordered_json;

// Conventions, shared by every schema here:
//   * rationals serialize as the string "p/q", or "p" when the denominator
//     is 1; integers are accepted anywhere a rational is expected;
//   * polynomials serialize as arrays of rationals, constant term first;
//   * matrices serialize as arrays of rows.
// Schema violations throw Errc::MalformedInput with a message naming the key.

json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j, const std::string& what);

json ratpoly_to_json(const RatPoly& p);
RatPoly ratpoly_from_json(const json& j, const std::string& what);

// A weight array: one polynomial per vertex. Accepts scalar entries as
// degree-zero polynomials.
json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j, const std::string& what);

// {"surface": "P1"|"P2"|"P1xP1", "rank": int, "c1": int | [degH, degF],
//  "ch2": rational} -- ch2 is omitted on P1 and defaults to 0 elsewhere.
// When the document has no "surface" key the fallback supplies it.
json sheaf_to_json(const SheafClass& v);
SheafClass sheaf_from_json(const json& j, std::optional<Surface> fallback = {});

// {"degA": int} on P1/P2, {"a": int, "b": int} on P1xP1; either form parses.
json polarization_to_json(const Polarization& A, Surface s);
Polarization polarization_from_json(const json& j);

// {"quiver": id, "field": "Q" | "F_<p>", "dims": [...],
//  "matrices": {arrow label: [[entries]], ...}}.
std::string field_of_representation(const json& j);  // "Q" or "F_<p>"
i64 prime_of_field(const std::string& field);        // MalformedInput unless "F_<p>"
json representation_to_json(const Representation<Rat>& r);
json representation_to_json(const Representation<Fp>& r);
Representation<Rat> representation_rat_from_json(const json& j);
Representation<Fp> representation_fp_from_json(const json& j, i64 p);

// Pencils reuse the representation schema restricted to the two-arrow quiver.
json pencil_to_json(const Pencil<Rat>& p);
json pencil_to_json(const Pencil<Fp>& p);

template <class K>
json matrix_to_json(const Matrix<K>& m);

// {"kind": block kind, "size": n, "eigenvalue": rational (Jordan only),
//  "minpoly": polynomial (generalized Jordan only)}.
template <class K>
json block_to_json(const KcfBlock<K>& b);
template <class K>
json kcf_result_to_json(const KcfResult<K>& r);

template <class K>
json verdict_to_json(const StabilityVerdict<K>& v);
template <class K>
json hn_to_json(const std::vector<HnStep<K>>& steps);

json walls_to_json(const std::vector<Wall>& ws);

json moduli_description_to_json(const ModuliDescription& d);
json theta_to_json(const ThetaArrays& t);
json region_flags_to_json(const RegionFlags& f);
json route_to_json(const RouteReport& r);
json moduli_report_to_json(const ModuliReport& r);

// {"error": {"code": ..., "message": ...}} for machine-readable failures.
json error_to_json(const Error& e);

}  // namespace quivmod
