#include "doctest.h"

#include "quivmod/identify.hpp"
#include "quivmod/json_io.hpp"
#include "quivmod/stability.hpp"

#include <string>
#include <vector>

using namespace quivmod;

namespace {

Errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Internal;
}

}  // namespace

TEST_CASE("rationals and polynomials in JSON") {
  CHECK(rat_to_json(Rat(3, 4)) == json("3/4"));
  CHECK(rat_to_json(Rat(-5)) == json("-5"));
  CHECK(rat_from_json(json(7), "x") == Rat(7));
  CHECK(rat_from_json(json("2/6"), "x") == Rat(1, 3));
  CHECK(rat_from_json(json("-9"), "x") == Rat(-9));
  CHECK(thrown_code([] { rat_from_json(json("seven"), "x"); }) == Errc::MalformedInput);
  CHECK(thrown_code([] { rat_from_json(json(true), "x"); }) == Errc::MalformedInput);
  CHECK(thrown_code([] { rat_from_json(json("1/0"), "x"); }) == Errc::MalformedInput);

  RatPoly p = rp({Rat(-1), Rat(0), Rat(1, 2)});
  json pj = ratpoly_to_json(p);
  CHECK(pj == json::array({"-1", "0", "1/2"}));
  CHECK(ratpoly_from_json(pj, "p") == p);
  CHECK(ratpoly_to_json(rp()) == json::array());
  CHECK(ratpoly_from_json(json::array(), "p").is_zero());
  // Integer coefficients are accepted alongside strings.
  CHECK(ratpoly_from_json(json::parse("[1, \"1/2\"]"), "p") == rp({Rat(1), Rat(1, 2)}));
  CHECK(thrown_code([] { ratpoly_from_json(json::object(), "p"); }) == Errc::MalformedInput);
}

TEST_CASE("weight arrays in JSON") {
  Weight w = {rp({Rat(-1), Rat(2)}), rp({Rat(5)})};
  json wj = weight_to_json(w);
  CHECK(wj == json::parse(R"([["-1","2"],["5"]])"));
  Weight back = weight_from_json(wj, "w");
  REQUIRE(back.size() == 2);
  CHECK(back[0] == w[0]);
  CHECK(back[1] == w[1]);

  // Scalar entries are degree-zero polynomials.
  Weight scal = weight_from_json(json::parse("[3, [0, 1], \"-1/2\"]"), "w");
  REQUIRE(scal.size() == 3);
  CHECK(scal[0] == RatPoly::constant(Rat(3)));
  CHECK(scal[1] == rp({Rat(0), Rat(1)}));
  CHECK(scal[2] == RatPoly::constant(Rat(-1, 2)));

  CHECK(thrown_code([] { weight_from_json(json::object(), "w"); }) == Errc::MalformedInput);
}

TEST_CASE("sheaf classes in JSON") {
  SUBCASE("each surface round trips through its schema") {
    SheafClass p2 = sheaf_p2(2, -1, Rat(-1, 2));
    json j = sheaf_to_json(p2);
    CHECK(j == json::parse(R"({"surface":"P2","rank":2,"c1":-1,"ch2":"-1/2"})"));
    CHECK(sheaf_to_json(sheaf_from_json(j)) == j);

    SheafClass p1 = sheaf_p1(3, -4);
    j = sheaf_to_json(p1);
    CHECK(j == json::parse(R"({"surface":"P1","rank":3,"c1":-4})"));
    CHECK(sheaf_to_json(sheaf_from_json(j)) == j);

    SheafClass q = sheaf_p1xp1(1, 2, -3, Rat(-6));
    j = sheaf_to_json(q);
    CHECK(j == json::parse(R"({"surface":"P1xP1","rank":1,"c1":[2,-3],"ch2":"-6"})"));
    SheafClass back = sheaf_from_json(j);
    CHECK(back.deg_H() == 2);
    CHECK(back.deg_F() == -3);
    CHECK(back.ch2 == Rat(-6));
  }

  SUBCASE("fallback surface and defaults") {
    json j = json::parse(R"({"rank":1,"c1":3})");
    SheafClass v = sheaf_from_json(j, Surface::P1);
    CHECK(v.surface == Surface::P1);
    CHECK(v.c1a == 3);
    CHECK(thrown_code([&] { sheaf_from_json(j); }) == Errc::MalformedInput);

    // ch2 defaults to 0 on the surfaces and is rejected when nonzero on P1.
    SheafClass w = sheaf_from_json(json::parse(R"({"surface":"P2","rank":1,"c1":0})"));
    CHECK(w.ch2 == Rat(0));
    CHECK(thrown_code([] {
            sheaf_from_json(json::parse(R"({"surface":"P1","rank":1,"c1":0,"ch2":1})"));
          }) == Errc::MalformedInput);
  }

  SUBCASE("schema violations name the offending key") {
    auto message_of = [](const json& j) {
      try {
        sheaf_from_json(j);
      } catch (const Error& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message_of(json::parse(R"({"surface":"P2","rank":1,"c1":[1,2]})")).find("c1") !=
          std::string::npos);
    CHECK(message_of(json::parse(R"({"surface":"P1xP1","rank":1,"c1":0})")).find("c1") !=
          std::string::npos);
    CHECK(message_of(json::parse(R"({"surface":"P2","c1":0})")).find("rank") !=
          std::string::npos);
    CHECK(thrown_code([] { sheaf_from_json(json::array()); }) == Errc::MalformedInput);
    CHECK(thrown_code([] {
            sheaf_from_json(json::parse(R"({"surface":"P3","rank":1,"c1":0})"));
          }) == Errc::MalformedInput);
  }
}

TEST_CASE("polarizations in JSON") {
  Polarization A = polarization_from_json(json::parse(R"({"degA":2})"));
  CHECK(A.a == 2);
  CHECK(A.b == 1);
  A = polarization_from_json(json::parse(R"({"a":3,"b":5})"));
  CHECK(A.a == 3);
  CHECK(A.b == 5);
  A = polarization_from_json(json::parse(R"({"a":4})"));
  CHECK(A.b == 1);

  CHECK(polarization_to_json(Polarization{2, 1}, Surface::P2) == json::parse(R"({"degA":2})"));
  CHECK(polarization_to_json(Polarization{1, 3}, Surface::P1xP1) ==
        json::parse(R"({"a":1,"b":3})"));

  CHECK(thrown_code([] { polarization_from_json(json::parse(R"({"degA":0})")); }) ==
        Errc::ZeroInput);
  CHECK(thrown_code([] { polarization_from_json(json::parse(R"({"a":1,"b":-2})")); }) ==
        Errc::ZeroInput);
  CHECK(thrown_code([] { polarization_from_json(json(1)); }) == Errc::MalformedInput);
}

TEST_CASE("representations in JSON") {
  SUBCASE("rational round trip") {
    json j = json::parse(R"({
      "quiver": "K2", "field": "Q", "dims": [1, 2],
      "matrices": {"f0": [["1"], ["0"]], "f1": [["1/2"], ["1"]]}
    })");
    Representation<Rat> r = representation_rat_from_json(j);
    CHECK(r.dims == I64Vec{1, 2});
    CHECK(r.mats[1].at(0, 0) == Rat(1, 2));
    json out = representation_to_json(r);
    CHECK(out["quiver"] == "K2");
    CHECK(out["field"] == "Q");
    CHECK(out["matrices"]["f0"] == json::parse(R"([["1"],["0"]])"));
    // Emitted documents parse back to the same representation.
    Representation<Rat> again = representation_rat_from_json(out);
    CHECK(again.mats[0] == r.mats[0]);
    CHECK(again.mats[1] == r.mats[1]);
  }

  SUBCASE("prime fields") {
    CHECK(prime_of_field("F_7") == 7);
    CHECK(thrown_code([] { prime_of_field("F_6"); }) == Errc::MalformedInput);
    CHECK(thrown_code([] { prime_of_field("GF(7)"); }) == Errc::MalformedInput);
    CHECK(thrown_code([] { prime_of_field("F_x"); }) == Errc::MalformedInput);

    json j = json::parse(R"({
      "quiver": "K2", "field": "F_5", "dims": [1, 1],
      "matrices": {"f0": [[7]], "f1": [[-1]]}
    })");
    CHECK(field_of_representation(j) == "F_5");
    Representation<Fp> r = representation_fp_from_json(j, 5);
    CHECK(r.mats[0].at(0, 0) == Fp(2, 5));  // entries reduce mod p
    CHECK(r.mats[1].at(0, 0) == Fp(4, 5));
    CHECK(representation_to_json(r)["field"] == "F_5");
  }

  SUBCASE("schema violations") {
    json good = json::parse(R"({
      "quiver": "K2", "field": "Q", "dims": [1, 1],
      "matrices": {"f0": [[1]], "f1": [[2]]}
    })");
    CHECK_NOTHROW(representation_rat_from_json(good));

    json bad = good;
    bad["matrices"].erase("f1");
    CHECK(thrown_code([&] { representation_rat_from_json(bad); }) == Errc::MalformedInput);

    bad = good;
    bad["matrices"]["f2"] = json::parse("[[1]]");
    CHECK(thrown_code([&] { representation_rat_from_json(bad); }) == Errc::MalformedInput);

    bad = good;
    bad["matrices"]["f0"] = json::parse("[[1, 2]]");  // wrong shape for dims
    CHECK(thrown_code([&] { representation_rat_from_json(bad); }) == Errc::MalformedInput);

    bad = good;
    bad["dims"] = json::parse("[1, 1, 1]");
    CHECK(thrown_code([&] { representation_rat_from_json(bad); }) == Errc::MalformedInput);

    bad = good;
    bad["quiver"] = "K9000";
    CHECK(thrown_code([&] { representation_rat_from_json(bad); }) == Errc::MalformedInput);

    // Arrows into or out of a zero-dimensional vertex may be omitted.
    json zero = json::parse(R"({
      "quiver": "K2", "field": "Q", "dims": [0, 2], "matrices": {}
    })");
    Representation<Rat> r = representation_rat_from_json(zero);
    CHECK(r.mats[0].rows() == 2);
    CHECK(r.mats[0].cols() == 0);
  }
}

TEST_CASE("analysis results in JSON") {
  SUBCASE("stability verdicts") {
    json j = json::parse(R"({
      "quiver": "K2", "field": "Q", "dims": [1, 1],
      "matrices": {"f0": [[1]], "f1": [[0]]}
    })");
    Representation<Rat> r = representation_rat_from_json(j);
    Weight theta = weight_from_ints({-1, 1});
    StabilityVerdict<Rat> v = find_destabilizer(r, theta);
    json vj = verdict_to_json(v);
    CHECK(vj["status"] == "Stable");
    CHECK_FALSE(vj.contains("witness"));
    CHECK_FALSE(vj.contains("vacuous"));

    // A decomposable representation yields a serializable witness.
    json j2 = json::parse(R"({
      "quiver": "K2", "field": "Q", "dims": [2, 2],
      "matrices": {"f0": [[1,0],[0,1]], "f1": [[2,0],[0,3]]}
    })");
    StabilityVerdict<Rat> v2 =
        find_destabilizer(representation_rat_from_json(j2), weight_from_ints({-1, 1}));
    json vj2 = verdict_to_json(v2);
    CHECK(vj2["status"] == "StrictlySemistable");
    REQUIRE(vj2.contains("witness"));
    CHECK(vj2["witness"]["dims"] == json::parse("[1,1]"));
    CHECK(vj2["witness"]["pairing"] == json::array());  // zero pairing
    CHECK(vj2["witness"]["bases"].size() == 2);
  }

  SUBCASE("canonical forms and Harder-Narasimhan steps") {
    Pencil<Rat> p(Matrix<Rat>::from_rows(Rat(0), {{Rat(1)}, {Rat(0)}}),
                  Matrix<Rat>::from_rows(Rat(0), {{Rat(0)}, {Rat(1)}}));
    KcfResult<Rat> r = kcf(p);
    json kj = kcf_result_to_json(r);
    REQUIRE(kj["blocks"].size() == 1);
    CHECK(kj["blocks"][0]["kind"] == "ColumnBlock");
    CHECK(kj["blocks"][0]["size"] == 1);
    REQUIRE(kj["basis_source"].size() == 1);  // adapted basis of the source line
    CHECK(kj["basis_source"][0].size() == 1);
    CHECK(kj["basis_target"].size() == 2);

    KcfBlock<Rat> jb(Rat(0));
    jb.kind = BlockKind::Jordan;
    jb.size = 2;
    jb.eigenvalue = Rat(-7, 2);
    json bj = block_to_json(jb);
    CHECK(bj == json::parse(R"({"kind":"Jordan","size":2,"eigenvalue":"-7/2"})"));

    json hn = json::parse(R"({
      "quiver": "K2", "field": "Q", "dims": [2, 1],
      "matrices": {"f0": [[1, 0]], "f1": [[0, 0]]}
    })");
    std::vector<HnStep<Rat>> steps =
        hn_filtration(representation_rat_from_json(hn), weight_from_ints({-1, 1}));
    json hj = hn_to_json(steps);
    REQUIRE(hj.size() == 2);
    CHECK(hj[0]["dims"] == json::parse("[1,0]"));
    CHECK(hj[0]["factor_slope"] == json::array({"-1"}));
    CHECK(hj[1]["dims"] == json::parse("[2,1]"));
    CHECK(hj[1]["factor_dims"] == json::parse("[1,1]"));
  }

  SUBCASE("walls") {
    std::vector<Wall> ws = walls({1, 1});
    json wj = walls_to_json(ws);
    REQUIRE(wj.size() == 2);
    for (const auto& w : wj) {
      CHECK(w.contains("normal"));
      CHECK(w.contains("hyperplane"));
      CHECK(w["normal"].is_array());
    }
  }

  SUBCASE("moduli reports") {
    // Ideal sheaf of one point on the plane: the Hilbert scheme is P^2.
    ModuliReport rep = identify_moduli(sheaf_p2(1, 0, Rat(-1)), Polarization{1, 1});
    json j = moduli_report_to_json(rep);
    CHECK(j["input"] == json::parse(R"({"surface":"P2","rank":1,"c1":0,"ch2":"-1"})"));
    CHECK(j["polarization"] == json::parse(R"({"degA":1})"));
    CHECK(j["discriminant"] == "2");
    CHECK(j["expected_dimension"] == 2);
    REQUIRE(j.contains("semistable"));
    CHECK(j["semistable"]["kind"] == "ProjectiveSpace");
    CHECK(j["semistable"]["m"] == 2);
    REQUIRE(j["routes"].is_array());
    REQUIRE(!j["routes"].empty());
    const json& route = j["routes"][0];
    CHECK(route.contains("collection"));
    CHECK(route.contains("twist"));
    CHECK(route.contains("region"));
    CHECK(route["region"].contains("in_R"));
    CHECK(route.contains("d"));
    CHECK(route["theta"].contains("theta_G"));

    // A class with negative discriminant is declared empty by the bound.
    ModuliReport neg = identify_moduli(sheaf_p2(2, 0, Rat(1)), Polarization{1, 1});
    json nj = moduli_report_to_json(neg);
    CHECK(nj["empty_by_discriminant"] == true);
    CHECK(nj["semistable"]["kind"] == "Empty");
  }

  SUBCASE("errors") {
    try {
      sheaf_from_json(json::array());
    } catch (const Error& e) {
      json ej = error_to_json(e);
      CHECK(ej["error"]["code"] == "MalformedInput");
      std::string msg = ej["error"]["message"].get<std::string>();
      CHECK(msg.find("MalformedInput") == std::string::npos);  // prefix stripped
      CHECK(!msg.empty());
    }
  }
}
