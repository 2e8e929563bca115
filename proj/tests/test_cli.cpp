#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "qhyp/json_io.hpp"
#include "qhyp/pairs.hpp"
#include "qhyp/sampling.hpp"

using namespace qhyp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "qhyp_cli_test";
  fs::create_directories(p);
  return p;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string write_json(const std::string& name, const Json& j) { return write(name, j.dump(2)); }

Json transformed(const PointConfig& c, const HMatrix& m, Rng& rng) {
  std::vector<HVector> lifts;
  for (const auto& p : c.lifts) lifts.push_back(m * p * random_quaternion(rng));
  return to_json(gram_of(c.space, lifts));
}

Json conjugated_pair(const Json& pair, const HMatrix& c) {
  Json out;
  for (const char* key : {"A", "B"}) {
    HMatrix a = hmatrix_from_json(pair[key]);
    auto sp = HermitianSpace::corner(static_cast<int>(a.rows()) - 1);
    out[key] = to_json(c * a * (sp.H * c.adjoint() * sp.H));
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify") {
    auto f = write("diag.json", R"({"n": 1, "rows": [[[2,0,0,0],[0,0,0,0]],[[0,0,0,0],[0.5,0,0,0]]], "expect": "hyperbolic"})");
    auto r = run({"classify", f});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["type"] == "hyperbolic");
    CHECK(j["real_trace"].size() == 1);
    CHECK(j["real_trace"][0].get<double>() == doctest::Approx(-5));
    CHECK(j["expect_matches"] == true);

    auto g = write("diag_wrong.json", R"({"rows": [[[2,0,0,0],[0,0,0,0]],[[0,0,0,0],[0.5,0,0,0]]], "expect": "elliptic"})");
    CHECK(run({"classify", g}).code == 1);
  }

  TEST_CASE("malformed input exits 2") {
    CHECK(run({"classify", write("bad.json", "{not json")}).code == 2);
    CHECK(run({"classify", write("nonsquare.json", R"({"rows": [[[1,0,0,0]], [[0,0,0,0],[1,0,0,0]]]})")}).code == 2);
    CHECK(run({"classify", write("nonmember.json", R"({"rows": [[[2,0,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,0,0]]]})")}).code == 2);
    CHECK(run({"classify", (scratch() / "missing.json").string()}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"invariants", write("positive.json", R"({"n": 2, "points": [[[0,0,0,0],[1,0,0,0],[0,0,0,0]]]})")}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("sampling is deterministic") {
    auto a = run({"sample", "config", "--m", "5", "--i", "3", "--count", "2", "--seed", "4", "--signature", "2"});
    auto b = run({"--seed", "4", "--signature", "2", "sample", "config", "--count", "2", "--m", "5", "--i", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["items"].size() == 2);
    CHECK(j["items"][0]["object"]["i"] == 3);
    CHECK(run({"sample", "config", "--m", "5", "--i", "2"}).code == 2);
    CHECK(run({"sample", "hyperbolic", "--seed", "5"}).out != run({"sample", "hyperbolic", "--seed", "6"}).out);
  }

  TEST_CASE("invariants and round trip of emitted json") {
    Json sample = Json::parse(run({"sample", "config", "--m", "6", "--i", "3", "--seed", "2"}).out);
    auto f = write_json("config.json", sample["items"][0]["object"]);
    auto r = run({"invariants", f});
    REQUIRE(r.code == 0);
    CHECK(r.out == run({"invariants", f}).out);
    Json j = Json::parse(r.out);
    CHECK(j["counts"]["d"] == 9);
    InvariantProfile p = profile_from_json(j);
    Json again = to_json(p);
    for (const auto& key : {"n", "m", "i", "u0", "A23", "cross_ratios", "radial", "pairs", "counts"})
      CHECK(again[key] == j[key]);

    // configuration json re-parses to the same lifts
    PointConfig c = config_from_json(sample["items"][0]["object"]);
    CHECK(to_json(c) == sample["items"][0]["object"]);

    auto csv = run({"invariants", f, "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("slot,a,b,c,d,scalar,value.w,value.x,value.y,value.z\n", 0) == 0);
    CHECK(csv.out.find("\nX2,4,") != std::string::npos);
  }

  TEST_CASE("congruent") {
    Rng rng(3);
    auto sp = HermitianSpace::corner(2);
    auto cfg = gram_of(sp, random_config_lifts(sp, 5, 3, rng));
    auto fa = write_json("cfg_a.json", to_json(cfg));
    auto fb = write_json("cfg_b.json", transformed(cfg, random_isometry(sp, rng), rng));
    auto r = run({"congruent", fa, fb});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "congruent");
    CHECK(j["residual"].get<double>() < 1e-7);
    HMatrix w = hmatrix_from_json(j["witness"]);
    CHECK(membership_error(sp, w) < 1e-8);

    auto other = write_json("cfg_c.json", to_json(gram_of(sp, random_config_lifts(sp, 5, 3, rng))));
    auto neg = run({"congruent", fa, other});
    CHECK(neg.code == 1);
    CHECK(Json::parse(neg.out)["verdict"] == "not-congruent");
  }

  TEST_CASE("conjugate-pair") {
    Json sample = Json::parse(run({"sample", "pair", "--signature", "2", "--seed", "8"}).out);
    Json pair = sample["items"][0]["object"];
    Rng rng(5);
    auto sp = HermitianSpace::corner(2);
    auto f1 = write_json("pair1.json", pair);
    auto f2 = write_json("pair2.json", conjugated_pair(pair, random_isometry(sp, rng)));
    auto r = run({"conjugate-pair", f1, f2});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["verdict"] == "conjugate");

    Json swapped = {{"A", pair["A"]}, {"B", conjugated_pair(pair, random_isometry(sp, rng))["B"]}};
    auto n = run({"conjugate-pair", f1, write_json("pair3.json", swapped)});
    CHECK(n.code == 1);
    CHECK(Json::parse(n.out)["failed_invariant"] == "canonical-orbit");

    Json same = {{"A", pair["A"]}, {"B", pair["A"]}};
    auto s = write_json("pair4.json", same);
    CHECK(run({"conjugate-pair", s, s}).code == 2);
  }

  TEST_CASE("verify") {
    auto r = run({"verify", "--suite", "2,8"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS  2.", 0) == 0);
    CHECK(r.out.find("\nPASS  8.") != std::string::npos);
    auto j = run({"verify", "--suite", "2", "--format", "json"});
    CHECK(Json::parse(j.out)[0]["pass"] == true);
    CHECK(run({"verify", "--suite", "12"}).code == 2);
  }
}
