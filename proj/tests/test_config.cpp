#include "config.hpp"

#include "coendo/error.hpp"

#include <doctest.h>

using namespace coendo;
using namespace coendo::cli;
using nlohmann::json;

TEST_CASE("config parsing") {
  auto j = json::parse(R"({
    "format_version": 1,
    "group": {"type": "B2", "lattice": "ad"},
    "q": 9,
    "curve": {"genus": 2, "place_degrees": [1, 2]},
    "characters": {"places": [{"tag": "inf", "lambda": [1, 0]}, {"tag": "v1", "lambda": [0, -1]}]},
    "convention": "resultat",
    "route": "enumerate",
    "caps": {"points": 500, "threads": 3}
  })");
  auto c = parse_config(j);
  CHECK(c.type == "B2");
  CHECK(c.lattice == "ad");
  CHECK(c.q == 9);
  CHECK(c.curve.place_degrees == std::vector<int>{1, 2});
  CHECK(c.spec.places.size() == 2);
  CHECK(c.spec.places[1].lambda(1) == -1);
  CHECK(c.convention == Convention::Resultat);
  CHECK(c.route == Route::Enumerate);
  CHECK(c.caps.points == 500);
  CHECK(c.caps.threads == 3);
  CHECK(c.datum().p() == 3);

  // Round trip through the canonical form.
  auto back = parse_config(c.canonical());
  CHECK(back.hash() == c.hash());
}

TEST_CASE("config diagnostics name the field") {
  auto message = [](const char* text) {
    try {
      parse_config(json::parse(text)).datum();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"group": {"type": "B2"}, "q": 5, "extra": 1})").find("'extra'") != std::string::npos);
  CHECK(message(R"({"group": {"type": "B2"}, "q": "5"})").find("q:") == 0);
  CHECK(message(R"({"group": {"type": "B2"}, "q": 12})").find("not a prime power") != std::string::npos);
  CHECK(message(R"({"group": {"type": "B2"}})").find("q is required") == 0);
  CHECK(message(R"({"q": 5})").find("group.type") == 0);
  CHECK(message(R"({"format_version": 2})").find("format_version") == 0);
  CHECK(message(R"({"characters": {"places": [{"tag": "inf"}]}})").find("characters.places[0]") == 0);
  CHECK(message(R"({"convention": "uniform"})").find("unknown convention") != std::string::npos);
  CHECK(message(R"({"group": {"type": "B2", "lattice": "xx"}, "q": 5})") != "");
}

TEST_CASE("explicit lattice basis") {
  // X_* = coweight lattice of A1 is spanned by the fundamental coweight.
  auto c = parse_config(json::parse(R"({"group": {"type": "A1", "lattice": {"basis": [[1]]}}, "q": 5})"));
  CHECK(pi1_order(c.datum()) == 2);
  c = parse_config(json::parse(R"({"group": {"type": "A1", "lattice": {"basis": [[2]]}}, "q": 5})"));
  CHECK(pi1_order(c.datum()) == 1);
  c = parse_config(json::parse(R"({"group": {"type": "A1", "lattice": {"basis": [[4]]}}, "q": 5})"));
  CHECK_THROWS_AS(c.datum(), ConfigError);
  c = parse_config(json::parse(R"({"group": {"type": "A2", "lattice": {"basis": [[1, 0]]}}, "q": 7})"));
  CHECK_THROWS_AS(c.datum(), ConfigError);
}

TEST_CASE("hash covers everything but the thread count") {
  Config a;
  a.type = "G2";
  a.lattice = "ad";
  a.q = 7;
  Config b = a;
  b.caps.threads = 8;
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  b.convention = Convention::Literal537;
  CHECK(a.hash() != b.hash());
  b = a;
  b.q = 13;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("manifest and counts files") {
  auto m = parse_manifest(json::parse(R"({"entries": [
    {"check": "strata", "group": "B2", "lattice": "ad", "q": 5},
    {"check": "field-extension", "group": "A1", "q": 5, "n": 3}]})"));
  REQUIRE(m.size() == 2);
  CHECK(m[0].lattice == "ad");
  CHECK(m[1].n == 3);
  CHECK(parse_manifest(manifest_json(m)).size() == 2);
  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"entries": [{"check": "nope", "group": "B2", "q": 5}]})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_manifest(json::parse(R"({"entries": [{"check": "strata", "group": "B2"}]})")), ConfigError);

  auto counts = parse_counts(json::parse(R"({"rows": [
    {"stratum": "B2", "count": 10},
    {"stratum": "5a", "orbit_rep": "e,s2", "count": "16/5"}]})"));
  CHECK(counts.at({"B2", ""}) == 10);
  CHECK(counts.at({"5a", "e,s2"}) == BigRational(16, 5));
  CHECK_THROWS_AS(parse_counts(json::parse(R"({"rows": [{"stratum": "B2", "count": "1/0"}]})")), ConfigError);
  CHECK_THROWS_AS(parse_counts(json::parse(R"({"rows": [{"stratum": "B2", "count": 1.5}]})")), ConfigError);
}
