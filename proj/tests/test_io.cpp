#include <catch_amalgamated.hpp>

#include "parayb/braces.hpp"
#include "parayb/io.hpp"
#include "parayb/solutions.hpp"

using namespace parayb;

TEST_CASE("families and solutions survive a JSON round trip") {
  auto br = cyclic_brace(3);
  auto y = ParamSubset::whole(br.size());
  auto fam = brace_shelf(br, y, 1);
  auto back = io::family_from_json(io::parse(io::family_to_json(fam).dump(), "mem"));
  REQUIRE(back.raw() == fam.raw());
  REQUIRE(back.params().elems == fam.params().elems);
  REQUIRE(back.carrier().labels() == fam.carrier().labels());

  auto st = brace_sigma_tau(br, y, 1);
  auto r = io::solution_from_json(io::solution_to_json(st));
  REQUIRE(r.sigma.raw() == st.sigma.raw());
  REQUIRE(r.tau.raw() == st.tau.raw());

  auto b2 = io::brace_from_json(io::brace_to_json(br));
  for (Elem a = 0; a < 4; ++a)
    for (Elem c = 0; c < 4; ++c) {
      REQUIRE(b2.plus(a, c) == br.plus(a, c));
      REQUIRE(b2.times(a, c) == br.times(a, c));
    }
}

TEST_CASE("malformed input is rejected with a location") {
  auto msg = [](const std::string& text) {
    try {
      io::family_from_json(io::parse(text, "in"));
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  REQUIRE(msg("{").find("malformed JSON") != std::string::npos);
  REQUIRE(msg(R"({"Y":[0],"family":[]})").find("\"n\"") != std::string::npos);
  REQUIRE(msg(R"({"n":2,"Y":[5],"family":[]})").find("family/Y/0") != std::string::npos);
  REQUIRE(msg(R"({"n":2,"Y":[0],"family":[[[[0,1],[1,7]]]]})").find("family/family/0/0/1/1") != std::string::npos);
  REQUIRE(msg(R"({"n":2,"Y":[0],"family":[[[[0,1]]]]})").find("length 2") != std::string::npos);
  REQUIRE(msg(R"({"n":2,"Y":[0],"family":[[[[0,1],[1,0]]]]})").empty());
  REQUIRE_THROWS_AS(io::load("/nonexistent/file.json"), InputError);
}
