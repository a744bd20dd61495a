#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <set>

#include "oracle.hpp"
#include "parayb/shelves.hpp"
#include "parayb/solutions.hpp"

using namespace parayb;

namespace {

ParamFamily constant_family(std::size_t n, std::size_t m, Elem v) {
  std::vector<Elem> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = static_cast<Elem>(i);
  return ParamFamily::tabulate(Carrier(n), ParamSubset{y}, [&](std::size_t, std::size_t, Elem, Elem) { return v; });
}

}  // namespace

TEST_CASE("trivial and constant shelves") {
  auto trivial = ParamFamily::tabulate(Carrier(3), ParamSubset::whole(3), [](std::size_t, std::size_t, Elem, Elem b) { return b; });
  REQUIRE(check_p_shelf(trivial).ok);
  REQUIRE(check_p_rack(trivial).ok);
  auto constant = constant_family(3, 2, 0);
  REQUIRE(check_p_shelf(constant).ok);
  auto rack = check_p_rack(constant);
  REQUIRE_FALSE(rack.ok);
  REQUIRE(rack.counterexample->relation == "bijective");
}

TEST_CASE("the reported counterexample is the lexicographically first one") {
  // a ▷_{ij} b = (a + b + i·j) mod 3 breaks self-distributivity.
  auto fam = ParamFamily::tabulate(Carrier(3), ParamSubset{{0, 1}}, [](std::size_t i, std::size_t j, Elem a, Elem b) {
    return static_cast<Elem>((a + b + i * j) % 3);
  });
  auto v = check_p_shelf(fam);
  REQUIRE_FALSE(v.ok);
  std::vector<std::uint64_t> first;
  for (Elem a = 0; a < 3 && first.empty(); ++a)
    for (Elem b = 0; b < 3 && first.empty(); ++b)
      for (Elem c = 0; c < 3 && first.empty(); ++c)
        for (std::size_t i = 0; i < 2 && first.empty(); ++i)
          for (std::size_t j = 0; j < 2 && first.empty(); ++j)
            for (std::size_t k = 0; k < 2 && first.empty(); ++k)
              if ((a + (b + c + j * k) + i * k) % 3 != ((a + b + i * j) + (a + c + i * k) + j * k) % 3)
                first = {a, b, c, i, j, k};
  const auto& cx = *v.counterexample;
  REQUIRE(cx.get("a") == first[0]);
  REQUIRE(cx.get("b") == first[1]);
  REQUIRE(cx.get("c") == first[2]);
  REQUIRE(cx.get("z_i") == first[3]);
  REQUIRE(cx.get("z_j") == first[4]);
  REQUIRE(cx.get("z_k") == first[5]);
  REQUIRE(check_p_shelf(fam, Exec{4}).counterexample->at == cx.at);
}

TEST_CASE("enumeration of order-two racks matches exhaustion over all 16 operations") {
  auto brute = oracle::racks_of_order_two();
  auto found = enumerate_p_shelves({2, 1, true, false, 36});
  REQUIRE(found.size() == brute.size());
  std::set<std::vector<Elem>> a, b;
  for (const auto& f : found) a.insert(f.raw());
  for (const auto& t : brute) b.insert(std::vector<Elem>(t.begin(), t.end()));
  REQUIRE(a == b);
}

TEST_CASE("enumerated shelves satisfy the shelf identity and give braided maps") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= std::min<std::size_t>(n, 2); ++m) {
      std::size_t seen = 0;
      // Three points with two parameters admit about three million shelves; racks only there.
      enumerate_p_shelves({n, m, n == 3 && m == 2, false, 36}, [&](const ParamFamily& f) {
        ++seen;
        REQUIRE(check_p_shelf(f).ok);
        REQUIRE(check_ybe(shelf_solution(f), YbeMethod::direct).ok);
      });
      REQUIRE(seen > 0);
    }
}

TEST_CASE("isomorphism classes of order-three shelves with one parameter") {
  // Relabelings fixing Y = {0}: the identity and the swap of 1 and 2.
  auto all = enumerate_p_shelves({3, 1, false, false, 36});
  std::set<std::vector<Elem>> orbits;
  const std::vector<Elem> p{0, 2, 1};
  for (const auto& f : all) {
    std::vector<Elem> img(9);
    for (Elem a = 0; a < 3; ++a)
      for (Elem b = 0; b < 3; ++b) img[p[a] * 3 + p[b]] = p[f.raw()[a * 3 + b]];
    orbits.insert(std::min(f.raw(), img));
  }
  auto iso = enumerate_p_shelves({3, 1, false, true, 36});
  REQUIRE(iso.size() == orbits.size());
  for (const auto& f : iso) REQUIRE(orbits.count(f.raw()) == 1);
}

TEST_CASE("the enumeration budget is enforced") {
  REQUIRE_THROWS_AS(enumerate_p_shelves({4, 2, false, false, 36}), BudgetExceeded);
  ::setenv("PARAYB_BUDGET", "10", 1);
  REQUIRE(default_budget() == 10u);
  REQUIRE_THROWS_AS(enumerate_p_shelves({2, 2, false, false, default_budget()}), BudgetExceeded);
  ::unsetenv("PARAYB_BUDGET");
  REQUIRE(default_budget() == 36u);
}

TEST_CASE("the shelf solution has identity sigma and tau given by the shelf") {
  auto fam = enumerate_p_shelves({2, 1, true, false, 36}).back();
  auto r = shelf_solution(fam);
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b) {
      auto [u, v] = r.apply(0, 0, b, a);
      REQUIRE(u == b);
      REQUIRE(v == fam.at(0, 0, b, a));
    }
}
