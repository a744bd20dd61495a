#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "parayb/carrier.hpp"
#include "parayb/matrix.hpp"

using namespace parayb;

TEST_CASE("endomaps invert, compose and detect non-bijections") {
  EndoMap f({2, 0, 1});
  REQUIRE(f.is_bijection());
  REQUIRE(compose(f, f.invert()) == EndoMap::identity(3));
  REQUIRE(compose(f.invert(), f) == EndoMap::identity(3));
  EndoMap g({0, 0, 1});
  REQUIRE_FALSE(g.is_bijection());
  REQUIRE_THROWS_AS(g.invert(), NotInvertible);
  REQUIRE(compose(f, g)(2) == f(g(2)));
}

TEST_CASE("inverting twice is the identity for every permutation up to five points") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      EndoMap f(p);
      REQUIRE(f.invert().invert() == f);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("parameter subsets and families") {
  ParamSubset y{{2, 0}};
  REQUIRE(y.position(0) == 1u);
  REQUIRE_FALSE(y.position(1));
  REQUIRE_THROWS_AS((ParamSubset{{0, 0}}.validate(3)), InputError);
  REQUIRE_THROWS_AS((ParamSubset{{3}}.validate(3)), InputError);
  auto fam = ParamFamily::tabulate(Carrier(3), y, [](std::size_t i, std::size_t j, Elem a, Elem x) {
    return static_cast<Elem>((i + 2 * j + a + x) % 3);
  });
  REQUIRE(fam.map(1, 0, 2).table() == std::vector<Elem>{0, 1, 2});
  REQUIRE(fam.at(0, 1, 1, 1) == 1);
  REQUIRE_THROWS_AS(Carrier(2, {"x"}), DimensionMismatch);
  Carrier c(3, {"a", "b", "c"});
  REQUIRE(c.find("b") == 1u);
  REQUIRE(Carrier(4).find("3") == 3u);
  REQUIRE_FALSE(Carrier(4).find("4"));
}

TEST_CASE("exact integers promote past 64 bits") {
  Int big = Int(std::numeric_limits<std::int64_t>::max()) + Int(1);
  REQUIRE_FALSE(big.is_small());
  REQUIRE(big.to_big() == BigInt(std::numeric_limits<std::int64_t>::max()) + 1);
  REQUIRE((big - Int(1)).is_small());
  Int sq = Int(std::int64_t{1} << 40) * Int(std::int64_t{1} << 40);
  REQUIRE(sq.str() == "1208925819614629174706176");
}

TEST_CASE("sparse products, sums and Kronecker products agree with dense arithmetic") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-3, 3), coin(0, 3);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 2 + static_cast<std::size_t>(round % 5);
    auto random = [&] {
      std::vector<IntMatrix::Entry> e;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (coin(rng) == 0) e.push_back({r, c, val(rng)});
      return IntMatrix::from_entries(n, n, e);
    };
    auto a = random(), b = random();
    auto da = oracle::Dense::from(a), db = oracle::Dense::from(b);
    REQUIRE(oracle::Dense::from(a * b) == da * db);
    REQUIRE(oracle::Dense::from(kron(a, b)) == oracle::kron(da, db));
    auto sum = oracle::Dense::from(a + b);
    for (std::size_t i = 0; i < n * n; ++i) REQUIRE(sum.v[i] == da.v[i] + db.v[i]);
    REQUIRE(a - a == IntMatrix(n, n));
    REQUIRE(a.transpose().transpose() == a);
  }
}

TEST_CASE("embedding on legs matches explicit Kronecker products") {
  const std::size_t n = 3;
  std::vector<IntMatrix::Entry> e;
  for (std::size_t r = 0; r < n * n; ++r) e.push_back({r, (r * 5 + 1) % (n * n), static_cast<std::int64_t>(r + 1)});
  auto op = IntMatrix::from_entries(n * n, n * n, e);
  auto id = IntMatrix::identity(n);
  REQUIRE(embed(op, n, 3, {0, 1}) == kron(op, id));
  REQUIRE(embed(op, n, 3, {1, 2}) == kron(id, op));
  auto p23 = embed(flip(n), n, 3, {1, 2});
  REQUIRE(embed(op, n, 3, {0, 2}) == p23 * kron(op, id) * p23);
  auto p = flip(n);
  REQUIRE(embed(op, n, 2, {1, 0}) == p * op * p);
}
