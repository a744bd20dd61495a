#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "parayb/braces.hpp"
#include "parayb/shelves.hpp"
#include "parayb/solutions.hpp"

using namespace parayb;

namespace {

Elem idx(std::int64_t residue) { return oracle::Units::index(residue); }

SkewBrace group_brace(const oracle::PermGroup& g, bool opposite) {
  const auto n = g.size();
  std::vector<Elem> mul(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mul[a * n + b] = opposite ? g.op(b, a) : g.op(a, b);
  return SkewBrace::from_tables(n, g.mul, mul);
}

}  // namespace

TEST_CASE("cyclic braces carry the odd residues") {
  REQUIRE(cyclic_brace(1).carrier().labels() == std::vector<std::string>{"1"});
  REQUIRE(cyclic_brace(2).carrier().labels() == std::vector<std::string>{"1", "3"});
  REQUIRE(cyclic_brace(3).carrier().labels() == std::vector<std::string>{"1", "3", "5", "7"});
  for (int m = 1; m <= 5; ++m) {
    auto br = cyclic_brace(m);
    REQUIRE(check_skew_brace(br.size(), br.add_table(), br.mul_table()).ok);
    REQUIRE(br.add_abelian());
  }
  REQUIRE_THROWS_AS(cyclic_brace(0), InputError);
}

TEST_CASE("skew brace axioms are checked exhaustively") {
  std::vector<Elem> z4(16);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) z4[a * 4 + b] = (a + b) % 4;
  REQUIRE(check_skew_brace(4, z4, z4).ok);

  auto br = cyclic_brace(3);
  auto mul = br.mul_table();
  std::swap(mul[1 * 4 + 1], mul[1 * 4 + 2]);
  REQUIRE_FALSE(check_skew_brace(4, br.add_table(), mul).ok);
  REQUIRE_THROWS_AS(SkewBrace::from_tables(4, br.add_table(), mul), NotASkewBrace);

  REQUIRE(group_brace(oracle::s3(), false).size() == 6);
  REQUIRE_FALSE(group_brace(oracle::s3(), false).add_abelian());
  REQUIRE_NOTHROW(group_brace(oracle::s3(), true));
}

TEST_CASE("parameter admissibility") {
  auto br = cyclic_brace(3);
  auto whole = ParamSubset::whole(4);
  auto adm = check_admissible_Y(br, whole, idx(3));
  REQUIRE(adm.rack_ok());
  REQUIRE(adm.twist_ok());
  auto s3 = group_brace(oracle::s3(), false);
  REQUIRE(check_admissible_Y(s3, ParamSubset{{0}}, 0).twist_ok());
  // Element 1 is a transposition, not central in S3.
  auto bad = check_admissible_Y(s3, ParamSubset{{0, 1}}, 0);
  REQUIRE_FALSE(bad.central_in_add);
  REQUIRE_FALSE(bad.rack_ok());
  REQUIRE_THROWS_AS(brace_shelf(s3, ParamSubset{{0, 1}}, 0), NotAdmissible);
  REQUIRE_FALSE(check_admissible_Y(br, ParamSubset{{0, 1}}, idx(5)).xi_in_params);
  REQUIRE_THROWS_AS(brace_sigma_tau(br, ParamSubset{{0, 1}}, idx(5)), NotAdmissible);
}

TEST_CASE("worked values in U(Z/8)") {
  auto br = cyclic_brace(3);
  auto y = ParamSubset::whole(4);
  auto shelf = brace_shelf(br, y, idx(3));
  auto at = [&](const ParamFamily& f, int zi, int zj, int a, int b) {
    return 2 * static_cast<int>(f.at(*y.position(idx(zi)), *y.position(idx(zj)), idx(a), idx(b))) + 1;
  };
  REQUIRE(at(shelf, 1, 3, 1, 3) == 3);
  REQUIRE(at(shelf, 1, 5, 1, 3) == 7);
  auto sol = brace_sigma_tau(br, y, idx(1));
  REQUIRE(at(sol.sigma, 1, 3, 3, 5) == 5);
  REQUIRE(oracle::Units{3}.sigma(1, 1, 3, 3, 5) == 5);
}

TEST_CASE("brace data agrees with modular arithmetic for every m up to four and every xi") {
  for (int m = 1; m <= 4; ++m) {
    auto br = cyclic_brace(m);
    const oracle::Units u{m};
    const auto n = br.size();
    auto y = ParamSubset::whole(n);
    for (Elem xi = 0; xi < n; ++xi) {
      auto shelf = brace_shelf(br, y, xi);
      auto shelf_inv = brace_shelf_inverse(br, y, xi);
      auto bullet = brace_bullet(br, y, xi);
      auto sol = brace_sigma_tau(br, y, xi);
      auto sigma_inv = brace_sigma_inverse(br, y, xi);
      REQUIRE(check_p_rack(shelf).ok);
      const auto X = u.residue(xi);
      for (Elem i = 0; i < n; ++i)
        for (Elem j = 0; j < n; ++j)
          for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
              const auto zi = u.residue(i), zj = u.residue(j), A = u.residue(a), B = u.residue(b);
              REQUIRE(shelf.at(i, j, a, b) == idx(u.triangle(X, zi, zj, A, B)));
              REQUIRE(shelf.at(i, j, a, shelf_inv.at(i, j, a, b)) == b);
              REQUIRE(bullet.at(i, j, a, b) == idx(u.bullet(X, zi, zj, A, B)));
              REQUIRE(sol.sigma.at(i, j, a, b) == idx(u.sigma(X, zi, zj, A, B)));
              REQUIRE(sol.sigma.at(i, j, a, sigma_inv.at(i, j, a, b)) == b);
              REQUIRE(sol.tau.at(i, j, b, a) == idx(u.tau(X, zi, zj, B, A)));
              REQUIRE(br.times(sol.sigma.at(i, j, a, b), sol.tau.at(i, j, b, a)) == br.times(a, b));
            }
    }
  }
}

TEST_CASE("closed-form inverses on nonabelian skew braces") {
  for (bool opposite : {false, true}) {
    auto br = group_brace(oracle::s3(), opposite);
    ParamSubset y{{0}};
    for (Elem xi = 0; xi < br.size(); ++xi) {
      auto shelf = brace_shelf(br, y, xi);
      auto inv = brace_shelf_inverse(br, y, xi);
      REQUIRE(check_p_rack(shelf).ok);
      for (Elem a = 0; a < br.size(); ++a)
        REQUIRE(compose(shelf.map(0, 0, a), inv.map(0, 0, a)) == EndoMap::identity(br.size()));
    }
    auto sigma_inv = brace_sigma_inverse(br, y, 0);
    auto sol = brace_sigma_tau(br, y, 0);
    for (Elem a = 0; a < br.size(); ++a)
      REQUIRE(compose(sol.sigma.map(0, 0, a), sigma_inv.map(0, 0, a)) == EndoMap::identity(br.size()));
  }
}

TEST_CASE("an abelian brace with xi = 1 gives the trivial shelf") {
  for (int m = 1; m <= 4; ++m) {
    auto br = cyclic_brace(m);
    auto shelf = brace_shelf(br, ParamSubset::whole(br.size()), br.one());
    for (std::size_t i = 0; i < shelf.m(); ++i)
      for (std::size_t j = 0; j < shelf.m(); ++j)
        for (Elem a = 0; a < br.size(); ++a) REQUIRE(shelf.map(i, j, a) == EndoMap::identity(br.size()));
  }
}

TEST_CASE("bullet relations") {
  for (int m = 1; m <= 4; ++m) {
    auto br = cyclic_brace(m);
    const oracle::Units u{m};
    const auto n = br.size();
    auto y = ParamSubset::whole(n);
    for (Elem xi = 0; xi < n; ++xi) {
      auto shelf = brace_shelf(br, y, xi);
      auto bullet = brace_bullet(br, y, xi);
      // a •_{ji} b = b •_{ij} (b ▷_{ij} a), for every ξ.
      for (Elem i = 0; i < n; ++i)
        for (Elem j = 0; j < n; ++j)
          for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
              REQUIRE(bullet.at(j, i, a, b) == bullet.at(i, j, b, shelf.at(i, j, b, a)));
      // b ▷_{ik} (a ▷_{jk} c) against (a •_{ji} b) ▷_{1,k} (ξ∘c): the two sides
      // differ by (1 - ξ)∘z_k⁻¹ in Z/2^m, so they agree exactly when ξ = 1.
      const auto X = u.residue(xi);
      for (Elem i = 0; i < n; ++i)
        for (Elem j = 0; j < n; ++j)
          for (Elem k = 0; k < n; ++k)
            for (Elem a = 0; a < n; ++a)
              for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c) {
                  Elem lhs = shelf.at(i, k, b, shelf.at(j, k, a, c));
                  Elem rhs = brace_triangle(br, xi, br.one(), k, bullet.at(j, i, a, b), br.times(xi, c));
                  auto gap = u.norm(u.residue(lhs) - u.residue(rhs));
                  REQUIRE(gap == u.norm((1 - X) * u.inv(u.residue(k))));
                  if (xi == br.one()) REQUIRE(lhs == rhs);
                }
    }
  }
}

TEST_CASE("singleton brace") {
  auto br = cyclic_brace(1);
  auto sol = brace_sigma_tau(br, ParamSubset::whole(1), 0);
  REQUIRE(sol.sigma.at(0, 0, 0, 0) == 0);
  REQUIRE(sol.tau.at(0, 0, 0, 0) == 0);
}
