// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oracle.hpp"
#include "parayb/parayb.hpp"

using namespace parayb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok;
  std::string detail;
};

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

std::string fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Elem idx(std::int64_t residue) { return oracle::Units::index(residue); }

ParamFamily identity_family(std::size_t n, const ParamSubset& y) {
  return ParamFamily::tabulate(Carrier(n), y, [](std::size_t, std::size_t, Elem, Elem b) { return b; });
}

bool same(const ParamYBMap& a, const ParamYBMap& b) { return a.sigma == b.sigma && a.tau == b.tau; }

// Every map on a two-point set with one parameter: σ_0, σ_1, τ_0, τ_1 each one of four maps.
std::vector<ParamYBMap> two_point_maps() {
  std::vector<ParamYBMap> out;
  ParamSubset y{{0}};
  for (unsigned code = 0; code < 256; ++code) {
    ParamFamily s(Carrier(2), y), t(Carrier(2), y);
    for (unsigned k = 0; k < 4; ++k) {
      s.raw()[k] = (code >> k) & 1u;
      t.raw()[k] = (code >> (k + 4)) & 1u;
    }
    out.push_back({s, t});
  }
  return out;
}

Outcome c1_values() {
  auto t0 = Clock::now();
  auto br = cyclic_brace(3);
  auto y = ParamSubset::whole(4);
  auto shelf = brace_shelf(br, y, idx(3));
  auto at = [&](int zi, int zj, int a, int b) {
    return 2 * static_cast<int>(shelf.at(*y.position(idx(zi)), *y.position(idx(zj)), idx(a), idx(b))) + 1;
  };
  int v13 = at(1, 3, 1, 3), v15 = at(1, 5, 1, 3);
  double t = ms_since(t0);
  return {v13 == 3 && v15 == 7 && t < 1.0,
          "1>_13 3 = " + std::to_string(v13) + ", 1>_15 3 = " + std::to_string(v15) + ", " + fixed(t) + " ms"};
}

Outcome c2_racks() {
  auto t0 = Clock::now();
  double small_ms = 0;
  std::size_t checked = 0;
  for (int m = 1; m <= 4; ++m) {
    auto br = cyclic_brace(m);
    auto y = ParamSubset::whole(br.size());
    for (Elem xi = 0; xi < br.size(); ++xi) {
      auto shelf = brace_shelf(br, y, xi);
      if (!check_p_rack(shelf).ok) return {false, "not a p-rack at m=" + std::to_string(m)};
      auto sol = shelf_solution(shelf);
      if (!check_ybe(sol, YbeMethod::direct).ok || !check_ybe(sol, YbeMethod::components).ok)
        return {false, "braid relation fails at m=" + std::to_string(m)};
      ++checked;
    }
    if (m == 3) small_ms = ms_since(t0);
  }
  return {small_ms < 60000, std::to_string(checked) + " brace shelves, m<=3 in " + fixed(small_ms / 1000) +
                                " s, total " + fixed(ms_since(t0) / 1000) + " s"};
}

Outcome c3_degenerations() {
  for (int m = 1; m <= 4; ++m) {
    auto br = cyclic_brace(m);
    auto y = ParamSubset::whole(br.size());
    const Elem one = br.one();
    auto shelf = brace_shelf(br, y, one);
    if (!(shelf == identity_family(br.size(), y))) return {false, "shelf not trivial at m=" + std::to_string(m)};
    auto s = shelf_solution(shelf);
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!(linearize(s, i, j) == IntMatrix::identity(br.size() * br.size())))
          return {false, "S is not the identity at m=" + std::to_string(m)};
    auto r = build_solution(brace_sigma_tau(br, y, one).sigma, shelf);
    if (!classify(r).reversible) return {false, "twisted solution not reversible at m=" + std::to_string(m)};
    const auto n = br.size();
    auto p = flip(n);
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!(linearize(r, i, j) * (p * linearize(r, j, i) * p) == IntMatrix::identity(n * n)))
          return {false, "R12 R21 != id at m=" + std::to_string(m)};
  }
  return {true, "m = 1..4"};
}

Outcome c4_round_trip() {
  std::size_t trips = 0;
  auto trip = [&](const ParamYBMap& r) {
    auto e = extract_shelf(r);
    ++trips;
    return same(build_solution(e.sigma, e.shelf), r);
  };
  for (int m = 1; m <= 3; ++m) {
    auto br = cyclic_brace(m);
    auto y = ParamSubset::whole(br.size());
    for (Elem xi = 0; xi < br.size(); ++xi) {
      if (!trip(brace_sigma_tau(br, y, xi))) return {false, "brace solution at m=" + std::to_string(m)};
      if (!trip(shelf_solution(brace_shelf(br, y, xi)))) return {false, "brace rack solution at m=" + std::to_string(m)};
    }
  }
  for (const auto& r : two_point_maps())
    if (check_ybe(r).ok && classify(r).left_nondegenerate && !trip(r)) return {false, "two-point solution"};
  return {true, std::to_string(trips) + " solutions"};
}

Outcome c5_oracle() {
  std::size_t total = 0, solutions = 0;
  auto agree = [&](const ParamYBMap& r) {
    bool d = check_ybe(r, YbeMethod::direct).ok;
    ++total;
    solutions += d;
    return d == check_ybe(r, YbeMethod::components).ok;
  };
  for (const auto& r : two_point_maps())
    if (!agree(r)) return {false, "disagreement at m=1"};
  // m = 2: every family of binary operations, placed in τ over σ = id and in σ over τ = id.
  auto y = ParamSubset::whole(2);
  auto id = identity_family(2, y);
  for (unsigned code = 0; code < 65536; ++code) {
    ParamFamily f(Carrier(2), y);
    for (unsigned k = 0; k < 16; ++k) f.raw()[k] = (code >> k) & 1u;
    if (!agree({id, f}) || !agree({f, id})) return {false, "disagreement at m=2"};
  }
  return {true, std::to_string(total) + " families, " + std::to_string(solutions) + " solutions"};
}

Outcome c6_tensor() {
  std::size_t count = 0;
  auto check = [&](const ParamYBMap& r) {
    if (!check_ybe(r).ok) return true;
    ++count;
    if (!check_tensor_ybe(r).ok) return false;
    if (!classify(r).invertible) return true;
    const auto id = IntMatrix::identity(r.n() * r.n());
    for (std::size_t i = 0; i < r.m(); ++i)
      for (std::size_t j = 0; j < r.m(); ++j) {
        auto l = linearize(r, i, j);
        if (!(l * l.transpose() == id && l.transpose() * l == id)) return false;
      }
    return true;
  };
  for (const auto& r : two_point_maps())
    if (!check(r)) return {false, "two-point solution"};
  for (int m = 1; m <= 3; ++m) {
    auto br = cyclic_brace(m);
    auto y = ParamSubset::whole(br.size());
    for (Elem xi = 0; xi < br.size(); ++xi)
      if (!check(brace_sigma_tau(br, y, xi)) || !check(shelf_solution(brace_shelf(br, y, xi))))
        return {false, "brace solution at m=" + std::to_string(m)};
  }
  // U(Z/16): eight points, eight parameters.
  auto br = cyclic_brace(4);
  auto sol = brace_sigma_tau(br, ParamSubset::whole(8), idx(3));
  auto t0 = Clock::now();
  bool ok = check_tensor_ybe(sol).ok;
  double t = ms_since(t0);
  return {ok && t < 5000, std::to_string(count) + " solutions, n=8 triple-leg check " + fixed(t, 1) + " ms"};
}

Outcome c7_algebra() {
  auto br = cyclic_brace(3);
  auto y = ParamSubset::whole(4);
  std::size_t perturbations = 0;
  for (std::int64_t xi : {1, 3}) {
    auto shelf = brace_shelf(br, y, idx(xi));
    auto bullet = brace_bullet(br, y, idx(xi));
    auto sigma = brace_sigma_tau(br, y, idx(xi)).sigma;
    auto holds = [&](const ParamFamily& s, const ParamFamily& g) {
      auto b = make_rep_unchecked(s, g);
      return check_algebra_relations(b, AlgebraTier::p_rack).ok && check_algebra_relations(b, AlgebraTier::decorated).ok &&
             check_algebra_relations(b, AlgebraTier::p_set, {false, bullet}).ok;
    };
    if (!holds(shelf, sigma)) return {false, "relations fail at xi=" + std::to_string(xi)};
    for (std::size_t k = 0; k < shelf.raw().size(); ++k)
      for (Elem d = 1; d < 4; ++d) {
        auto s = shelf;
        s.raw()[k] = (s.raw()[k] + d) % 4;
        auto g = sigma;
        g.raw()[k] = (g.raw()[k] + d) % 4;
        perturbations += 2;
        if (holds(s, sigma)) return {false, "shelf perturbation at entry " + std::to_string(k) + " missed"};
        if (holds(shelf, g)) return {false, "sigma perturbation at entry " + std::to_string(k) + " missed"};
      }
  }
  return {true, "xi in {1,3}, " + std::to_string(perturbations) + " perturbations detected"};
}

Outcome c8_twist() {
  for (int m : {3, 4}) {
  auto br = cyclic_brace(m);
  const auto n = br.size();
  auto y = ParamSubset::whole(n);
  for (Elem xi = 0; xi < n; ++xi) {
    auto shelf = brace_shelf(br, y, xi);
    auto sigma = brace_sigma_tau(br, y, xi).sigma;
    auto b = fundamental_rep(shelf, sigma);
    // The three-leg identities are the slow part at n = 8; two values of xi cover both shelf types.
    if (m == 3 || xi == idx(1) || xi == idx(3)) {
      auto rep = twist_in_rep(b);
      if (!rep.factorization.ok) return {false, "factorization"};
      if (xi == br.one() && !(rep.special && rep.special->ok)) return {false, "special unitarity"};
    }
    auto built = build_solution(sigma, shelf);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(twisted_r(b, i, j) == linearize(built, i, j))) return {false, "twisted R differs from the built solution"};
  }
  }
  return {true, "R^F = built solution for every xi at n=4,8; three-leg identities at n=8 for xi in {1,3}"};
}

Outcome c9_coalgebra() {
  auto worst = 0.0;
  auto timed = [&](auto f) {
    auto t0 = Clock::now();
    bool ok = f();
    worst = std::max(worst, ms_since(t0));
    return ok;
  };
  auto br = cyclic_brace(3);
  auto y = ParamSubset::whole(4);
  auto cyc = fundamental_rep(brace_shelf(br, y, idx(3)), brace_sigma_tau(br, y, idx(3)).sigma);
  if (!timed([&] { return check_coassociativity(cyc, 4, Generator::q).asserted.ok; }))
    return {false, "q-coproduct trees differ"};
  // Conjugation data on D4: the hypotheses of the commutator lemma hold.
  auto d = oracle::conjugation_data(oracle::d4(), 2, {1, 2});
  auto b = fundamental_rep(d.shelf, d.sigma);
  if (!timed([&] { return check_coassociativity(b, 4, Generator::q).asserted.ok; })) return {false, "D4 q trees differ"};
  for (std::size_t k = 1; k <= 3; ++k) {
    bool ok = timed([&] {
      auto r = transfer_and_t(b, d.bullet, k);
      return r.hypothesis && r.commutators.ok && (k != 2 || (r.head_factorization.ok && r.tail_factorization.ok));
    });
    if (!ok) return {false, "transfer check at arity " + std::to_string(k)};
  }
  return {worst < 30000, "slowest step " + fixed(worst / 1000) + " s"};
}

Outcome c10_enumeration() {
  auto racks = enumerate_p_shelves({2, 1, true, false}).size();
  auto brute = oracle::racks_of_order_two().size();
  return {racks == brute, std::to_string(racks) + " enumerated, " + std::to_string(brute) + " by brute force"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"example-values", c1_values},     {"brace-racks", c2_racks},          {"degenerations", c3_degenerations},
      {"round-trip", c4_round_trip},     {"ybe-oracle", c5_oracle},          {"tensor-layer", c6_tensor},
      {"algebra-relations", c7_algebra}, {"twist-layer", c8_twist},          {"coalgebra", c9_coalgebra},
      {"enumeration", c10_enumeration}};
  int failures = 0;
  int k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    auto t0 = Clock::now();
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.ok;
    std::printf("%s %2d %-18s %9.1f ms  %s\n", o.ok ? "PASS" : "FAIL", k, name, ms_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
