#pragma once

#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "exec.hpp"
#include "verdict.hpp"

namespace parayb {

// A parametric shelf is a family with at(i, j, a, b) = a ▷_{ij} b.

// a ▷_{ik} (b ▷_{jk} c) = (a ▷_{ij} b) ▷_{jk} (a ▷_{ik} c), scanned over
// (a, b, c, z_i, z_j, z_k) in lexicographic order.
inline Verdict check_p_shelf(const ParamFamily& s, const Exec& ex = {}) {
  const auto n = static_cast<std::uint32_t>(s.n()), m = static_cast<std::uint32_t>(s.m());
  const std::vector<std::uint32_t> radix{n, n, n, m, m, m};
  auto eval = [&](const std::vector<std::uint32_t>& d) {
    Elem a = d[0], b = d[1], c = d[2];
    std::size_t i = d[3], j = d[4], k = d[5];
    Elem lhs = s.at(i, k, a, s.at(j, k, b, c));
    Elem rhs = s.at(j, k, s.at(i, j, a, b), s.at(i, k, a, c));
    return std::pair{lhs, rhs};
  };
  auto bad = first_failure(space_size(radix), ex, [&](std::uint64_t idx) {
    auto [l, r] = eval(digits(idx, radix));
    return l != r;
  });
  if (!bad) return Verdict::pass("p-shelf");
  auto d = digits(*bad, radix);
  auto [l, r] = eval(d);
  const auto& y = s.params();
  return Verdict::fail("p-shelf", {"self-distributivity",
                                   {{"a", d[0]}, {"b", d[1]}, {"c", d[2]},
                                    {"z_i", y[d[3]]}, {"z_j", y[d[4]]}, {"z_k", y[d[5]]}},
                                   "lhs=" + std::to_string(l) + " rhs=" + std::to_string(r)});
}

// First (z_i, z_j, a) whose map is not a bijection, if any.
inline Verdict check_bijective_family(const ParamFamily& f, const std::string& name) {
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < f.m(); ++j)
      for (Elem a = 0; a < f.n(); ++a)
        if (!f.map(i, j, a).is_bijection())
          return Verdict::fail(name, {"bijective",
                                      {{"z_i", f.params()[i]}, {"z_j", f.params()[j]}, {"a", a}},
                                      "map is not a bijection"});
  return Verdict::pass(name);
}

inline Verdict check_p_rack(const ParamFamily& s, const Exec& ex = {}) {
  auto v = check_p_shelf(s, ex);
  if (!v.ok) return {"p-rack", false, v.counterexample};
  return check_bijective_family(s, "p-rack");
}

// σ = id, τ^{ij}_b(a) = b ▷_{ij} a.
inline ParamYBMap shelf_solution(const ParamFamily& s) {
  if (auto v = check_p_shelf(s); !v.ok) throw NotAShelf("family is not a p-shelf");
  auto sigma = ParamFamily::tabulate(s.carrier(), s.params(),
                                     [](std::size_t, std::size_t, Elem, Elem b) { return b; });
  return {std::move(sigma), s};
}

inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("PARAYB_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("PARAYB_BUDGET is not a number: ") + env);
    }
  }
  return 36;
}

struct EnumerateOptions {
  std::size_t n = 2;
  std::size_t m = 1;
  bool rack_only = false;
  bool iso = false;
  std::uint64_t budget = default_budget();
};

namespace detail {

// Relabelings of X that map Y = {0, .., m-1} onto itself.
inline std::vector<std::vector<Elem>> y_preserving_perms(std::size_t n, std::size_t m) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool keeps = true;
    for (std::size_t i = 0; i < m; ++i) keeps = keeps && p[i] < m;
    if (keeps) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// True when no relabeling produces a lexicographically smaller table.
inline bool is_canonical(const std::vector<Elem>& t, std::size_t n, std::size_t m,
                         const std::vector<std::vector<Elem>>& perms) {
  auto at = [&](std::size_t i, std::size_t j, Elem a, Elem b) { return t[((i * m + j) * n + a) * n + b]; };
  std::vector<Elem> img(t.size());
  for (const auto& p : perms) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b)
            img[((p[i] * m + p[j]) * n + p[a]) * n + p[b]] = p[at(i, j, a, b)];
    if (img < t) return false;
  }
  return true;
}

}  // namespace detail

// Depth-first fill of the table with partial self-distributivity checks.
// Y is taken to be the first m carrier elements. With iso set, one table per
// class under relabelings fixing Y setwise is reported (the lexicographically
// least one).
inline std::uint64_t enumerate_p_shelves(const EnumerateOptions& opt,
                                         const std::function<void(const ParamFamily&)>& sink) {
  const std::size_t n = opt.n, m = opt.m;
  if (n == 0 || m == 0 || m > n) throw InputError("need 1 <= m <= n");
  const std::uint64_t cells = n * n * m * m;
  if (cells > opt.budget)
    throw BudgetExceeded("table has " + std::to_string(cells) + " cells, budget is " +
                         std::to_string(opt.budget));

  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> t(cells, unset);
  auto at = [&](std::size_t i, std::size_t j, Elem a, Elem b) { return t[((i * m + j) * n + a) * n + b]; };
  auto perms = opt.iso ? detail::y_preserving_perms(n, m) : std::vector<std::vector<Elem>>{};

  auto consistent = [&] {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
              Elem r1 = at(i, j, a, b);
              if (r1 == unset) continue;
              for (Elem c = 0; c < n; ++c) {
                Elem l1 = at(j, k, b, c), r2 = at(i, k, a, c);
                if (l1 == unset || r2 == unset) continue;
                Elem l2 = at(i, k, a, l1), r3 = at(j, k, r1, r2);
                if (l2 != unset && r3 != unset && l2 != r3) return false;
              }
            }
    return true;
  };

  std::vector<std::uint64_t> used(m * m * n, 0);  // rack rows: values taken so far
  std::uint64_t count = 0;
  Carrier carrier(n);
  ParamSubset y;
  for (std::size_t i = 0; i < m; ++i) y.elems.push_back(static_cast<Elem>(i));

  std::function<void(std::uint64_t)> fill = [&](std::uint64_t cell) {
    if (cell == cells) {
      if (opt.iso && !detail::is_canonical(t, n, m, perms)) return;
      ParamFamily fam(carrier, y);
      fam.raw() = t;
      ++count;
      sink(fam);
      return;
    }
    const std::uint64_t row = cell / n;
    for (Elem v = 0; v < n; ++v) {
      if (opt.rack_only && (used[row] >> v & 1u)) continue;
      t[cell] = v;
      used[row] |= std::uint64_t{1} << v;
      if (consistent()) fill(cell + 1);
      used[row] &= ~(std::uint64_t{1} << v);
    }
    t[cell] = unset;
  };
  fill(0);
  return count;
}

inline std::vector<ParamFamily> enumerate_p_shelves(const EnumerateOptions& opt) {
  std::vector<ParamFamily> out;
  enumerate_p_shelves(opt, [&](const ParamFamily& f) { out.push_back(f); });
  return out;
}

}  // namespace parayb
