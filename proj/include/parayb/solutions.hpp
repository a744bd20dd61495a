#pragma once

#include <array>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "exec.hpp"
#include "shelves.hpp"
#include "verdict.hpp"

namespace parayb {

enum class YbeMethod { direct, components };

namespace detail {

struct Triple {
  Elem x1, x2, x3;
  bool operator==(const Triple&) const = default;
};

// R^{z}_{12}, R^{z}_{13}, R^{z}_{23} acting on (x1, x2, x3).
inline Triple r12(const ParamYBMap& r, std::size_t i, std::size_t j, Triple t) {
  auto [u, v] = r.apply(i, j, t.x1, t.x2);
  return {u, v, t.x3};
}
inline Triple r13(const ParamYBMap& r, std::size_t i, std::size_t j, Triple t) {
  auto [u, v] = r.apply(i, j, t.x1, t.x3);
  return {u, t.x2, v};
}
inline Triple r23(const ParamYBMap& r, std::size_t i, std::size_t j, Triple t) {
  auto [u, v] = r.apply(i, j, t.x2, t.x3);
  return {t.x1, u, v};
}

inline std::vector<EndoMap> inverse_tables(const ParamFamily& f) {
  std::vector<EndoMap> out;
  out.reserve(f.m() * f.m() * f.n());
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < f.m(); ++j)
      for (Elem a = 0; a < f.n(); ++a) out.push_back(f.map(i, j, a).invert());
  return out;
}

inline Elem inv_at(const std::vector<EndoMap>& inv, const ParamFamily& f, std::size_t i,
                   std::size_t j, Elem a, Elem x) {
  return inv[(i * f.m() + j) * f.n() + a](x);
}

}  // namespace detail

// R12^{z12} R13^{z13} R23^{z23} = R23^{z23} R13^{z13} R12^{z12} as maps on X^3,
// for every (z1, z2, z3) in Y^3. Instances are scanned in the order
// (z1, z2, z3, x1, x2, x3), so both methods report the same first failure.
inline Verdict check_ybe(const ParamYBMap& r, YbeMethod method = YbeMethod::direct, const Exec& ex = {}) {
  r.validate();
  const auto n = static_cast<std::uint32_t>(r.n()), m = static_cast<std::uint32_t>(r.m());
  const std::vector<std::uint32_t> radix{m, m, m, n, n, n};
  const auto& s = r.sigma;
  const auto& t = r.tau;

  // Returns 0 when the instance holds, otherwise the failing component (1..3).
  auto component_fail = [&](const std::vector<std::uint32_t>& d) -> int {
    const std::size_t z1 = d[0], z2 = d[1], z3 = d[2];
    const Elem c = d[3], b = d[4], a = d[5];
    if (method == YbeMethod::direct) {
      detail::Triple x{c, b, a};
      auto lhs = detail::r12(r, z1, z2, detail::r13(r, z1, z3, detail::r23(r, z2, z3, x)));
      auto rhs = detail::r23(r, z2, z3, detail::r13(r, z1, z3, detail::r12(r, z1, z2, x)));
      if (lhs.x1 != rhs.x1) return 1;
      if (lhs.x3 != rhs.x3) return 2;
      if (lhs.x2 != rhs.x2) return 3;
      return 0;
    }
    // σ-σ, τ-τ and mixed component equations.
    Elem s12bc = s.at(z1, z2, b, c);
    Elem t23ba = t.at(z2, z3, b, a);
    Elem s23ab = s.at(z2, z3, a, b);
    Elem t12cb = t.at(z1, z2, c, b);
    if (s.at(z1, z3, a, s12bc) != s.at(z1, z2, s23ab, s.at(z1, z3, t23ba, c))) return 1;
    if (t.at(z1, z3, c, t23ba) != t.at(z2, z3, t12cb, t.at(z1, z3, s12bc, a))) return 2;
    if (s.at(z2, z3, t.at(z1, z3, s12bc, a), t12cb) != t.at(z1, z2, s.at(z1, z3, t23ba, c), s23ab))
      return 3;
    return 0;
  };

  auto bad = first_failure(space_size(radix), ex,
                           [&](std::uint64_t idx) { return component_fail(digits(idx, radix)) != 0; });
  const char* name = method == YbeMethod::direct ? "ybe-direct" : "ybe-components";
  if (!bad) return Verdict::pass(name);
  auto d = digits(*bad, radix);
  static const std::array<const char*, 4> rel{"", "sigma-sigma", "tau-tau", "mixed"};
  const auto& y = r.params();
  return Verdict::fail(name, {rel[static_cast<std::size_t>(component_fail(d))],
                              {{"z_1", y[d[0]]}, {"z_2", y[d[1]]}, {"z_3", y[d[2]]},
                               {"x_1", d[3]}, {"x_2", d[4]}, {"x_3", d[5]}},
                              ""});
}

struct Classification {
  bool left_nondegenerate = false;
  bool right_nondegenerate = false;
  bool nondegenerate = false;
  bool invertible = false;
  bool reversible = false;
};

inline Classification classify(const ParamYBMap& r) {
  r.validate();
  Classification c;
  c.left_nondegenerate = check_bijective_family(r.sigma, "sigma").ok;
  c.right_nondegenerate = check_bijective_family(r.tau, "tau").ok;
  c.nondegenerate = c.left_nondegenerate && c.right_nondegenerate;
  const std::size_t n = r.n(), m = r.m();
  c.invertible = true;
  for (std::size_t i = 0; i < m && c.invertible; ++i)
    for (std::size_t j = 0; j < m && c.invertible; ++j) {
      std::vector<char> hit(n * n, 0);
      for (Elem b = 0; b < n; ++b)
        for (Elem a = 0; a < n; ++a) {
          auto [u, v] = r.apply(i, j, b, a);
          char& h = hit[u * n + v];
          if (h) c.invertible = false;
          h = 1;
        }
    }
  // R21^{z_ji} R12^{z_ij} = id.
  c.reversible = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem b = 0; b < n; ++b)
        for (Elem a = 0; a < n; ++a) {
          auto [u, v] = r.apply(i, j, b, a);
          auto [p, q] = r.apply(j, i, v, u);
          if (q != b || p != a) c.reversible = false;
        }
  return c;
}

// φ^{ij}(x, y) = (x, σ^{ji}_x(y)), held as the family σ.
struct TwistMap {
  ParamFamily sigma;
  std::pair<Elem, Elem> apply(std::size_t i, std::size_t j, Elem x, Elem y) const {
    return {x, sigma.at(j, i, x, y)};
  }
};

// φ^{ij} R^{ij} = S^{ij} (φ^{ji})^{op}, where the opposite map is φ^{ji}
// conjugated by the flip: (φ^{ji})^{op}(b, a) = (σ^{ij}_a(b), a).
inline Verdict check_d_twist(const ParamYBMap& r, const ParamYBMap& s, const TwistMap& phi) {
  r.validate();
  s.validate();
  if (!r.sigma.same_shape(s.sigma) || !r.sigma.same_shape(phi.sigma))
    throw DimensionMismatch("solutions and twist live on different carriers");
  const auto& y = r.params();
  for (std::size_t i = 0; i < r.m(); ++i)
    for (std::size_t j = 0; j < r.m(); ++j)
      for (Elem b = 0; b < r.n(); ++b)
        for (Elem a = 0; a < r.n(); ++a) {
          auto [u, v] = r.apply(i, j, b, a);
          auto lhs = phi.apply(i, j, u, v);
          auto [p, q] = phi.apply(j, i, a, b);  // φ^{ji}(a, b), then flip
          auto rhs = s.apply(i, j, q, p);
          if (lhs != rhs)
            return Verdict::fail("d-twist", {"twist", {{"z_i", y[i]}, {"z_j", y[j]}, {"b", b}, {"a", a}}, ""});
        }
  return Verdict::pass("d-twist");
}

// τ^{ij}_b(a) = (σ^{ji}_{σ^{ij}_a(b)})^{-1}(σ^{ij}_a(b) ▷_{ij} a).
inline ParamFamily tau_from_twist(const ParamFamily& sigma, const ParamFamily& shelf) {
  if (!sigma.same_shape(shelf)) throw DimensionMismatch("twist and shelf differ in shape");
  if (!check_bijective_family(sigma, "sigma").ok) throw SigmaNotBijective("some σ^{ij}_a is not a bijection");
  auto inv = detail::inverse_tables(sigma);
  return ParamFamily::tabulate(sigma.carrier(), sigma.params(),
                               [&](std::size_t i, std::size_t j, Elem b, Elem a) {
                                 Elem s = sigma.at(i, j, a, b);
                                 return detail::inv_at(inv, sigma, j, i, s, shelf.at(i, j, s, a));
                               });
}

// The two twist conditions, scanned over (z_i, z_j, z_k, a, b, c):
//   σ^{ik}_a σ^{ij}_b (c) = σ^{ij}_{σ^{jk}_a(b)} σ^{ik}_{τ^{jk}_b(a)} (c)
//   σ^{ik}_c(b) ▷_{ij} σ^{jk}_c(a) = σ^{jk}_c(b ▷_{ij} a)
inline Verdict check_admissible_twist(const ParamFamily& sigma, const ParamFamily& shelf, const Exec& ex = {}) {
  sigma.require_closed();
  shelf.require_closed();
  auto tau = tau_from_twist(sigma, shelf);
  const auto n = static_cast<std::uint32_t>(sigma.n()), m = static_cast<std::uint32_t>(sigma.m());
  const std::vector<std::uint32_t> radix{m, m, m, n, n, n};
  auto which = [&](const std::vector<std::uint32_t>& d) -> int {
    const std::size_t i = d[0], j = d[1], k = d[2];
    const Elem a = d[3], b = d[4], c = d[5];
    if (sigma.at(i, k, a, sigma.at(i, j, b, c)) !=
        sigma.at(i, j, sigma.at(j, k, a, b), sigma.at(i, k, tau.at(j, k, b, a), c)))
      return 1;
    if (shelf.at(i, j, sigma.at(i, k, c, b), sigma.at(j, k, c, a)) != sigma.at(j, k, c, shelf.at(i, j, b, a)))
      return 2;
    return 0;
  };
  auto bad = first_failure(space_size(radix), ex, [&](std::uint64_t idx) { return which(digits(idx, radix)) != 0; });
  if (!bad) return Verdict::pass("admissible-twist");
  auto d = digits(*bad, radix);
  const auto& y = sigma.params();
  return Verdict::fail("admissible-twist",
                       {which(d) == 1 ? "sigma-composition" : "sigma-shelf-morphism",
                        {{"z_i", y[d[0]]}, {"z_j", y[d[1]]}, {"z_k", y[d[2]]}, {"a", d[3]}, {"b", d[4]}, {"c", d[5]}},
                        ""});
}

inline std::string describe(const Counterexample& c) {
  std::string s = c.relation;
  for (const auto& [k, v] : c.at) s += " " + k + "=" + std::to_string(v);
  if (!c.detail.empty()) s += " (" + c.detail + ")";
  return s;
}

inline ParamYBMap build_solution(const ParamFamily& sigma, const ParamFamily& shelf, const Exec& ex = {}) {
  auto v = check_admissible_twist(sigma, shelf, ex);
  if (!v.ok) throw NotAdmissible("twist is not admissible: " + describe(*v.counterexample));
  return {sigma, tau_from_twist(sigma, shelf)};
}

struct Extracted {
  ParamFamily shelf;
  ParamFamily sigma;
};

// a ▷_{ij} b = σ^{ji}_a(τ^{ij}_{(σ^{ij}_b)^{-1}(a)}(b)).
inline Extracted extract_shelf(const ParamYBMap& r, const Exec& ex = {}) {
  r.validate();
  if (!check_bijective_family(r.sigma, "sigma").ok)
    throw NotLeftNonDegenerate("some σ^{ij}_a is not a bijection");
  auto v = check_ybe(r, YbeMethod::direct, ex);
  if (!v.ok) throw NotASolution("map fails the parametric braid relation: " + describe(*v.counterexample));
  auto inv = detail::inverse_tables(r.sigma);
  auto shelf = ParamFamily::tabulate(r.sigma.carrier(), r.params(), [&](std::size_t i, std::size_t j, Elem a, Elem b) {
    Elem pre = detail::inv_at(inv, r.sigma, i, j, b, a);
    return r.sigma.at(j, i, a, r.tau.at(i, j, pre, b));
  });
  return {std::move(shelf), r.sigma};
}

namespace detail {

inline Verdict check_group(const std::vector<Elem>& mul, std::size_t n, const char* name) {
  if (mul.size() != n * n) throw DimensionMismatch(std::string(name) + " table has the wrong size");
  auto op = [&](Elem a, Elem b) { return mul[a * n + b]; };
  for (Elem v : mul)
    if (v >= n) return Verdict::fail(name, {"closure", {}, "value outside the carrier"});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (op(op(a, b), c) != op(a, op(b, c)))
          return Verdict::fail(name, {"associativity", {{"a", a}, {"b", b}, {"c", c}}, ""});
  std::optional<Elem> e;
  for (Elem x = 0; x < n && !e; ++x) {
    bool unit = true;
    for (Elem a = 0; a < n; ++a) unit = unit && op(x, a) == a && op(a, x) == a;
    if (unit) e = x;
  }
  if (!e) return Verdict::fail(name, {"identity", {}, "no two-sided identity"});
  for (Elem a = 0; a < n; ++a) {
    bool has = false;
    for (Elem b = 0; b < n && !has; ++b) has = op(a, b) == *e && op(b, a) == *e;
    if (!has) return Verdict::fail(name, {"inverse", {{"a", a}}, ""});
  }
  return Verdict::pass(name);
}

}  // namespace detail

// A parametric set-theoretic operator compatible with a group (X, ∘):
//   x∘y = σ^{ij}_x(y) ∘ τ^{ij}_y(x)
//   f^{ijk}_{x∘y}(w) = σ^{ik}_x σ^{ij}_y (w),  g^{ijk}_w(x∘y) = τ^{ik}_{σ^{ij}_y(w)}(x) ∘ τ^{ij}_w(y)
//   f̂^{ijk}_x(y∘w) = σ^{jk}_x(y) ∘ σ^{ik}_{τ^{jk}_y(x)}(w),  ĝ^{ijk}_{y∘w}(x) = τ^{ik}_w τ^{jk}_y (x)
// The symmetry of the parameter triples and bijectivity of all maps are
// preconditions and raise PreconditionFailed.
inline Verdict check_yb_operator(const std::vector<Elem>& group_mul, const ParamYBMap& r, const TripleFamily& f,
                                 const TripleFamily& g, const TripleFamily& fhat, const TripleFamily& ghat) {
  r.validate();
  const std::size_t n = r.n(), m = r.m();
  for (const TripleFamily* t : {&f, &g, &fhat, &ghat})
    if (t->n() != n || t->m() != m) throw DimensionMismatch("operator data has the wrong shape");
  if (auto v = detail::check_group(group_mul, n, "group"); !v.ok)
    throw PreconditionFailed("multiplication is not a group: " + describe(*v.counterexample));
  auto mul = [&](Elem a, Elem b) { return group_mul[a * n + b]; };

  auto sym_fail = [&](const TripleFamily& t, bool swap_last, const char* name) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (Elem y = 0; y < n; ++y) {
            std::vector<char> hit(n, 0);
            for (Elem x = 0; x < n; ++x) {
              Elem v = t.at(i, j, k, y, x);
              Elem w = swap_last ? t.at(i, k, j, y, x) : t.at(j, i, k, y, x);
              if (v != w) throw PreconditionFailed(std::string(name) + " is not symmetric in its parameters");
              if (hit[v]) throw PreconditionFailed(std::string(name) + " contains a non-bijective map");
              hit[v] = 1;
            }
          }
  };
  sym_fail(f, true, "f");
  sym_fail(g, true, "g");
  sym_fail(fhat, false, "fhat");
  sym_fail(ghat, false, "ghat");

  const auto& s = r.sigma;
  const auto& t = r.tau;
  const auto& y = r.params();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (mul(a, b) != mul(s.at(i, j, a, b), t.at(i, j, b, a)))
            return Verdict::fail("yb-operator", {"matched-product", {{"z_i", y[i]}, {"z_j", y[j]}, {"x", a}, {"y", b}}, ""});

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem w = 0; w < n; ++w)
          for (Elem yy = 0; yy < n; ++yy)
            for (Elem x = 0; x < n; ++x) {
              std::vector<std::pair<std::string, std::uint64_t>> at{
                  {"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"w", w}, {"y", yy}, {"x", x}};
              Elem syw = s.at(i, j, yy, w);
              if (f.at(i, j, k, mul(x, yy), w) != s.at(i, k, x, syw))
                return Verdict::fail("yb-operator", {"left-merge-first", at, ""});
              if (g.at(i, j, k, w, mul(x, yy)) != mul(t.at(i, k, syw, x), t.at(i, j, w, yy)))
                return Verdict::fail("yb-operator", {"left-merge-second", at, ""});
              Elem tyx = t.at(j, k, yy, x);
              if (fhat.at(i, j, k, x, mul(yy, w)) != mul(s.at(j, k, x, yy), s.at(i, k, tyx, w)))
                return Verdict::fail("yb-operator", {"right-merge-first", at, ""});
              if (ghat.at(i, j, k, mul(yy, w), x) != t.at(i, k, w, tyx))
                return Verdict::fail("yb-operator", {"right-merge-second", at, ""});
            }
  return Verdict::pass("yb-operator");
}

// The rack-type operator: σ = id, τ^{ij}_y = y ▷_{ij} (-), with a bullet family
// at(i, j, a, b) = a •_{ij} b and ĝ given. The map g of the left condition is
// read off from that condition; it must come out well defined, injective and
// symmetric in its last two parameters.
inline Verdict check_p_rack_operator(const ParamFamily& bullet, const ParamYBMap& r, const TripleFamily& ghat) {
  r.validate();
  if (!bullet.same_shape(r.sigma)) throw DimensionMismatch("bullet and solution differ in shape");
  const std::size_t n = r.n(), m = r.m();
  if (ghat.n() != n || ghat.m() != m) throw DimensionMismatch("ghat has the wrong shape");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (r.sigma.at(i, j, a, b) != b) throw PreconditionFailed("σ is not the identity");
  if (!check_bijective_family(r.tau, "tau").ok) throw PreconditionFailed("some y ▷ (-) is not a bijection");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem yy = 0; yy < n; ++yy) {
          std::vector<char> hit(n, 0);
          for (Elem x = 0; x < n; ++x) {
            Elem v = ghat.at(i, j, k, yy, x);
            if (v != ghat.at(j, i, k, yy, x)) throw PreconditionFailed("ghat is not symmetric in its parameters");
            if (hit[v]) throw PreconditionFailed("ghat contains a non-bijective map");
            hit[v] = 1;
          }
        }

  const auto& y = r.params();
  auto tri = [&](std::size_t i, std::size_t j, Elem a, Elem b) { return r.tau.at(i, j, a, b); };
  auto bul = [&](std::size_t i, std::size_t j, Elem a, Elem b) { return bullet.at(i, j, a, b); };

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem x = 0; x < n; ++x)
        for (Elem yy = 0; yy < n; ++yy)
          if (bul(j, i, x, yy) != bul(i, j, yy, tri(i, j, yy, x)))
            return Verdict::fail("p-rack-operator", {"restricted", {{"z_i", y[i]}, {"z_j", y[j]}, {"x", x}, {"y", yy}}, ""});

  // g^{ikj}_w(x •_{kj} y) = (w ▷_{ik} x) •_{kj} (w ▷_{ij} y)
  constexpr Elem unset = ~Elem{0};
  TripleFamily g(n, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem w = 0; w < n; ++w)
          for (Elem u = 0; u < n; ++u) g.set(i, k, j, w, u, unset);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem w = 0; w < n; ++w)
          for (Elem x = 0; x < n; ++x)
            for (Elem yy = 0; yy < n; ++yy) {
              Elem u = bul(k, j, x, yy);
              Elem v = bul(k, j, tri(i, k, w, x), tri(i, j, w, yy));
              Elem cur = g.at(i, k, j, w, u);
              if (cur != unset && cur != v)
                return Verdict::fail("p-rack-operator",
                                     {"left-merge", {{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"w", w}, {"x", x}, {"y", yy}},
                                      "no single map fits"});
              g.set(i, k, j, w, u, v);
            }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem w = 0; w < n; ++w) {
          std::vector<char> hit(n, 0);
          for (Elem u = 0; u < n; ++u) {
            Elem v = g.at(i, j, k, w, u), v2 = g.at(i, k, j, w, u);
            if (v == unset) continue;
            if ((v2 != unset && v2 != v) || hit[v])
              return Verdict::fail("p-rack-operator",
                                   {"left-merge", {{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"w", w}, {"u", u}},
                                    "induced map is not symmetric or not injective"});
            hit[v] = 1;
          }
        }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem w = 0; w < n; ++w)
          for (Elem yy = 0; yy < n; ++yy)
            for (Elem x = 0; x < n; ++x)
              if (ghat.at(i, j, k, bul(j, i, yy, w), x) != tri(i, k, w, tri(j, k, yy, x)))
                return Verdict::fail("p-rack-operator",
                                     {"right-merge", {{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"w", w}, {"y", yy}, {"x", x}}, ""});

  auto rack = check_p_rack(r.tau);
  if (!rack.ok) return {"p-rack-operator", false, rack.counterexample};
  return Verdict::pass("p-rack-operator");
}

}  // namespace parayb
