#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "matrix.hpp"
#include "shelves.hpp"
#include "solutions.hpp"
#include "verdict.hpp"

namespace parayb {

// Σ_{a,b} e_{b,σ_a(b)} ⊗ e_{a,τ_b(a)}: the row of basis vector e_b ⊗ e_a holds a
// single 1, in the column of R(b, a).
inline IntMatrix linearize(const ParamYBMap& r, std::size_t i, std::size_t j) {
  const auto n = r.n();
  std::vector<IntMatrix::Entry> e;
  e.reserve(n * n);
  for (Elem b = 0; b < n; ++b)
    for (Elem a = 0; a < n; ++a) {
      auto [u, v] = r.apply(i, j, b, a);
      e.push_back({b * n + a, u * n + v, 1});
    }
  return IntMatrix::from_entries(n * n, n * n, std::move(e));
}

using RFamily = std::function<IntMatrix(std::size_t, std::size_t)>;

// R12^{z12} R13^{z13} R23^{z23} = R23^{z23} R13^{z13} R12^{z12} on (C^n)^{⊗3}
// for every parameter triple.
inline Verdict check_tensor_ybe(const RFamily& r, std::size_t n, const ParamSubset& y,
                                const std::string& name = "tensor-ybe") {
  const std::size_t m = y.size();
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> cache;
  auto get = [&](std::size_t i, std::size_t j) -> const IntMatrix& {
    auto key = std::pair{i, j};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, r(i, j)).first;
    return it->second;
  };
  for (std::size_t z1 = 0; z1 < m; ++z1)
    for (std::size_t z2 = 0; z2 < m; ++z2)
      for (std::size_t z3 = 0; z3 < m; ++z3) {
        auto r12 = embed(get(z1, z2), n, 3, {0, 1});
        auto r13 = embed(get(z1, z3), n, 3, {0, 2});
        auto r23 = embed(get(z2, z3), n, 3, {1, 2});
        if (!(r12 * r13 * r23 == r23 * r13 * r12))
          return Verdict::fail(name, {"braid", {{"z_1", y[z1]}, {"z_2", y[z2]}, {"z_3", y[z3]}}, ""});
      }
  return Verdict::pass(name);
}

inline Verdict check_tensor_ybe(const ParamYBMap& r) {
  return check_tensor_ybe([&](std::size_t i, std::size_t j) { return linearize(r, i, j); }, r.n(), r.params());
}

// The fundamental representation: q^{ij}_a = Σ_x e_{x, a ▷_{ij} x}, h_a = e_{a,a},
// w^{ij}_a = Σ_b e_{σ^{ji}_a(b), b}. Inverses of q and w are their transposes.
struct RepBundle {
  ParamFamily shelf;
  std::optional<ParamFamily> sigma;
  std::optional<ParamFamily> tau;  // τ of the twisted solution, when σ is present
  std::size_t n = 0, m = 0;
  std::vector<IntMatrix> q_, q_inv_, w_, w_inv_, h_;

  const IntMatrix& q(std::size_t i, std::size_t j, Elem a) const { return q_[(i * m + j) * n + a]; }
  const IntMatrix& q_inv(std::size_t i, std::size_t j, Elem a) const { return q_inv_[(i * m + j) * n + a]; }
  const IntMatrix& w(std::size_t i, std::size_t j, Elem a) const { return w_.at((i * m + j) * n + a); }
  const IntMatrix& w_inv(std::size_t i, std::size_t j, Elem a) const { return w_inv_.at((i * m + j) * n + a); }
  const IntMatrix& h(Elem a) const { return h_[a]; }
  bool decorated() const { return sigma.has_value(); }
  const ParamSubset& params() const { return shelf.params(); }
  Elem tri(std::size_t i, std::size_t j, Elem a, Elem b) const { return shelf.at(i, j, a, b); }
  Elem sig(std::size_t i, std::size_t j, Elem a, Elem b) const { return sigma->at(i, j, a, b); }
};

// Builds the matrices without validating the data, so broken inputs can be
// shown to violate the algebra relations.
inline RepBundle make_rep_unchecked(const ParamFamily& shelf, const std::optional<ParamFamily>& sigma = std::nullopt) {
  RepBundle b;
  b.shelf = shelf;
  b.sigma = sigma;
  b.n = shelf.n();
  b.m = shelf.m();
  const auto n = b.n, m = b.m;
  if (sigma && !sigma->same_shape(shelf)) throw DimensionMismatch("twist and shelf differ in shape");
  if (sigma && check_bijective_family(*sigma, "sigma").ok) b.tau = tau_from_twist(*sigma, shelf);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem a = 0; a < n; ++a) {
        std::vector<IntMatrix::Entry> e;
        for (Elem x = 0; x < n; ++x) e.push_back({x, shelf.at(i, j, a, x), 1});
        b.q_.push_back(IntMatrix::from_entries(n, n, e));
        b.q_inv_.push_back(b.q_.back().transpose());
        if (sigma) {
          std::vector<IntMatrix::Entry> f;
          for (Elem x = 0; x < n; ++x) f.push_back({sigma->at(j, i, a, x), x, 1});
          b.w_.push_back(IntMatrix::from_entries(n, n, f));
          b.w_inv_.push_back(b.w_.back().transpose());
        }
      }
  for (Elem a = 0; a < n; ++a) b.h_.push_back(IntMatrix::unit(n, a, a));
  return b;
}

inline RepBundle fundamental_rep(const ParamFamily& shelf, const std::optional<ParamFamily>& sigma = std::nullopt,
                                 const Exec& ex = {}) {
  shelf.require_closed();
  if (auto v = check_p_rack(shelf, ex); !v.ok) throw NotARack("shelf is not a p-rack: " + describe(*v.counterexample));
  if (sigma) {
    sigma->require_closed();
    if (!check_bijective_family(*sigma, "sigma").ok) throw SigmaInvalid("some σ^{ij}_a is not a bijection");
    auto tau = tau_from_twist(*sigma, shelf);
    for (std::size_t i = 0; i < shelf.m(); ++i)
      for (std::size_t j = 0; j < shelf.m(); ++j)
        for (std::size_t k = 0; k < shelf.m(); ++k)
          for (Elem a = 0; a < shelf.n(); ++a)
            for (Elem b = 0; b < shelf.n(); ++b)
              for (Elem c = 0; c < shelf.n(); ++c)
                if (sigma->at(i, k, a, sigma->at(i, j, b, c)) !=
                    sigma->at(i, j, sigma->at(j, k, a, b), sigma->at(i, k, tau.at(j, k, b, a), c)))
                  throw SigmaInvalid("σ fails the composition condition");
  }
  return make_rep_unchecked(shelf, sigma);
}

enum class AlgebraTier { p_rack, decorated, p_set, special };

struct AlgebraOptions {
  // The w-w exchange carries τ^{jk}; with this set, τ^{kj} is used instead.
  bool swapped_tau_in_ww = false;
  // Bullet family for the p-set tier (restricted condition).
  std::optional<ParamFamily> bullet;
};

inline Verdict check_restricted(const ParamFamily& bullet, const ParamFamily& shelf);

inline Verdict check_algebra_relations(const RepBundle& b, AlgebraTier tier, const AlgebraOptions& opt = {}) {
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  const std::string name = "algebra-relations";
  auto fail = [&](const char* rel, std::vector<std::pair<std::string, std::uint64_t>> at) {
    return Verdict::fail(name, {rel, std::move(at), ""});
  };
  const auto id = IntMatrix::identity(n);

  IntMatrix sum_h(n, n);
  for (Elem a = 0; a < n; ++a) {
    sum_h = sum_h + b.h(a);
    for (Elem c = 0; c < n; ++c)
      if (!(b.h(a) * b.h(c) == (a == c ? b.h(a) : IntMatrix(n, n)))) return fail("h-idempotent", {{"a", a}, {"b", c}});
  }
  if (!(sum_h == id)) return fail("h-partition", {});

  if (tier == AlgebraTier::special) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Elem a = 0; a < n; ++a)
          if (!(b.q(i, j, a) == id)) return fail("trivial-shelf", {{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}});
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Elem a = 0; a < n; ++a)
          if (!(b.q(i, j, a) * b.q_inv(i, j, a) == id) || !(b.q_inv(i, j, a) * b.q(i, j, a) == id))
            return fail("q-invertible", {{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (Elem a = 0; a < n; ++a)
            for (Elem c = 0; c < n; ++c) {
              // q_a^{jk} q_c^{ik} = q_c^{ik} q^{jk}_{c ▷_{ij} a}
              if (!(b.q(j, k, a) * b.q(i, k, c) == b.q(i, k, c) * b.q(j, k, b.tri(i, j, c, a))))
                return fail("q-q", {{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"a", a}, {"b", c}});
            }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Elem a = 0; a < n; ++a)
          for (Elem c = 0; c < n; ++c)
            // q_c^{ij} h_{c ▷_{ij} a} = h_a q_c^{ij}
            if (!(b.q(i, j, c) * b.h(b.tri(i, j, c, a)) == b.h(a) * b.q(i, j, c)))
              return fail("q-h", {{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}, {"b", c}});
  }
  if (tier == AlgebraTier::p_rack) return Verdict::pass(name);

  if (!b.decorated()) throw MissingConstraintOp("decorated relations need a twist σ");
  if (!b.tau) return fail("w-invertible", {});
  const auto& tau = *b.tau;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem a = 0; a < n; ++a)
        if (!(b.w(i, j, a) * b.w_inv(i, j, a) == id) || !(b.w_inv(i, j, a) * b.w(i, j, a) == id))
          return fail("w-invertible", {{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem a = 0; a < n; ++a)
          for (Elem c = 0; c < n; ++c) {
            std::vector<std::pair<std::string, std::uint64_t>> at{{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"a", a}, {"b", c}};
            // w_a^{ki} w_c^{ji} = w^{ji}_{σ^{jk}_a(c)} w^{ki}_{τ^{jk}_c(a)}
            Elem t = opt.swapped_tau_in_ww ? tau.at(k, j, c, a) : tau.at(j, k, c, a);
            if (!(b.w(k, i, a) * b.w(j, i, c) == b.w(j, i, b.sig(j, k, a, c)) * b.w(k, i, t))) return fail("w-w", at);
            if (tier != AlgebraTier::special &&
                // w_a^{kj} q_c^{ij} = q^{ij}_{σ^{ik}_a(c)} w_a^{kj}
                !(b.w(k, j, a) * b.q(i, j, c) == b.q(i, j, b.sig(i, k, a, c)) * b.w(k, j, a)))
              return fail("w-q", at);
          }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem a = 0; a < n; ++a)
        for (Elem c = 0; c < n; ++c)
          // w_a^{ji} h_c = h_{σ^{ij}_a(c)} w_a^{ji}
          if (!(b.w(j, i, a) * b.h(c) == b.h(b.sig(i, j, a, c)) * b.w(j, i, a)))
            return fail("w-h", {{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}, {"b", c}});

  if (tier == AlgebraTier::p_set) {
    if (!opt.bullet) throw MissingConstraintOp("the p-set tier needs a bullet family");
    auto v = check_restricted(*opt.bullet, b.shelf);
    if (!v.ok) return {name, false, v.counterexample};
  }
  return Verdict::pass(name);
}

// a •_{ji} b = b •_{ij} (b ▷_{ij} a), with every a •_{ij} (-) a bijection.
inline Verdict check_restricted(const ParamFamily& bullet, const ParamFamily& shelf) {
  if (!bullet.same_shape(shelf)) throw DimensionMismatch("bullet and shelf differ in shape");
  const auto& y = shelf.params();
  for (std::size_t i = 0; i < shelf.m(); ++i)
    for (std::size_t j = 0; j < shelf.m(); ++j)
      for (Elem a = 0; a < shelf.n(); ++a)
        for (Elem c = 0; c < shelf.n(); ++c)
          if (bullet.at(j, i, a, c) != bullet.at(i, j, c, shelf.at(i, j, c, a)))
            return Verdict::fail("restricted", {"restricted", {{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}, {"b", c}}, ""});
  auto v = check_bijective_family(bullet, "restricted");
  return v;
}

inline IntMatrix universal_r(const RepBundle& b, std::size_t i, std::size_t j) {
  IntMatrix r(b.n * b.n, b.n * b.n);
  for (Elem a = 0; a < b.n; ++a) r = r + kron(b.h(a), b.q(i, j, a));
  return r;
}

struct UniversalReport {
  Verdict ybe, inverse, t_commute, frt;
};

// R^{ij} = Σ_a h_a ⊗ q^{ij}_a in the representation, its inverse
// Σ_a h_a ⊗ (q^{ij}_a)^{-1}, the commuting sums t^{ik} = Σ_a q^{ik}_a, and the
// three consistency equations with L = Σ_a e_{aa} ⊗ q_a and L̂ = Σ_b h_b ⊗ e_{a, b▷a}.
inline UniversalReport universal_r_in_rep(const RepBundle& b) {
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  UniversalReport rep{check_tensor_ybe([&](std::size_t i, std::size_t j) { return universal_r(b, i, j); }, n, y,
                                       "universal-r-ybe"),
                      Verdict::pass("universal-r-inverse"), Verdict::pass("t-commute"), Verdict::pass("frt")};
  const auto id2 = IntMatrix::identity(n * n);
  for (std::size_t i = 0; i < m && rep.inverse.ok; ++i)
    for (std::size_t j = 0; j < m && rep.inverse.ok; ++j) {
      IntMatrix inv(n * n, n * n);
      for (Elem a = 0; a < n; ++a) inv = inv + kron(b.h(a), b.q_inv(i, j, a));
      auto r = universal_r(b, i, j);
      if (!(r * inv == id2) || !(inv * r == id2))
        rep.inverse = Verdict::fail("universal-r-inverse", {"inverse", {{"z_i", y[i]}, {"z_j", y[j]}}, ""});
    }
  std::vector<IntMatrix> t(m * m, IntMatrix(n, n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (Elem a = 0; a < n; ++a) t[i * m + k] = t[i * m + k] + b.q(i, k, a);
  for (std::size_t i = 0; i < m && rep.t_commute.ok; ++i)
    for (std::size_t j = 0; j < m && rep.t_commute.ok; ++j)
      for (std::size_t k = 0; k < m && rep.t_commute.ok; ++k)
        if (!(t[j * m + k] * t[i * m + k] == t[i * m + k] * t[j * m + k]))
          rep.t_commute = Verdict::fail("t-commute", {"commutator", {{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}}, ""});

  auto l = [&](std::size_t i, std::size_t j) {
    IntMatrix out(n * n, n * n);
    for (Elem a = 0; a < n; ++a) out = out + kron(IntMatrix::unit(n, a, a), b.q(i, j, a));
    return out;
  };
  auto lhat = [&](std::size_t i, std::size_t j) {
    std::vector<IntMatrix::Entry> e;
    for (Elem c = 0; c < n; ++c)
      for (Elem a = 0; a < n; ++a) e.push_back({c * n + a, c * n + b.tri(i, j, c, a), 1});
    return IntMatrix::from_entries(n * n, n * n, std::move(e));
  };
  for (std::size_t z1 = 0; z1 < m && rep.frt.ok; ++z1)
    for (std::size_t z2 = 0; z2 < m && rep.frt.ok; ++z2)
      for (std::size_t z3 = 0; z3 < m && rep.frt.ok; ++z3) {
        auto at = [&](const IntMatrix& x, std::size_t p, std::size_t q) { return embed(x, n, 3, {p, q}); };
        auto r12 = at(universal_r(b, z1, z2), 0, 1), r13 = at(universal_r(b, z1, z3), 0, 2),
             r23 = at(universal_r(b, z2, z3), 1, 2);
        auto l12 = at(l(z1, z2), 0, 1), l13 = at(l(z1, z3), 0, 2), l23 = at(l(z2, z3), 1, 2);
        auto h12 = at(lhat(z1, z2), 0, 1), h13 = at(lhat(z1, z3), 0, 2), h23 = at(lhat(z2, z3), 1, 2);
        const char* bad = nullptr;
        if (!(r12 * l13 * l23 == l23 * l13 * r12)) bad = "R L L";
        else if (!(h12 * h13 * r23 == r23 * h13 * h12)) bad = "Lhat Lhat R";
        else if (!(l12 * r13 * h23 == h23 * r13 * l12)) bad = "L R Lhat";
        if (bad) rep.frt = Verdict::fail("frt", {bad, {{"z_1", y[z1]}, {"z_2", y[z2]}, {"z_3", y[z3]}}, ""});
      }
  return rep;
}

// F^{ij} = Σ_b h_b ⊗ (w^{ij}_b)^{-1}.
inline IntMatrix twist_f(const RepBundle& b, std::size_t i, std::size_t j) {
  IntMatrix f(b.n * b.n, b.n * b.n);
  for (Elem c = 0; c < b.n; ++c) f = f + kron(b.h(c), b.w_inv(i, j, c));
  return f;
}

inline IntMatrix twist_f_inverse(const RepBundle& b, std::size_t i, std::size_t j) {
  IntMatrix f(b.n * b.n, b.n * b.n);
  for (Elem c = 0; c < b.n; ++c) f = f + kron(b.h(c), b.w(i, j, c));
  return f;
}

// R^{F ij} = (F^{ji})^{op} R^{ij} (F^{ij})^{-1}, the opposite being conjugation by the flip.
inline IntMatrix twisted_r(const RepBundle& b, std::size_t i, std::size_t j) {
  auto p = flip(b.n);
  return p * twist_f(b, j, i) * p * universal_r(b, i, j) * twist_f_inverse(b, i, j);
}

// The n-fold twist read off the σ maps directly: leg k carries
// e_{a_k, σ^{k1}_{a_1}(σ^{k2}_{a_2}(... σ^{k,k-1}_{a_{k-1}}(a_k)))}.
inline IntMatrix nfold_closed(const RepBundle& b, const std::vector<std::size_t>& z) {
  const std::size_t k = z.size(), n = b.n;
  std::vector<IntMatrix::Entry> e;
  const std::size_t dim = ipow(n, k);
  for (std::size_t row = 0; row < dim; ++row) {
    std::vector<Elem> a(k);
    for (std::size_t t = k, r = row; t-- > 0; r /= n) a[t] = static_cast<Elem>(r % n);
    std::size_t col = 0;
    for (std::size_t t = 0; t < k; ++t) {
      Elem v = a[t];
      for (std::size_t s = t; s-- > 0;) v = b.sig(z[t], z[s], a[s], v);
      col = col * n + v;
    }
    e.push_back({row, col, 1});
  }
  return IntMatrix::from_entries(dim, dim, std::move(e));
}

// The same twist as a sum of products of generators:
// Σ h_{a1} ⊗ h_{a2}(w^{12}_{a1})^{-1} ⊗ h_{a3}(w^{23}_{a2})^{-1}(w^{13}_{a1})^{-1} ⊗ ...
inline IntMatrix nfold_product(const RepBundle& b, const std::vector<std::size_t>& z) {
  const std::size_t k = z.size(), n = b.n;
  IntMatrix out(ipow(n, k), ipow(n, k));
  std::vector<Elem> a(k, 0);
  for (std::size_t idx = 0; idx < ipow(n, k); ++idx) {
    for (std::size_t t = k, r = idx; t-- > 0; r /= n) a[t] = static_cast<Elem>(r % n);
    std::vector<IntMatrix> legs;
    for (std::size_t t = 0; t < k; ++t) {
      IntMatrix f = b.h(a[t]);
      for (std::size_t s = t; s-- > 0;) f = f * b.w_inv(z[s], z[t], a[s]);
      legs.push_back(f);
    }
    out = out + kron(legs);
  }
  return out;
}

// F_{1,2..k} = Σ_a h_a ⊗ (w^{12}_a)^{-1} ⊗ ... ⊗ (w^{1k}_a)^{-1}.
inline IntMatrix twist_head(const RepBundle& b, const std::vector<std::size_t>& z) {
  const std::size_t k = z.size(), n = b.n;
  IntMatrix out(ipow(n, k), ipow(n, k));
  for (Elem a = 0; a < n; ++a) {
    std::vector<IntMatrix> legs{b.h(a)};
    for (std::size_t t = 1; t < k; ++t) legs.push_back(b.w_inv(z[0], z[t], a));
    out = out + kron(legs);
  }
  return out;
}

// F_{1..k} = F_{2..k} F_{1,2..k}, starting from F^{z_12}.
inline IntMatrix nfold_recursive(const RepBundle& b, const std::vector<std::size_t>& z) {
  if (z.size() == 1) return IntMatrix::identity(b.n);
  if (z.size() == 2) return twist_f(b, z[0], z[1]);
  std::vector<std::size_t> tail(z.begin() + 1, z.end());
  return kron(IntMatrix::identity(b.n), nfold_recursive(b, tail)) * twist_head(b, z);
}

struct TwistReport {
  Verdict factorization, twisted_matches_solution, orthogonal, exchange, nfold;
  std::optional<Verdict> special;
};

// Checks the admissible twist in the representation. nfold_legs bounds the
// number of legs used for the n-fold comparisons (3 or 4).
inline TwistReport twist_in_rep(const RepBundle& b, std::size_t nfold_legs = 3) {
  if (!b.decorated() || !b.tau) throw MissingConstraintOp("the twist needs a bijective σ");
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  TwistReport rep{Verdict::pass("twist-factorization"), Verdict::pass("twisted-r"), Verdict::pass("twisted-r-orthogonal"),
                  Verdict::pass("twist-exchange"), Verdict::pass("nfold-twist"), std::nullopt};
  const ParamYBMap sol{*b.sigma, *b.tau};

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto rf = twisted_r(b, i, j);
      if (rep.twisted_matches_solution.ok && !(rf == linearize(sol, i, j)))
        rep.twisted_matches_solution = Verdict::fail("twisted-r", {"linearized", {{"z_i", y[i]}, {"z_j", y[j]}}, ""});
      if (rep.orthogonal.ok && !(rf * rf.transpose() == IntMatrix::identity(n * n)))
        rep.orthogonal = Verdict::fail("twisted-r-orthogonal", {"transpose", {{"z_i", y[i]}, {"z_j", y[j]}}, ""});
    }

  const auto id = IntMatrix::identity(n);
  IntMatrix p23 = embed(flip(n), n, 3, {1, 2}), p12 = embed(flip(n), n, 3, {0, 1});
  for (std::size_t z1 = 0; z1 < m; ++z1)
    for (std::size_t z2 = 0; z2 < m; ++z2)
      for (std::size_t z3 = 0; z3 < m; ++z3) {
        std::vector<std::pair<std::string, std::uint64_t>> at{{"z_1", y[z1]}, {"z_2", y[z2]}, {"z_3", y[z3]}};
        if (rep.factorization.ok) {
          // F_{12} F*_{12,3} = F_{23} F_{1,23}
          IntMatrix fstar(n * n * n, n * n * n);
          for (Elem a = 0; a < n; ++a)
            for (Elem c = 0; c < n; ++c)
              fstar = fstar + kron({b.h(a), b.h(b.sig(z2, z1, a, c)), b.w_inv(z2, z3, c) * b.w_inv(z1, z3, a)});
          auto lhs = kron(twist_f(b, z1, z2), id) * fstar;
          auto rhs = kron(id, twist_f(b, z2, z3)) * twist_head(b, {z1, z2, z3});
          if (!(lhs == rhs)) rep.factorization = Verdict::fail("twist-factorization", {"F12 F*12,3 = F23 F1,23", at, ""});
          else if (!(lhs == nfold_closed(b, {z1, z2, z3})))
            rep.factorization = Verdict::fail("twist-factorization", {"closed form", at, ""});
        }
        if (rep.exchange.ok) {
          // F^{z132}_{132} R_{23} = R^F_{23} F^{z123}, legs relabelled by conjugation
          auto f123 = nfold_closed(b, {z1, z2, z3});
          auto f132 = p23 * nfold_closed(b, {z1, z3, z2}) * p23;
          auto f213 = p12 * nfold_closed(b, {z2, z1, z3}) * p12;
          if (!(f132 * kron(id, universal_r(b, z2, z3)) == kron(id, twisted_r(b, z2, z3)) * f123))
            rep.exchange = Verdict::fail("twist-exchange", {"legs 2,3", at, ""});
          else if (!(f213 * kron(universal_r(b, z1, z2), id) == kron(twisted_r(b, z1, z2), id) * f123))
            rep.exchange = Verdict::fail("twist-exchange", {"legs 1,2", at, ""});
        }
      }

  for (std::size_t legs = 3; legs <= nfold_legs && rep.nfold.ok; ++legs) {
    std::vector<std::uint32_t> radix(legs, static_cast<std::uint32_t>(m));
    for (std::uint64_t idx = 0; idx < space_size(radix) && rep.nfold.ok; ++idx) {
      auto d = digits(idx, radix);
      std::vector<std::size_t> z(d.begin(), d.end());
      auto closed = nfold_closed(b, z);
      std::vector<std::pair<std::string, std::uint64_t>> at;
      for (std::size_t t = 0; t < legs; ++t) at.push_back({"z_" + std::to_string(t + 1), y[z[t]]});
      if (!(closed == nfold_product(b, z))) rep.nfold = Verdict::fail("nfold-twist", {"product form", at, ""});
      else if (!(closed == nfold_recursive(b, z))) rep.nfold = Verdict::fail("nfold-twist", {"recursion", at, ""});
    }
  }

  bool trivial = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (Elem a = 0; a < n; ++a)
        for (Elem c = 0; c < n; ++c) trivial = trivial && b.tri(i, j, a, c) == c;
  if (trivial) {
    rep.special = Verdict::pass("special-unitarity");
    auto p = flip(n);
    for (std::size_t i = 0; i < m && rep.special->ok; ++i)
      for (std::size_t j = 0; j < m && rep.special->ok; ++j)
        if (!(twisted_r(b, i, j) * (p * twisted_r(b, j, i) * p) == IntMatrix::identity(n * n)))
          rep.special = Verdict::fail("special-unitarity", {"R12 R21", {{"z_i", y[i]}, {"z_j", y[j]}}, ""});
  }
  return rep;
}

// Under w_a^{jk} w_b^{ik} = w^{(zi∘zj) k}_{a∘b}, the n-fold twist collapses to
// legs e_{a_k, σ^{k, z_1∘..∘z_{k-1}}_{a_1∘..∘a_{k-1}}(a_k)}. Y must be closed under ∘.
inline Verdict check_collapsed_twist(const RepBundle& b, const std::vector<Elem>& group_mul, std::size_t legs) {
  if (!b.decorated()) throw MissingConstraintOp("the twist needs σ");
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  if (group_mul.size() != n * n) throw DimensionMismatch("group table has the wrong size");
  auto mul = [&](Elem a, Elem c) { return group_mul[a * n + c]; };
  auto pos = [&](Elem z) {
    auto p = y.position(z);
    if (!p) throw PreconditionFailed("parameter set is not closed under the group product");
    return *p;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem a = 0; a < n; ++a)
          for (Elem c = 0; c < n; ++c)
            if (!(b.w(j, k, a) * b.w(i, k, c) == b.w(pos(mul(y[i], y[j])), k, mul(a, c))))
              throw HypothesisFailed("w_a^{jk} w_b^{ik} differs from w^{(zi zj) k}_{ab}");
  std::vector<std::uint32_t> radix(legs, static_cast<std::uint32_t>(m));
  for (std::uint64_t idx = 0; idx < space_size(radix); ++idx) {
    auto d = digits(idx, radix);
    std::vector<std::size_t> z(d.begin(), d.end());
    const std::size_t dim = ipow(n, legs);
    std::vector<IntMatrix::Entry> e;
    for (std::size_t row = 0; row < dim; ++row) {
      std::vector<Elem> a(legs);
      for (std::size_t t = legs, r = row; t-- > 0; r /= n) a[t] = static_cast<Elem>(r % n);
      std::size_t col = a[0];
      Elem zprod = y[z[0]], aprod = a[0];
      for (std::size_t t = 1; t < legs; ++t) {
        col = col * n + b.sig(z[t], pos(zprod), aprod, a[t]);
        zprod = mul(y[z[t]], zprod);
        aprod = mul(aprod, a[t]);
      }
      e.push_back({row, col, 1});
    }
    if (!(IntMatrix::from_entries(dim, dim, std::move(e)) == nfold_closed(b, z))) {
      std::vector<std::pair<std::string, std::uint64_t>> at;
      for (std::size_t t = 0; t < legs; ++t) at.push_back({"z_" + std::to_string(t + 1), y[z[t]]});
      return Verdict::fail("collapsed-twist", {"collapsed form", at, ""});
    }
  }
  return Verdict::pass("collapsed-twist");
}

}  // namespace parayb
