#pragma once

#include <string>
#include <vector>

#include "carrier.hpp"
#include "solutions.hpp"
#include "verdict.hpp"

namespace parayb {

// Checks the two group structures, the shared identity and
// a∘(b+c) = a∘b - a + a∘c.
inline Verdict check_skew_brace(std::size_t n, const std::vector<Elem>& add, const std::vector<Elem>& mul) {
  if (add.size() != n * n || mul.size() != n * n) throw DimensionMismatch("brace tables must be n x n");
  if (auto v = detail::check_group(add, n, "additive-group"); !v.ok) return {"skew-brace", false, v.counterexample};
  if (auto v = detail::check_group(mul, n, "multiplicative-group"); !v.ok) return {"skew-brace", false, v.counterexample};
  auto p = [&](Elem a, Elem b) { return add[a * n + b]; };
  auto t = [&](Elem a, Elem b) { return mul[a * n + b]; };
  Elem zero = 0, one = 0;
  for (Elem x = 0; x < n; ++x) {
    if (p(x, x) == x) zero = x;
    if (t(x, x) == x) one = x;
  }
  if (zero != one) return Verdict::fail("skew-brace", {"shared-identity", {{"zero", zero}, {"one", one}}, ""});
  std::vector<Elem> neg(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (p(a, b) == zero) neg[a] = b;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (t(a, p(b, c)) != p(p(t(a, b), neg[a]), t(a, c)))
          return Verdict::fail("skew-brace", {"brace-distributivity", {{"a", a}, {"b", b}, {"c", c}}, ""});
  return Verdict::pass("skew-brace");
}

class SkewBrace {
 public:
  SkewBrace() = default;

  static SkewBrace from_tables(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul,
                               std::vector<std::string> labels = {}) {
    auto v = check_skew_brace(n, add, mul);
    if (!v.ok) throw NotASkewBrace("tables do not form a skew brace: " + describe(*v.counterexample));
    SkewBrace b;
    b.carrier_ = Carrier(n, std::move(labels));
    b.add_ = std::move(add);
    b.mul_ = std::move(mul);
    for (Elem x = 0; x < n; ++x)
      if (b.plus(x, x) == x) b.one_ = x;
    b.neg_.resize(n);
    b.inv_.resize(n);
    for (Elem a = 0; a < n; ++a)
      for (Elem c = 0; c < n; ++c) {
        if (b.plus(a, c) == b.one_) b.neg_[a] = c;
        if (b.times(a, c) == b.one_) b.inv_[a] = c;
      }
    return b;
  }

  const Carrier& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  Elem one() const { return one_; }
  Elem plus(Elem a, Elem b) const { return add_[a * size() + b]; }
  Elem minus(Elem a, Elem b) const { return plus(a, neg_[b]); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem times(Elem a, Elem b) const { return mul_[a * size() + b]; }
  Elem inverse(Elem a) const { return inv_[a]; }
  const std::vector<Elem>& add_table() const { return add_; }
  const std::vector<Elem>& mul_table() const { return mul_; }

  template <class... Rest>
  Elem times(Elem a, Elem b, Rest... rest) const {
    return times(times(a, b), rest...);
  }

  bool add_abelian() const {
    for (Elem a = 0; a < size(); ++a)
      for (Elem b = 0; b < size(); ++b)
        if (plus(a, b) != plus(b, a)) return false;
    return true;
  }

 private:
  Carrier carrier_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  Elem one_ = 0;
};

// Odd residues modulo 2^m, a + b = a - 1 + b, a ∘ b = ab. Element k is the
// residue 2k + 1.
inline SkewBrace cyclic_brace(int m) {
  if (m < 1 || m > 12) throw InputError("cyclic brace needs 1 <= m <= 12");
  const std::uint64_t mod = std::uint64_t{1} << m;
  const std::size_t n = mod / 2;
  std::vector<Elem> add(n * n), mul(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(2 * a + 1);
    for (std::size_t b = 0; b < n; ++b) {
      std::uint64_t x = 2 * a + 1, y = 2 * b + 1;
      add[a * n + b] = static_cast<Elem>(((x + y - 1) % mod) / 2);
      mul[a * n + b] = static_cast<Elem>(((x * y) % mod) / 2);
    }
  }
  return SkewBrace::from_tables(n, std::move(add), std::move(mul), std::move(labels));
}

struct Admissibility {
  bool right_distributive = true;  // (a+b)∘z = a∘z - z + b∘z for z in Y
  bool central_in_add = true;      // z + a = a + z for z in Y
  bool params_commute = true;      // z∘w = w∘z for z, w in Y
  bool xi_in_params = true;
  bool xi_central_mul = true;      // ξ∘a = a∘ξ
  bool rack_ok() const { return right_distributive && central_in_add; }
  bool twist_ok() const { return rack_ok() && params_commute && xi_in_params && xi_central_mul; }
};

inline Admissibility check_admissible_Y(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  y.validate(br.size());
  if (xi >= br.size()) throw InputError("ξ is not in the carrier");
  Admissibility r;
  const auto n = br.size();
  for (Elem z : y.elems)
    for (Elem a = 0; a < n; ++a) {
      if (br.plus(z, a) != br.plus(a, z)) r.central_in_add = false;
      for (Elem b = 0; b < n; ++b)
        if (br.times(br.plus(a, b), z) != br.plus(br.minus(br.times(a, z), z), br.times(b, z)))
          r.right_distributive = false;
    }
  for (Elem z : y.elems)
    for (Elem w : y.elems)
      if (br.times(z, w) != br.times(w, z)) r.params_commute = false;
  r.xi_in_params = y.position(xi).has_value();
  for (Elem a = 0; a < n; ++a)
    if (br.times(xi, a) != br.times(a, xi)) r.xi_central_mul = false;
  return r;
}

// a ▷ b for explicit parameter elements zi, zj:
// -(ξ∘a∘zi∘zj⁻¹) + ξ∘b + a∘zi∘zj⁻¹.
inline Elem brace_triangle(const SkewBrace& br, Elem xi, Elem zi, Elem zj, Elem a, Elem b) {
  Elem t = br.times(a, zi, br.inverse(zj));
  return br.plus(br.plus(br.neg(br.times(xi, t)), br.times(xi, b)), t);
}

// σ for explicit parameter elements: zi⁻¹ - ξ∘a∘zi⁻¹∘zj + a∘b∘ξ∘zj.
inline Elem brace_sigma(const SkewBrace& br, Elem xi, Elem zi, Elem zj, Elem a, Elem b) {
  Elem zi_inv = br.inverse(zi);
  return br.plus(br.minus(zi_inv, br.times(xi, a, zi_inv, zj)), br.times(a, b, xi, zj));
}

inline void require_rack_admissible(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  if (!check_admissible_Y(br, y, xi).rack_ok())
    throw NotAdmissible("parameters must be right distributive and central in (X, +)");
}

inline ParamFamily brace_shelf(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  require_rack_admissible(br, y, xi);
  return ParamFamily::tabulate(br.carrier(), y, [&](std::size_t i, std::size_t j, Elem a, Elem b) {
    return brace_triangle(br, xi, y[i], y[j], a, b);
  });
}

// Closed form of the inverse of b -> a ▷_{ij} b:
// a∘zi∘zj⁻¹ - ξ⁻¹ + ξ⁻¹∘b - ξ⁻¹∘a∘zi∘zj⁻¹ + ξ⁻¹.
inline ParamFamily brace_shelf_inverse(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  require_rack_admissible(br, y, xi);
  Elem xin = br.inverse(xi);
  return ParamFamily::tabulate(br.carrier(), y, [&](std::size_t i, std::size_t j, Elem a, Elem b) {
    Elem t = br.times(a, y[i], br.inverse(y[j]));
    Elem s = br.plus(br.minus(t, xin), br.times(xin, b));
    return br.plus(br.minus(s, br.times(xin, t)), xin);
  });
}

// Closed form of (σ^{ij}_a)⁻¹(b): zi⁻¹ - a⁻¹∘ξ⁻¹∘zi⁻¹∘zj⁻¹ + a⁻¹∘b∘ξ⁻¹∘zj⁻¹.
inline ParamFamily brace_sigma_inverse(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  Elem xin = br.inverse(xi);
  return ParamFamily::tabulate(br.carrier(), y, [&](std::size_t i, std::size_t j, Elem a, Elem b) {
    Elem zi_inv = br.inverse(y[i]), zj_inv = br.inverse(y[j]), a_inv = br.inverse(a);
    return br.plus(br.minus(zi_inv, br.times(a_inv, xin, zi_inv, zj_inv)), br.times(a_inv, b, xin, zj_inv));
  });
}

// σ from the formula above and τ from the twist construction with the brace shelf.
inline ParamYBMap brace_sigma_tau(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  auto adm = check_admissible_Y(br, y, xi);
  if (!adm.twist_ok())
    throw NotAdmissible("twist needs admissible parameters that commute, with ξ in Y and central in (X, ∘)");
  auto sigma = ParamFamily::tabulate(br.carrier(), y, [&](std::size_t i, std::size_t j, Elem a, Elem b) {
    return brace_sigma(br, xi, y[i], y[j], a, b);
  });
  auto shelf = brace_shelf(br, y, xi);
  auto tau = tau_from_twist(sigma, shelf);
  return {std::move(sigma), std::move(tau)};
}

// a •_{ij} b = ξ∘a∘zi + b∘zj.
inline ParamFamily brace_bullet(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  require_rack_admissible(br, y, xi);
  return ParamFamily::tabulate(br.carrier(), y, [&](std::size_t i, std::size_t j, Elem a, Elem b) {
    return br.plus(br.times(xi, a, y[i]), br.times(b, y[j]));
  });
}

struct YbOperatorData {
  TripleFamily f, g, fhat, ghat;
};

// f^{ijk} = σ with parameters (zi, zj∘zk∘ξ), f̂^{ijk} = σ with (zi∘zj, zk);
// g and ĝ are fixed by x∘y = f_x(y)∘g_y(x) = f̂_x(y)∘ĝ_y(x).
inline YbOperatorData brace_yb_operator_data(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  const auto n = br.size(), m = y.size();
  YbOperatorData d;
  d.f = TripleFamily::tabulate(n, m, [&](std::size_t i, std::size_t j, std::size_t k, Elem a, Elem b) {
    return brace_sigma(br, xi, y[i], br.times(y[j], y[k], xi), a, b);
  });
  d.fhat = TripleFamily::tabulate(n, m, [&](std::size_t i, std::size_t j, std::size_t k, Elem a, Elem b) {
    return brace_sigma(br, xi, br.times(y[i], y[j]), y[k], a, b);
  });
  d.g = TripleFamily::tabulate(n, m, [&](std::size_t i, std::size_t j, std::size_t k, Elem yy, Elem x) {
    return br.times(br.inverse(d.f.at(i, j, k, x, yy)), x, yy);
  });
  d.ghat = TripleFamily::tabulate(n, m, [&](std::size_t i, std::size_t j, std::size_t k, Elem yy, Elem x) {
    return br.times(br.inverse(d.fhat.at(i, j, k, x, yy)), x, yy);
  });
  return d;
}

// ĝ^{ijk}_y(x) = y ▷_{1,zk} (ξ∘x), the map that the brace bullet is meant to
// satisfy the right merge condition with.
inline TripleFamily brace_bullet_ghat(const SkewBrace& br, const ParamSubset& y, Elem xi) {
  return TripleFamily::tabulate(br.size(), y.size(), [&](std::size_t, std::size_t, std::size_t k, Elem yy, Elem x) {
    return brace_triangle(br, xi, br.one(), y[k], yy, br.times(xi, x));
  });
}

}  // namespace parayb
