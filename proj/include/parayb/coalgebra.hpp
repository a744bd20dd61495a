#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "matrix.hpp"
#include "tensor.hpp"
#include "verdict.hpp"

namespace parayb {

// A bracketing of the legs lo..hi (0-based).
struct Tree {
  std::size_t lo = 0, hi = 0;
  std::shared_ptr<const Tree> left, right;
  bool leaf() const { return !left; }
};
using TreePtr = std::shared_ptr<const Tree>;

inline TreePtr leaf_tree(std::size_t k) { return std::make_shared<const Tree>(Tree{k, k, nullptr, nullptr}); }
inline TreePtr join(TreePtr l, TreePtr r) { return std::make_shared<const Tree>(Tree{l->lo, r->hi, l, r}); }

// The trees reached by splitting off either the last or the first leg at every
// block of three or more legs: 2^{k-2} of them for k >= 2 legs.
inline std::vector<TreePtr> trees_between(std::size_t lo, std::size_t hi) {
  if (lo == hi) return {leaf_tree(lo)};
  if (hi == lo + 1) return {join(leaf_tree(lo), leaf_tree(hi))};
  std::vector<TreePtr> out;
  for (auto& t : trees_between(lo, hi - 1)) out.push_back(join(t, leaf_tree(hi)));
  for (auto& t : trees_between(lo + 1, hi)) out.push_back(join(leaf_tree(lo), t));
  return out;
}

inline std::vector<TreePtr> coproduct_trees(std::size_t arity) {
  if (arity == 0) throw InputError("arity must be positive");
  return trees_between(0, arity - 1);
}

inline TreePtr right_comb(std::size_t arity) {
  TreePtr t = leaf_tree(arity - 1);
  for (std::size_t k = arity - 1; k-- > 0;) t = join(leaf_tree(k), t);
  return t;
}

// Strict labels: a block's outgoing parameter is that of its last leg.
// Weak labels: any block of two or more legs leaves through z_o.
struct Coherence {
  bool weak = false;
  std::size_t zo = 0;    // position in Y
  std::size_t zhat = 0;  // position in Y
};

// Parameter labels (by leg, or the sentinel "o") of an inner node.
struct NodeLabel {
  long left, right;  // leg index, or -1 for z_o
};

inline long out_param(const Tree& t, bool weak) {
  if (t.leaf()) return static_cast<long>(t.lo);
  return weak ? -1 : static_cast<long>(t.hi);
}

inline NodeLabel node_label(const Tree& t, bool weak) {
  return {out_param(*t.left, weak), out_param(*t.right, weak)};
}

// One digraph per tree; inner nodes are labelled by their parameter pair.
inline std::string render_trees(const std::vector<TreePtr>& trees, bool weak = false) {
  std::ostringstream os;
  auto name = [](long p) { return p < 0 ? std::string("o") : std::to_string(p + 1); };
  for (std::size_t k = 0; k < trees.size(); ++k) {
    os << "digraph coproduct_" << k + 1 << " {\n";
    int next = 0;
    std::function<int(const Tree&)> emit = [&](const Tree& t) -> int {
      int id = next++;
      if (t.leaf()) {
        os << "  n" << id << " [label=\"" << t.lo + 1 << "\", shape=plaintext];\n";
        return id;
      }
      auto lab = node_label(t, weak);
      os << "  n" << id << " [label=\"z" << name(lab.left) << name(lab.right) << "\"];\n";
      int l = emit(*t.left);
      int r = emit(*t.right);
      os << "  n" << id << " -> n" << l << ";\n";
      os << "  n" << id << " -> n" << r << ";\n";
      return id;
    };
    emit(*trees[k]);
    os << "}\n";
  }
  return os.str();
}

enum class Generator { q, w, h_bullet, h_shelf };

struct CoproductSpec {
  Generator gen = Generator::q;
  Elem a = 0;
  std::size_t zi = 0;              // first parameter of q^{zi, .} or w^{zi, .}
  std::vector<std::size_t> z;      // one parameter per leg
  TreePtr tree;                    // defaults to the right comb
  const ParamFamily* bullet = nullptr;
  Coherence coherence;
};

namespace detail {

// Evaluates the product a_lo ... a_hi bracketed by the tree.
template <class Op>
Elem tree_product(const Tree& t, const std::vector<Elem>& a, const std::vector<std::size_t>& z, const Coherence& coh,
                  Op op) {
  if (t.leaf()) return a[t.lo];
  auto lab = node_label(t, coh.weak);
  auto param = [&](long p) { return p < 0 ? coh.zo : z[static_cast<std::size_t>(p)]; };
  return op(param(lab.left), param(lab.right), tree_product(*t.left, a, z, coh, op),
            tree_product(*t.right, a, z, coh, op));
}

}  // namespace detail

// Π(a_1, ..., a_k) bracketed by the tree; the right comb gives
// a_1 •_{1k} (a_2 •_{2k} (... (a_{k-1} •_{k-1,k} a_k))) in the strict case.
inline Elem pi_product(const ParamFamily& bullet, const std::vector<std::size_t>& z, const std::vector<Elem>& a,
                       TreePtr tree = nullptr, Coherence coh = {}) {
  if (a.empty() || a.size() != z.size()) throw DimensionMismatch("need one parameter per factor");
  if (!tree) tree = right_comb(a.size());
  if (tree->lo != 0 || tree->hi != a.size() - 1) throw DimensionMismatch("tree does not match the number of factors");
  return detail::tree_product(*tree, a, z, coh,
                              [&](std::size_t i, std::size_t j, Elem x, Elem y) { return bullet.at(i, j, x, y); });
}

// Strict: (b▷_{ij}a) •_{jk} (b▷_{ik}c) = b▷_{ik}(a •_{jk} c) and
//         (a •_{ij} b) •_{jk} c = a •_{ik} (b •_{jk} c).
// Weak: the first with b▷_{iô} on the right, the second as
//         (a •_{ij} b) •_{ok} c = a •_{io} (b •_{jk} c).
inline Verdict check_compatibilities(const ParamFamily& bullet, const ParamFamily& shelf, Coherence coh = {}) {
  if (!bullet.same_shape(shelf)) throw DimensionMismatch("bullet and shelf differ in shape");
  const auto n = shelf.n(), m = shelf.m();
  if (coh.weak && (coh.zo >= m || coh.zhat >= m)) throw InputError("z_o and z_ô must be positions in Y");
  const auto& y = shelf.params();
  const std::string name = coh.weak ? "weak-compatibility" : "compatibility";
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
              std::vector<std::pair<std::string, std::uint64_t>> at{{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"a", a}, {"b", b}, {"c", c}};
              const std::size_t hat = coh.weak ? coh.zhat : k;
              if (bullet.at(j, k, shelf.at(i, j, b, a), shelf.at(i, k, b, c)) != shelf.at(i, hat, b, bullet.at(j, k, a, c)))
                return Verdict::fail(name, {"shelf-bullet", at, ""});
              const std::size_t left = coh.weak ? coh.zo : j, right = coh.weak ? coh.zo : k;
              if (bullet.at(left, k, bullet.at(i, j, a, b), c) != bullet.at(i, right, a, bullet.at(j, k, b, c)))
                return Verdict::fail(name, {"associativity", at, ""});
            }
  return Verdict::pass(name);
}

// Δ^{(k)} of a generator in the fundamental representation, expanded along
// a tree. For q and w each node with labels (l, r) sends x^{zi, .} to
// x^{zi, l} ⊗ x^{zi, r}; for h it sums h_b ⊗ h_c over b • c = a (or b ▷ c = a).
inline IntMatrix coproduct_in_rep(const RepBundle& b, const CoproductSpec& spec) {
  const std::size_t k = spec.z.size(), n = b.n;
  if (k == 0) throw InputError("a coproduct needs at least one leg");
  for (auto p : spec.z)
    if (p >= b.m) throw InputError("parameter position out of range");
  TreePtr tree = spec.tree ? spec.tree : right_comb(k);
  if (tree->lo != 0 || tree->hi != k - 1) throw DimensionMismatch("tree does not match the number of legs");

  if (spec.gen == Generator::q || spec.gen == Generator::w) {
    if (spec.gen == Generator::w && !b.decorated()) throw MissingConstraintOp("w needs a twist σ");
    std::function<IntMatrix(const Tree&, long)> go = [&](const Tree& t, long param) -> IntMatrix {
      if (t.leaf()) {
        std::size_t p = param < 0 ? spec.coherence.zo : spec.z[static_cast<std::size_t>(param)];
        return spec.gen == Generator::q ? b.q(spec.zi, p, spec.a) : b.w(spec.zi, p, spec.a);
      }
      auto lab = node_label(t, spec.coherence.weak);
      return kron(go(*t.left, lab.left), go(*t.right, lab.right));
    };
    return go(*tree, out_param(*tree, spec.coherence.weak));
  }

  const ParamFamily* op = nullptr;
  if (spec.gen == Generator::h_bullet) {
    if (!spec.bullet) throw MissingConstraintOp("the bullet coproduct of h needs a bullet family");
    if (!spec.bullet->same_shape(b.shelf)) throw DimensionMismatch("bullet does not match the bundle");
    op = spec.bullet;
  } else {
    op = &b.shelf;
  }
  const std::size_t dim = ipow(n, k);
  std::vector<IntMatrix::Entry> e;
  std::vector<Elem> a(k);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    for (std::size_t t = k, r = idx; t-- > 0; r /= n) a[t] = static_cast<Elem>(r % n);
    Elem v = detail::tree_product(*tree, a, spec.z, spec.coherence,
                                  [&](std::size_t i, std::size_t j, Elem x, Elem y) { return op->at(i, j, x, y); });
    if (v == spec.a) e.push_back({idx, idx, 1});
  }
  return IntMatrix::from_entries(dim, dim, std::move(e));
}

struct CoassocReport {
  Verdict asserted;
  // For the shelf-constrained h only the right comb is meaningful; the other
  // trees are compared against it for information.
  std::vector<bool> tree_agrees;
};

inline CoassocReport check_coassociativity(const RepBundle& b, std::size_t arity, Generator gen,
                                           const ParamFamily* bullet = nullptr, Coherence coh = {}) {
  const auto trees = coproduct_trees(arity);
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  const bool indexed = gen == Generator::q || gen == Generator::w;
  CoassocReport rep{Verdict::pass("coassociativity"), std::vector<bool>(trees.size(), true)};
  std::vector<std::uint32_t> radix(arity, static_cast<std::uint32_t>(m));
  for (std::uint64_t idx = 0; idx < space_size(radix); ++idx) {
    auto d = digits(idx, radix);
    CoproductSpec spec{gen, 0, 0, std::vector<std::size_t>(d.begin(), d.end()), nullptr, bullet, coh};
    for (std::size_t zi = 0; zi < (indexed ? m : 1); ++zi)
      for (Elem a = 0; a < n; ++a) {
        spec.zi = zi;
        spec.a = a;
        spec.tree = gen == Generator::h_shelf ? right_comb(arity) : trees.front();
        const auto ref = coproduct_in_rep(b, spec);
        for (std::size_t t = 0; t < trees.size(); ++t) {
          spec.tree = trees[t];
          if (coproduct_in_rep(b, spec) == ref) continue;
          rep.tree_agrees[t] = false;
          if (gen != Generator::h_shelf && rep.asserted.ok) {
            std::vector<std::pair<std::string, std::uint64_t>> at{{"tree", t + 1}, {"a", a}};
            if (indexed) at.push_back({"z_i", y[zi]});
            for (std::size_t l = 0; l < arity; ++l) at.push_back({"z_" + std::to_string(l + 1), y[d[l]]});
            rep.asserted = Verdict::fail("coassociativity", {"trees differ", at, ""});
            return rep;
          }
        }
      }
  }
  return rep;
}

enum class IntertwineVariant { shelf, bullet, twisted };

// shelf:   R^{jk} commutes with q_a^{ij} ⊗ q_a^{ik} and w_a^{ij} ⊗ w_a^{ik}.
// bullet:  Δ^{op}_{ji}(y) R^{ij} = R^{ij} Δ_{ij}(y) for y = h_a, q_a^{kj}, w_a^{kj}.
// twisted: the same with R^F and the twisted coproducts F Δ(y) F^{-1}.
inline Verdict check_intertwining(const RepBundle& b, IntertwineVariant variant, const ParamFamily* bullet = nullptr) {
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  const std::string name = "intertwining";
  if (variant != IntertwineVariant::shelf && !bullet) throw MissingConstraintOp("this variant needs a bullet family");
  if (variant == IntertwineVariant::twisted && !b.decorated()) throw MissingConstraintOp("the twist needs σ");
  const auto p = flip(n);
  auto hcop = [&](std::size_t i, std::size_t j, Elem a) {
    return coproduct_in_rep(b, {Generator::h_bullet, a, 0, {i, j}, nullptr, bullet, {}});
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto r = variant == IntertwineVariant::twisted ? twisted_r(b, i, j) : universal_r(b, i, j);
      IntMatrix f, finv, fji, fji_inv;
      if (variant == IntertwineVariant::twisted) {
        f = twist_f(b, i, j);
        finv = twist_f_inverse(b, i, j);
        fji = twist_f(b, j, i);
        fji_inv = twist_f_inverse(b, j, i);
      }
      auto check = [&](const IntMatrix& d_ij, const IntMatrix& d_ji) {
        if (variant == IntertwineVariant::twisted)
          return p * (fji * d_ji * fji_inv) * p * r == r * (f * d_ij * finv);
        return p * d_ji * p * r == r * d_ij;
      };
      for (std::size_t k = 0; k < m; ++k)
        for (Elem a = 0; a < n; ++a) {
          std::vector<std::pair<std::string, std::uint64_t>> at{{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"a", a}};
          if (variant == IntertwineVariant::shelf) {
            // here (i, j) plays the role of (j, k) and k that of i
            auto dq = kron(b.q(k, i, a), b.q(k, j, a));
            if (!(r * dq == dq * r)) return Verdict::fail(name, {"q", at, ""});
            if (b.decorated()) {
              auto dw = kron(b.w(k, i, a), b.w(k, j, a));
              if (!(r * dw == dw * r)) return Verdict::fail(name, {"w", at, ""});
            }
            continue;
          }
          if (k == 0 && !check(hcop(i, j, a), hcop(j, i, a))) return Verdict::fail(name, {"h", at, ""});
          if (!check(kron(b.q(k, i, a), b.q(k, j, a)), kron(b.q(k, j, a), b.q(k, i, a))))
            return Verdict::fail(name, {"q", at, ""});
          if (b.decorated() && !check(kron(b.w(k, i, a), b.w(k, j, a)), kron(b.w(k, j, a), b.w(k, i, a))))
            return Verdict::fail(name, {"w", at, ""});
        }
    }
  return Verdict::pass(name);
}

// The algebra relations with every generator replaced by its k-fold
// coproduct along the right comb. The h-q exchange uses z_k (strict) or
// ẑ (weak) as the parameter of ▷. The w-h exchange is only checked for k = 2.
inline Verdict check_homomorphism(const RepBundle& b, std::size_t arity, Generator hgen,
                                  const ParamFamily* bullet = nullptr, Coherence coh = {}) {
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  const std::string name = "coproduct-homomorphism";
  std::vector<std::uint32_t> radix(arity, static_cast<std::uint32_t>(m));
  const auto id = IntMatrix::identity(ipow(n, arity));
  for (std::uint64_t idx = 0; idx < space_size(radix); ++idx) {
    auto d = digits(idx, radix);
    std::vector<std::size_t> z(d.begin(), d.end());
    std::vector<std::pair<std::string, std::uint64_t>> zs;
    for (std::size_t l = 0; l < arity; ++l) zs.push_back({"z_" + std::to_string(l + 1), y[z[l]]});
    auto D = [&](Generator g, std::size_t zi, Elem a) {
      return coproduct_in_rep(b, {g, a, zi, z, nullptr, bullet, coh});
    };
    auto fail = [&](const char* rel, std::vector<std::pair<std::string, std::uint64_t>> extra) {
      extra.insert(extra.end(), zs.begin(), zs.end());
      return Verdict::fail(name, {rel, std::move(extra), ""});
    };
    std::vector<IntMatrix> dh;
    IntMatrix sum(id.rows(), id.cols());
    for (Elem a = 0; a < n; ++a) {
      dh.push_back(D(hgen, 0, a));
      sum = sum + dh.back();
    }
    if (!(sum == id)) return fail("h-partition", {});
    for (Elem a = 0; a < n; ++a)
      for (Elem c = 0; c < n; ++c)
        if (!(dh[a] * dh[c] == (a == c ? dh[a] : IntMatrix(id.rows(), id.cols())))) return fail("h-idempotent", {{"a", a}, {"b", c}});
    const std::size_t target = coh.weak ? coh.zhat : z.back();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Elem a = 0; a < n; ++a)
          for (Elem c = 0; c < n; ++c) {
            std::vector<std::pair<std::string, std::uint64_t>> at{{"z_i", y[i]}, {"z_j", y[j]}, {"a", a}, {"b", c}};
            if (!(D(Generator::q, j, a) * D(Generator::q, i, c) == D(Generator::q, i, c) * D(Generator::q, j, b.tri(i, j, c, a))))
              return fail("q-q", at);
            if (j == 0 && !(dh[a] * D(Generator::q, i, c) == D(Generator::q, i, c) * dh[b.tri(i, target, c, a)]))
              return fail("h-q", at);
          }
    if (!b.decorated() || !b.tau) continue;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem a = 0; a < n; ++a)
          for (Elem c = 0; c < n; ++c) {
            std::vector<std::pair<std::string, std::uint64_t>> at{{"z_j", y[j]}, {"z_k", y[k]}, {"a", a}, {"b", c}};
            if (!(D(Generator::w, k, a) * D(Generator::w, j, c) ==
                  D(Generator::w, j, b.sig(j, k, a, c)) * D(Generator::w, k, b.tau->at(j, k, c, a))))
              return fail("w-w", at);
            // here j plays the role of i in w_a^{kj} q_b^{ij} = q^{ij}_{σ^{ik}_a(b)} w_a^{kj}
            if (!(D(Generator::w, k, a) * D(Generator::q, j, c) == D(Generator::q, j, b.sig(j, k, a, c)) * D(Generator::w, k, a)))
              return fail("w-q", at);
            if (arity == 2 && j == 0 &&
                !(D(Generator::w, k, a) * dh[c] == dh[b.sig(z.back(), k, a, c)] * D(Generator::w, k, a)))
              return fail("w-h", at);
          }
  }
  return Verdict::pass(name);
}

enum class TransferMode { assert_hypothesis, report };

struct TransferReport {
  bool hypothesis = false;
  std::optional<Counterexample> hypothesis_failure;
  Verdict commutators, head_factorization, tail_factorization;
};

// Transfer matrices and T-operators. The hypothesis: the restricted
// condition, (b▷_{ij}a)•_{jk}(b▷_{ik}c) = b▷_{ik}(a•_{jk}c),
// (a•_{ij}b)•_{jk}c = a•_{ik}(b•_{jk}c) and q^{jk}_a q^{ik}_b = q^{ik}_{a•_{ji}b}.
// In assert mode a failed hypothesis raises HypothesisFailed; in report mode
// the identities are still evaluated.
inline TransferReport transfer_and_t(const RepBundle& b, const ParamFamily& bullet, std::size_t arity,
                                     TransferMode mode = TransferMode::assert_hypothesis) {
  if (!bullet.same_shape(b.shelf)) throw DimensionMismatch("bullet does not match the bundle");
  if (arity < 1) throw InputError("arity must be positive");
  const auto n = b.n, m = b.m;
  const auto& y = b.params();
  TransferReport rep{true, std::nullopt, Verdict::pass("t-commutators"), Verdict::pass("t-head"), Verdict::pass("t-tail")};

  auto note = [&](const char* rel, std::vector<std::pair<std::string, std::uint64_t>> at) {
    if (rep.hypothesis) rep.hypothesis_failure = Counterexample{rel, std::move(at), ""};
    rep.hypothesis = false;
  };
  if (auto v = check_restricted(bullet, b.shelf); !v.ok) note("restricted", v.counterexample->at);
  if (auto v = check_compatibilities(bullet, b.shelf); !v.ok) note(v.counterexample->relation.c_str(), v.counterexample->at);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (Elem a = 0; a < n; ++a)
          for (Elem c = 0; c < n; ++c)
            for (Elem x = 0; x < n; ++x)
              if (b.tri(i, k, c, b.tri(j, k, a, x)) != b.tri(i, k, bullet.at(j, i, a, c), x))
                note("q-product", {{"z_i", y[i]}, {"z_j", y[j]}, {"z_k", y[k]}, {"a", a}, {"b", c}, {"c", x}});
  if (!rep.hypothesis && mode == TransferMode::assert_hypothesis)
    throw HypothesisFailed("transfer hypothesis fails: " + describe(*rep.hypothesis_failure));

  // [t^{j; k1..kr}, t^{i; k1..kr}] = 0 for r <= arity.
  for (std::size_t r = 1; r <= arity && rep.commutators.ok; ++r) {
    std::vector<std::uint32_t> radix(r, static_cast<std::uint32_t>(m));
    for (std::uint64_t idx = 0; idx < space_size(radix) && rep.commutators.ok; ++idx) {
      auto d = digits(idx, radix);
      std::vector<std::size_t> ks(d.begin(), d.end());
      auto t = [&](std::size_t i) {
        IntMatrix s(ipow(n, r), ipow(n, r));
        for (Elem a = 0; a < n; ++a) s = s + coproduct_in_rep(b, {Generator::q, a, i, ks, nullptr, nullptr, {}});
        return s;
      };
      for (std::size_t i = 0; i < m && rep.commutators.ok; ++i)
        for (std::size_t j = 0; j < m && rep.commutators.ok; ++j) {
          auto ti = t(i), tj = t(j);
          if (!(tj * ti == ti * tj)) {
            std::vector<std::pair<std::string, std::uint64_t>> at{{"z_i", y[i]}, {"z_j", y[j]}};
            for (std::size_t l = 0; l < r; ++l) at.push_back({"z_k" + std::to_string(l + 1), y[ks[l]]});
            rep.commutators = Verdict::fail("t-commutators", {"commutator", at, ""});
          }
        }
    }
  }

  // T_{1,2..n+1} = R_{1,n+1} ... R_{12} and T_{12..n,n+1} = R_{1,n+1} ... R_{n,n+1}.
  const std::size_t legs = arity + 1;
  std::vector<std::uint32_t> radix(legs, static_cast<std::uint32_t>(m));
  for (std::uint64_t idx = 0; idx < space_size(radix); ++idx) {
    auto d = digits(idx, radix);
    std::vector<std::size_t> z(d.begin(), d.end());
    std::vector<std::pair<std::string, std::uint64_t>> at;
    for (std::size_t l = 0; l < legs; ++l) at.push_back({"z_" + std::to_string(l + 1), y[z[l]]});
    if (rep.head_factorization.ok) {
      auto prod = IntMatrix::identity(ipow(n, legs));
      for (std::size_t t = legs - 1; t >= 1; --t) prod = prod * embed(universal_r(b, z[0], z[t]), n, legs, {0, t});
      IntMatrix expect(ipow(n, legs), ipow(n, legs));
      std::vector<std::size_t> tail(z.begin() + 1, z.end());
      for (Elem a = 0; a < n; ++a)
        expect = expect + kron(b.h(a), coproduct_in_rep(b, {Generator::q, a, z[0], tail, nullptr, nullptr, {}}));
      if (!(prod == expect)) rep.head_factorization = Verdict::fail("t-head", {"factorization", at, ""});
    }
    if (rep.tail_factorization.ok) {
      auto prod = IntMatrix::identity(ipow(n, legs));
      for (std::size_t t = 0; t + 1 < legs; ++t) prod = prod * embed(universal_r(b, z[t], z[legs - 1]), n, legs, {t, legs - 1});
      IntMatrix expect(ipow(n, legs), ipow(n, legs));
      std::vector<std::size_t> head(z.begin(), z.end() - 1);
      for (Elem a = 0; a < n; ++a)
        expect = expect + kron(coproduct_in_rep(b, {Generator::h_bullet, a, 0, head, nullptr, &bullet, {}}),
                               b.q(z[legs - 2], z[legs - 1], a));
      if (!(prod == expect)) rep.tail_factorization = Verdict::fail("t-tail", {"factorization", at, ""});
    }
  }
  return rep;
}

}  // namespace parayb
