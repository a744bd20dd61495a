#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace parayb {

using Elem = std::uint32_t;

class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::size_t n, std::vector<std::string> labels = {})
      : n_(n), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n_)
      throw DimensionMismatch("carrier has " + std::to_string(n_) + " elements but " +
                              std::to_string(labels_.size()) + " labels");
  }

  std::size_t size() const { return n_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::string label(Elem x) const { return labels_.empty() ? std::to_string(x) : labels_.at(x); }

  std::optional<Elem> find(const std::string& label) const {
    if (labels_.empty()) {
      try {
        std::size_t used = 0;
        unsigned long v = std::stoul(label, &used);
        if (used == label.size() && v < n_) return static_cast<Elem>(v);
      } catch (const std::exception&) {
      }
      return std::nullopt;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<Elem>(it - labels_.begin());
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
};

// The parameter set Y, stored as carrier indices. Families are indexed by
// positions into this list, so z_i means elems[i].
struct ParamSubset {
  std::vector<Elem> elems;

  std::size_t size() const { return elems.size(); }
  Elem operator[](std::size_t i) const { return elems[i]; }

  std::optional<std::size_t> position(Elem z) const {
    auto it = std::find(elems.begin(), elems.end(), z);
    if (it == elems.end()) return std::nullopt;
    return static_cast<std::size_t>(it - elems.begin());
  }

  static ParamSubset whole(std::size_t n) {
    ParamSubset y;
    for (std::size_t i = 0; i < n; ++i) y.elems.push_back(static_cast<Elem>(i));
    return y;
  }

  void validate(std::size_t n) const {
    if (elems.empty()) throw InputError("parameter set is empty");
    auto sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("parameter set has repeated elements");
    if (sorted.back() >= n) throw InputError("parameter set is not a subset of the carrier");
  }
};

class EndoMap {
 public:
  EndoMap() = default;
  explicit EndoMap(std::vector<Elem> table) : t_(std::move(table)) {}

  static EndoMap identity(std::size_t n) {
    std::vector<Elem> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Elem>(i);
    return EndoMap(std::move(t));
  }

  std::size_t size() const { return t_.size(); }
  Elem operator()(Elem x) const { return t_[x]; }
  const std::vector<Elem>& table() const { return t_; }
  bool operator==(const EndoMap&) const = default;

  bool is_bijection() const {
    std::vector<char> hit(t_.size(), 0);
    for (Elem y : t_) {
      if (y >= t_.size() || hit[y]) return false;
      hit[y] = 1;
    }
    return true;
  }

  EndoMap invert() const {
    if (!is_bijection()) throw NotInvertible("map is not a bijection");
    std::vector<Elem> inv(t_.size());
    for (std::size_t x = 0; x < t_.size(); ++x) inv[t_[x]] = static_cast<Elem>(x);
    return EndoMap(std::move(inv));
  }

 private:
  std::vector<Elem> t_;
};

// f o g, that is x -> f(g(x)).
inline EndoMap compose(const EndoMap& f, const EndoMap& g) {
  if (f.size() != g.size()) throw DimensionMismatch("composing maps on different carriers");
  std::vector<Elem> t(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) t[x] = f(g(static_cast<Elem>(x)));
  return EndoMap(std::move(t));
}

// A map X -> End(X) for every ordered pair of parameters: at(i, j, a, x).
// Shelves read it as a ▷_{ij} x, twists as σ^{ij}_a(x), bullets as a •_{ij} x.
class ParamFamily {
 public:
  ParamFamily() = default;
  ParamFamily(Carrier carrier, ParamSubset y)
      : carrier_(std::move(carrier)), y_(std::move(y)),
        data_(y_.size() * y_.size() * carrier_.size() * carrier_.size(), 0) {
    y_.validate(carrier_.size());
  }

  template <class F>
  static ParamFamily tabulate(Carrier carrier, ParamSubset y, F f) {
    ParamFamily fam(std::move(carrier), std::move(y));
    const auto n = fam.n(), m = fam.m();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (Elem a = 0; a < n; ++a)
          for (Elem x = 0; x < n; ++x) fam.set(i, j, a, x, f(i, j, a, x));
    return fam;
  }

  const Carrier& carrier() const { return carrier_; }
  const ParamSubset& params() const { return y_; }
  std::size_t n() const { return carrier_.size(); }
  std::size_t m() const { return y_.size(); }

  Elem at(std::size_t i, std::size_t j, Elem a, Elem x) const { return data_[index(i, j, a, x)]; }
  void set(std::size_t i, std::size_t j, Elem a, Elem x, Elem v) { data_[index(i, j, a, x)] = v; }

  EndoMap map(std::size_t i, std::size_t j, Elem a) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(index(i, j, a, 0));
    return EndoMap(std::vector<Elem>(first, first + static_cast<std::ptrdiff_t>(n())));
  }

  const std::vector<Elem>& raw() const { return data_; }
  std::vector<Elem>& raw() { return data_; }

  bool same_shape(const ParamFamily& o) const { return n() == o.n() && y_.elems == o.y_.elems; }
  bool operator==(const ParamFamily& o) const { return same_shape(o) && data_ == o.data_; }

  void require_closed() const {
    for (Elem v : data_)
      if (v >= n()) throw InputError("family value " + std::to_string(v) + " outside the carrier");
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, Elem a, Elem x) const {
    return ((i * m() + j) * n() + a) * n() + x;
  }

  Carrier carrier_;
  ParamSubset y_;
  std::vector<Elem> data_;
};

// Maps indexed by a parameter triple: at(i, j, k, y, x) = f^{ijk}_y(x).
class TripleFamily {
 public:
  TripleFamily() = default;
  TripleFamily(std::size_t n, std::size_t m) : n_(n), m_(m), data_(m * m * m * n * n, 0) {}

  template <class F>
  static TripleFamily tabulate(std::size_t n, std::size_t m, F f) {
    TripleFamily t(n, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          for (Elem y = 0; y < n; ++y)
            for (Elem x = 0; x < n; ++x) t.set(i, j, k, y, x, f(i, j, k, y, x));
    return t;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  Elem at(std::size_t i, std::size_t j, std::size_t k, Elem y, Elem x) const {
    return data_[idx(i, j, k, y, x)];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, Elem y, Elem x, Elem v) {
    data_[idx(i, j, k, y, x)] = v;
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t k, Elem y, Elem x) const {
    return (((i * m_ + j) * m_ + k) * n_ + y) * n_ + x;
  }
  std::size_t n_ = 0, m_ = 0;
  std::vector<Elem> data_;
};

// R^{ij}(b, a) = (σ^{ij}_a(b), τ^{ij}_b(a)); sigma.at(i,j,a,b) and tau.at(i,j,b,a).
struct ParamYBMap {
  ParamFamily sigma;
  ParamFamily tau;

  std::size_t n() const { return sigma.n(); }
  std::size_t m() const { return sigma.m(); }
  const ParamSubset& params() const { return sigma.params(); }

  std::pair<Elem, Elem> apply(std::size_t i, std::size_t j, Elem b, Elem a) const {
    return {sigma.at(i, j, a, b), tau.at(i, j, b, a)};
  }

  void validate() const {
    if (!sigma.same_shape(tau)) throw DimensionMismatch("sigma and tau families differ in shape");
    sigma.require_closed();
    tau.require_closed();
  }

  bool operator==(const ParamYBMap&) const = default;
};

}  // namespace parayb
