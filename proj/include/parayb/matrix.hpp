#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace parayb {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer: 64-bit while it fits, arbitrary precision after the first
// overflow.
class Int {
 public:
  Int(std::int64_t v = 0) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Int(const BigInt& b) { assign(b); }

  bool is_small() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_zero() const { return is_small() ? small() == 0 : big() == 0; }
  BigInt to_big() const { return is_small() ? BigInt(small()) : big(); }
  std::string str() const { return is_small() ? std::to_string(small()) : big().str(); }

  friend Int operator+(const Int& a, const Int& b) {
    std::int64_t r;
    if (a.is_small() && b.is_small() && !__builtin_add_overflow(a.small(), b.small(), &r)) return Int(r);
    return Int(a.to_big() + b.to_big());
  }
  friend Int operator-(const Int& a, const Int& b) {
    std::int64_t r;
    if (a.is_small() && b.is_small() && !__builtin_sub_overflow(a.small(), b.small(), &r)) return Int(r);
    return Int(a.to_big() - b.to_big());
  }
  friend Int operator*(const Int& a, const Int& b) {
    std::int64_t r;
    if (a.is_small() && b.is_small() && !__builtin_mul_overflow(a.small(), b.small(), &r)) return Int(r);
    return Int(a.to_big() * b.to_big());
  }
  Int& operator+=(const Int& o) { return *this = *this + o; }
  friend bool operator==(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) return a.small() == b.small();
    return a.to_big() == b.to_big();
  }
  friend std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

 private:
  std::int64_t small() const { return std::get<std::int64_t>(v_); }
  const BigInt& big() const { return std::get<BigInt>(v_); }
  void assign(const BigInt& b) {
    if (b >= std::numeric_limits<std::int64_t>::min() && b <= std::numeric_limits<std::int64_t>::max())
      v_ = static_cast<std::int64_t>(b);
    else
      v_ = b;
  }
  std::variant<std::int64_t, BigInt> v_;
};

// Compressed sparse rows with exact entries. Zero entries are never stored,
// so structural equality is value equality.
class IntMatrix {
 public:
  struct Entry {
    std::size_t row, col;
    Int value;
  };

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), ptr_(rows + 1, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m.col_.push_back(static_cast<std::uint32_t>(i));
      m.val_.emplace_back(1);
      m.ptr_[i + 1] = i + 1;
    }
    return m;
  }

  // Duplicate coordinates are summed.
  static IntMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
    IntMatrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size();) {
      const auto& e = entries[k];
      if (e.row >= rows || e.col >= cols) throw DimensionMismatch("matrix entry out of range");
      Int sum = 0;
      std::size_t l = k;
      for (; l < entries.size() && entries[l].row == e.row && entries[l].col == e.col; ++l) sum += entries[l].value;
      if (!sum.is_zero()) {
        m.col_.push_back(static_cast<std::uint32_t>(e.col));
        m.val_.push_back(sum);
        ++m.ptr_[e.row + 1];
      }
      k = l;
    }
    for (std::size_t r = 0; r < rows; ++r) m.ptr_[r + 1] += m.ptr_[r];
    return m;
  }

  // e_{r,c}: the matrix unit with a single 1.
  static IntMatrix unit(std::size_t n, std::size_t r, std::size_t c) {
    return from_entries(n, n, {{r, c, 1}});
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return val_.size(); }

  template <class F>
  void for_each(F f) const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = ptr_[r]; k < ptr_[r + 1]; ++k) f(r, static_cast<std::size_t>(col_[k]), val_[k]);
  }

  template <class F>
  void for_row(std::size_t r, F f) const {
    for (std::size_t k = ptr_[r]; k < ptr_[r + 1]; ++k) f(static_cast<std::size_t>(col_[k]), val_[k]);
  }

  Int get(std::size_t r, std::size_t c) const {
    auto first = col_.begin() + static_cast<std::ptrdiff_t>(ptr_[r]);
    auto last = col_.begin() + static_cast<std::ptrdiff_t>(ptr_[r + 1]);
    auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(c));
    if (it == last || *it != c) return 0;
    return val_[static_cast<std::size_t>(it - col_.begin())];
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(nnz());
    for_each([&](std::size_t r, std::size_t c, const Int& v) { out.push_back({r, c, v}); });
    return out;
  }

  IntMatrix transpose() const {
    std::vector<Entry> e;
    e.reserve(nnz());
    for_each([&](std::size_t r, std::size_t c, const Int& v) { e.push_back({c, r, v}); });
    return from_entries(cols_, rows_, std::move(e));
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ptr_ == b.ptr_ && a.col_ == b.col_ && a.val_ == b.val_;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("adding matrices of different shapes");
    auto e = a.entries();
    auto f = b.entries();
    e.insert(e.end(), f.begin(), f.end());
    return from_entries(a.rows_, a.cols_, std::move(e));
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("subtracting matrices of different shapes");
    auto e = a.entries();
    b.for_each([&](std::size_t r, std::size_t c, const Int& v) { e.push_back({r, c, Int(0) - v}); });
    return from_entries(a.rows_, a.cols_, std::move(e));
  }

  // Row-by-row product with a dense accumulator.
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("multiplying matrices of incompatible shapes");
    IntMatrix out(a.rows_, b.cols_);
    std::vector<Int> acc(b.cols_);
    std::vector<char> seen(b.cols_, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t r = 0; r < a.rows_; ++r) {
      touched.clear();
      for (std::size_t k = a.ptr_[r]; k < a.ptr_[r + 1]; ++k) {
        const std::size_t mid = a.col_[k];
        const Int& av = a.val_[k];
        for (std::size_t l = b.ptr_[mid]; l < b.ptr_[mid + 1]; ++l) {
          const auto c = b.col_[l];
          if (!seen[c]) {
            seen[c] = 1;
            acc[c] = 0;
            touched.push_back(c);
          }
          acc[c] += av * b.val_[l];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (auto c : touched) {
        seen[c] = 0;
        if (acc[c].is_zero()) continue;
        out.col_.push_back(c);
        out.val_.push_back(acc[c]);
      }
      out.ptr_[r + 1] = out.col_.size();
    }
    return out;
  }

  IntMatrix& operator*=(const IntMatrix& o) { return *this = *this * o; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> ptr_{0};
  std::vector<std::uint32_t> col_;
  std::vector<Int> val_;
};

inline IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  std::vector<IntMatrix::Entry> e;
  e.reserve(a.nnz() * b.nnz());
  a.for_each([&](std::size_t r, std::size_t c, const Int& v) {
    b.for_each([&](std::size_t r2, std::size_t c2, const Int& w) {
      e.push_back({r * b.rows() + r2, c * b.cols() + c2, v * w});
    });
  });
  return IntMatrix::from_entries(a.rows() * b.rows(), a.cols() * b.cols(), std::move(e));
}

inline IntMatrix kron(const std::vector<IntMatrix>& factors) {
  IntMatrix out = IntMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Places an operator on the given legs of (C^n)^{⊗k}; its t-th tensor factor
// sits on legs[t]. Leg 0 is the most significant digit of an index.
inline IntMatrix embed(const IntMatrix& op, std::size_t n, std::size_t k, const std::vector<std::size_t>& legs) {
  const std::size_t r = legs.size();
  if (op.rows() != ipow(n, r) || op.cols() != op.rows()) throw DimensionMismatch("operator does not match its legs");
  for (auto l : legs)
    if (l >= k) throw DimensionMismatch("leg out of range");
  const std::size_t dim = ipow(n, k);
  std::vector<std::size_t> weight(k);
  for (std::size_t l = 0; l < k; ++l) weight[l] = ipow(n, k - 1 - l);
  std::vector<IntMatrix::Entry> e;
  e.reserve(dim * (op.nnz() / std::max<std::size_t>(1, op.rows()) + 1));
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t sub = 0, base = row;
    for (std::size_t t = 0; t < r; ++t) {
      std::size_t d = row / weight[legs[t]] % n;
      sub = sub * n + d;
      base -= d * weight[legs[t]];
    }
    op.for_row(sub, [&](std::size_t c, const Int& v) {
      std::size_t col = base, rest = c;
      for (std::size_t t = r; t-- > 0;) {
        col += rest % n * weight[legs[t]];
        rest /= n;
      }
      e.push_back({row, col, v});
    });
  }
  return IntMatrix::from_entries(dim, dim, std::move(e));
}

// The flip of two tensor legs, as a permutation matrix on (C^n)^{⊗2}.
inline IntMatrix flip(std::size_t n) {
  std::vector<IntMatrix::Entry> e;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) e.push_back({x * n + y, y * n + x, 1});
  return IntMatrix::from_entries(n * n, n * n, std::move(e));
}

// Coordinate dump: a header "n k" (carrier size, number of legs) followed by
// one "row col value" line per nonzero entry.
inline void write_coo(std::ostream& os, const IntMatrix& m, std::size_t n, std::size_t k) {
  os << n << ' ' << k << '\n';
  m.for_each([&](std::size_t r, std::size_t c, const Int& v) { os << r << ' ' << c << ' ' << v << '\n'; });
}

}  // namespace parayb
