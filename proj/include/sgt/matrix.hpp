#pragma once
// matrix.hpp -- exact integer matrices and fraction-free determinants

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "errors.hpp"

namespace sgt {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n)) {
    if (n < 0) throw input_error("matrix dimension must be non-negative");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int dim() const { return n_; }
  BigInt& at(int i, int j) { return a_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)]; }
  const BigInt& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)];
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.n_ != y.n_) throw input_error("matrix dimension mismatch");
    IntMatrix r(x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int k = 0; k < x.n_; ++k) {
        const BigInt& v = x.at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < x.n_; ++j) r.at(i, j) += v * y.at(k, j);
      }
    return r;
  }

  IntMatrix pow(unsigned e) const {
    IntMatrix r = identity(n_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<BigInt> a_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& m) {
  int n = m.dim();
  if (n == 0) return 1;
  IntMatrix w = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      int r = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          r = i;
          break;
        }
      if (r < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(r, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Reduction mod p, stored densely as longs.
struct MatrixModP {
  int n = 0;
  long p = 0;
  std::vector<long> a;

  long& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; }
  long at(int i, int j) const {
    return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
  }

  static MatrixModP reduce(const IntMatrix& m, long p) {
    MatrixModP r{m.dim(), p, std::vector<long>(static_cast<size_t>(m.dim()) * static_cast<size_t>(m.dim()))};
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) {
        BigInt v = m.at(i, j) % p;
        if (v < 0) v += p;
        r.at(i, j) = v.convert_to<long>();
      }
    return r;
  }

  static MatrixModP identity(int n, long p) {
    MatrixModP r{n, p, std::vector<long>(static_cast<size_t>(n) * static_cast<size_t>(n))};
    for (int i = 0; i < n; ++i) r.at(i, i) = 1 % p;
    return r;
  }

  friend MatrixModP operator*(const MatrixModP& x, const MatrixModP& y) {
    MatrixModP r{x.n, x.p, std::vector<long>(x.a.size())};
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        long v = x.at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < x.n; ++j) r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % x.p;
      }
    return r;
  }

  friend bool operator==(const MatrixModP&, const MatrixModP&) = default;
};

// Multiplicative order of m mod p; requires m invertible mod p.
inline long matrix_order_mod(const IntMatrix& m, long p, long cap = 1000000) {
  MatrixModP base = MatrixModP::reduce(m, p);
  MatrixModP id = MatrixModP::identity(m.dim(), p);
  MatrixModP acc = base;
  for (long k = 1; k <= cap; ++k) {
    if (acc == id) return k;
    acc = acc * base;
  }
  throw internal_error("matrix order mod p exceeds iteration cap");
}

}  // namespace sgt
