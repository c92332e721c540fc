#pragma once

#include <functional>
#include <vector>

#include "mincrit/errors.hpp"
#include "mincrit/ring.hpp"

namespace mincrit {

// Dense square matrix, row-major.
template <class K>
class Matrix {
 public:
  Matrix() : n_(0) {}
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, Ring<K>::zero()) {}
  explicit Matrix(const std::vector<std::vector<K>>& rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) fail(ErrorKind::Parse, "matrix is not square");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Ring<K>::one();
    return m;
  }

  std::size_t size() const { return n_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<K>& data() const { return a_; }
  std::vector<K>& data() { return a_; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix out(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        if (Ring<K>::is_zero(x(i, k))) continue;
        for (std::size_t j = 0; j < x.n_; ++j) out(i, j) += x(i, k) * y(k, j);
      }
    return out;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

  Matrix transpose() const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  // Delete row i and column j.
  Matrix submatrix(std::size_t i, std::size_t j) const {
    Matrix out(n_ - 1);
    for (std::size_t r = 0, rr = 0; r < n_; ++r) {
      if (r == i) continue;
      for (std::size_t c = 0, cc = 0; c < n_; ++c) {
        if (c == j) continue;
        out(rr, cc++) = (*this)(r, c);
      }
      ++rr;
    }
    return out;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<K>()))> {
    using T = decltype(f(std::declval<K>()));
    Matrix<T> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

 private:
  std::size_t n_;
  std::vector<K> a_;
};

template <class K>
K determinant(Matrix<K> m) {
  static_assert(Ring<K>::field, "determinant needs a field");
  const std::size_t n = m.size();
  K det = Ring<K>::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (Ring<K>::better_pivot(m(r, c), m(piv, c))) piv = r;
    if (Ring<K>::is_zero(m(piv, c))) return Ring<K>::zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    K inv = Ring<K>::inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (Ring<K>::is_zero(m(r, c))) continue;
      K f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& src) {
  static_assert(Ring<K>::field, "inverse needs a field");
  const std::size_t n = src.size();
  Matrix<K> m = src;
  Matrix<K> out = Matrix<K>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (Ring<K>::better_pivot(m(r, c), m(piv, c))) piv = r;
    if (Ring<K>::is_zero(m(piv, c))) fail(ErrorKind::Domain, "singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(out(piv, j), out(c, j));
      }
    K inv = Ring<K>::inv(m(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= inv;
      out(c, j) *= inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || Ring<K>::is_zero(m(r, c))) continue;
      K f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        out(r, j) -= f * out(c, j);
      }
    }
  }
  return out;
}

// Minor M_{i,j}: determinant of the matrix with row i and column j removed.
template <class K>
K minor(const Matrix<K>& m, std::size_t i, std::size_t j) {
  if (m.size() == 1) return Ring<K>::one();
  return determinant(m.submatrix(i, j));
}

// adj(A) with A * adj(A) = det(A) I.
template <class K>
Matrix<K> adjugate(const Matrix<K>& m) {
  const std::size_t n = m.size();
  Matrix<K> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      K c = minor(m, j, i);
      out(i, j) = ((i + j) % 2 == 0) ? c : K(-c);
    }
  return out;
}

template <class K>
bool is_singular(const Matrix<K>& m) {
  return Ring<K>::is_zero(determinant(m));
}

using RatMatrix = Matrix<Rational>;

}  // namespace mincrit
