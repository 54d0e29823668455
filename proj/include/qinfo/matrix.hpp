// Copyright 2026 The qinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QINFO_MATRIX_HPP
#define QINFO_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinfo {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major storage. All states, operators and
/// channels in this library are built on top of it. Sizes in scope stay at
/// or below 64x64 (6 qubits), so no sparse or blocked paths exist.
///
/// Entries are validated to be finite at construction boundaries; NaN/Inf
/// never enter a stored matrix through the public factory paths.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: entry count " +
                                  std::to_string(data_.size()) + " != " +
                                  std::to_string(rows_ * cols_));
    }
    check_finite();
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  /// Column vector from a list of entries.
  static ComplexMatrix column(std::vector<Complex> entries) {
    const std::size_t n = entries.size();
    return ComplexMatrix(n, 1, std::move(entries));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Complex& at(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("ComplexMatrix::at");
    return data_[r * cols_ + c];
  }
  const Complex& at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("ComplexMatrix::at");
    return data_[r * cols_ + c];
  }

  const std::vector<Complex>& entries() const { return data_; }
  std::vector<Complex>& entries() { return data_; }

  ComplexMatrix dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      m = std::max(m, std::abs(data_[i] - other.data_[i]));
    }
    return m;
  }

  bool approx_equal(const ComplexMatrix& other, double tol) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && max_abs_diff(other) <= tol;
  }

  bool is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = r; c < cols_; ++c) {
        if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
      }
    }
    return true;
  }

  bool is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    const ComplexMatrix p = dagger() * (*this);
    return p.max_abs_diff(identity(rows_)) <= tol;
  }

  ComplexMatrix operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
      throw std::invalid_argument("matrix add: shape mismatch");
    }
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
  }

  ComplexMatrix operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
      throw std::invalid_argument("matrix sub: shape mismatch");
    }
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
  }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
      throw std::invalid_argument("matmul: " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_) + " times " +
                                  std::to_string(rhs.rows_) + "x" +
                                  std::to_string(rhs.cols_));
    }
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Complex a = (*this)(r, k);
        if (a == Complex(0.0, 0.0)) continue;
        for (std::size_t c = 0; c < rhs.cols_; ++c) {
          out(r, c) += a * rhs(k, c);
        }
      }
    }
    return out;
  }

  ComplexMatrix operator*(const Complex& scalar) const {
    ComplexMatrix out = *this;
    for (Complex& z : out.data_) z *= scalar;
    return out;
  }

  friend ComplexMatrix operator*(const Complex& scalar, const ComplexMatrix& m) {
    return m * scalar;
  }

 private:
  void check_finite() const {
    for (const Complex& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
      }
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b;
}

/// Kronecker product. Block (i,j) of the result equals a(i,j) * b.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex f = a(ar, ac);
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
        }
      }
    }
  }
  return out;
}

/// Partial trace of a square matrix over the subsystems NOT listed in `keep`.
///
/// `dims` factorizes the matrix dimension into subsystem dimensions, with
/// subsystem 0 as the most significant factor of the row/column index (the
/// same ordering used for qubit registers). Kept subsystems preserve their
/// relative order. Trace and Hermiticity are preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& m,
                                   const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("partial_trace: matrix not square");
  }
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dim");
    total *= d;
  }
  if (total != m.rows()) {
    throw std::invalid_argument("partial_trace: subsystem dims do not factorize matrix");
  }
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set is empty");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  std::vector<std::size_t> keep_sorted;
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (kept[i]) keep_sorted.push_back(i);
    else traced.push_back(i);
  }

  // Row-major strides: subsystem 0 is the most significant index factor.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    stride[i - 1] = stride[i] * dims[i];
  }

  std::size_t keep_dim = 1;
  for (std::size_t k : keep_sorted) keep_dim *= dims[k];
  std::size_t trace_dim = 1;
  for (std::size_t t : traced) trace_dim *= dims[t];

  // Flat offset of a mixed-radix value laid out over the given subsystems.
  auto offset_of = [&](std::size_t value, const std::vector<std::size_t>& subs) {
    std::size_t off = 0;
    for (std::size_t i = subs.size(); i-- > 0;) {
      const std::size_t s = subs[i];
      off += (value % dims[s]) * stride[s];
      value /= dims[s];
    }
    return off;
  };

  ComplexMatrix out(keep_dim, keep_dim);
  for (std::size_t a = 0; a < keep_dim; ++a) {
    const std::size_t ra = offset_of(a, keep_sorted);
    for (std::size_t b = 0; b < keep_dim; ++b) {
      const std::size_t rb = offset_of(b, keep_sorted);
      Complex sum(0.0, 0.0);
      for (std::size_t t = 0; t < trace_dim; ++t) {
        const std::size_t rt = offset_of(t, traced);
        sum += m(ra + rt, rb + rt);
      }
      out(a, b) = sum;
    }
  }
  return out;
}

}  // namespace qinfo

#endif  // QINFO_MATRIX_HPP
