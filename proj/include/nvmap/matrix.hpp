#pragma once

#include "nvmap/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nvmap {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal consistency check fails after inputs were already
// validated; indicates a bug, never a bad model file.
struct IntegrityError : std::logic_error {
  using std::logic_error::logic_error;
};

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), e_(r * c) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    check(i, j);
    return e_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    check(i, j);
    return e_[i * cols_ + j];
  }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != o.e_[i]) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
  }

  std::size_t rows_, cols_;
  std::vector<T> e_;
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix add shape");
  Mat<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sub shape");
  Mat<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix mul shape");
  Mat<T> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
  return r;
}

template <class T>
std::vector<T> operator*(const Mat<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector shape");
  std::vector<T> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] = r[i] + a(i, j) * v[j];
  return r;
}

template <class T>
Mat<T> operator*(const T& s, const Mat<T>& a) {
  Mat<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

template <class T>
Mat<T> transpose(const Mat<T>& a) {
  Mat<T> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

template <class T>
Mat<T> neg(const Mat<T>& a) {
  Mat<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

template <class T>
bool is_zero(const Mat<T>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) return false;
  return true;
}

template <class T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionError("vector add shape");
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionError("vector sub shape");
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
std::vector<T> vec_neg(const std::vector<T>& a) {
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

template <class T>
bool vec_is_zero(const std::vector<T>& a) {
  for (const T& x : a)
    if (x != 0) return false;
  return true;
}

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

inline std::optional<IntMat> to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!rat_is_int(m(i, j))) return std::nullopt;
      r(i, j) = rat_num(m(i, j));
    }
  return r;
}

inline std::optional<IntVec> to_int(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!rat_is_int(v[i])) return std::nullopt;
    r[i] = rat_num(v[i]);
  }
  return r;
}

std::string mat_str(const RatMat& m);
std::string mat_str(const IntMat& m);
std::string vec_str(const RatVec& v);
std::string vec_str(const IntVec& v);

}  // namespace nvmap
