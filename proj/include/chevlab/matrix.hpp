#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chevlab/ring.hpp"

namespace chevlab {

// Dense square matrix over a FiniteRing, row-major element indices.
struct Mat {
  std::size_t n = 0;
  std::vector<elem_t> a;

  Mat() = default;
  explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0) {}
  elem_t& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  elem_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  friend bool operator==(const Mat&, const Mat&) = default;
  friend auto operator<=>(const Mat& x, const Mat& y) { return x.a <=> y.a; }
};

// Integer matrix used for representation templates.
struct IntMat {
  std::size_t n = 0;
  std::vector<long> a;

  IntMat() = default;
  explicit IntMat(std::size_t dim) : n(dim), a(dim * dim, 0) {}
  long& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  long at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  bool is_zero() const;
  friend bool operator==(const IntMat&, const IntMat&) = default;
};

IntMat int_identity(std::size_t n);
IntMat int_mul(const IntMat& x, const IntMat& y);
IntMat int_add(const IntMat& x, const IntMat& y, long scale = 1);
IntMat int_bracket(const IntMat& x, const IntMat& y);  // xy - yx
IntMat int_transpose(const IntMat& x);

Mat mat_identity(const FiniteRing& r, std::size_t n);
Mat mat_mul(const FiniteRing& r, const Mat& x, const Mat& y);
Mat mat_transpose(const Mat& x);
Mat mat_scalar(const FiniteRing& r, std::size_t n, elem_t s);
Mat mat_from_int(const FiniteRing& r, const IntMat& m);
// Entrywise image under a ring map given as a table.
Mat mat_map(const Mat& x, const std::vector<elem_t>& phi);
bool mat_is_identity(const FiniteRing& r, const Mat& x);
bool mat_is_diagonal(const Mat& x);
// Determinant by permutation expansion (n <= 8).
elem_t mat_det(const FiniteRing& r, const Mat& x);

// Dump format: one matrix per line, row-major element names separated by
// single spaces, rows separated by " ; ".
std::string mat_to_line(const FiniteRing& r, const Mat& x);
Mat mat_from_line(const FiniteRing& r, std::string_view line);

}  // namespace chevlab
