#include "chevlab/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace chevlab {

bool IntMat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
}

IntMat int_identity(std::size_t n) {
  IntMat m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat int_mul(const IntMat& x, const IntMat& y) {
  const std::size_t n = x.n;
  IntMat c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      long v = x.a[i * n + k];
      if (!v) continue;
      for (std::size_t j = 0; j < n; ++j) c.a[i * n + j] += v * y.a[k * n + j];
    }
  return c;
}

IntMat int_add(const IntMat& x, const IntMat& y, long scale) {
  IntMat c = x;
  for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] += scale * y.a[i];
  return c;
}

IntMat int_bracket(const IntMat& x, const IntMat& y) { return int_add(int_mul(x, y), int_mul(y, x), -1); }

IntMat int_transpose(const IntMat& x) {
  IntMat t(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) t.at(j, i) = x.at(i, j);
  return t;
}

Mat mat_identity(const FiniteRing& r, std::size_t n) { return mat_scalar(r, n, r.one()); }

Mat mat_scalar(const FiniteRing& r, std::size_t n, elem_t s) {
  (void)r;
  Mat m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = s;
  return m;
}

Mat mat_mul(const FiniteRing& r, const Mat& x, const Mat& y) {
  const std::size_t n = x.n;
  Mat c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      elem_t v = x.a[i * n + k];
      if (!v) continue;
      for (std::size_t j = 0; j < n; ++j) {
        elem_t w = y.a[k * n + j];
        if (w) c.a[i * n + j] = r.add(c.a[i * n + j], r.mul(v, w));
      }
    }
  return c;
}

Mat mat_transpose(const Mat& x) {
  Mat t(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) t.at(j, i) = x.at(i, j);
  return t;
}

Mat mat_from_int(const FiniteRing& r, const IntMat& m) {
  Mat out(m.n);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i] ? r.from_int(m.a[i]) : 0;
  return out;
}

Mat mat_map(const Mat& x, const std::vector<elem_t>& phi) {
  Mat out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = phi[x.a[i]];
  return out;
}

bool mat_is_identity(const FiniteRing& r, const Mat& x) {
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      if (x.at(i, j) != (i == j ? r.one() : r.zero())) return false;
  return true;
}

bool mat_is_diagonal(const Mat& x) {
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      if (i != j && x.at(i, j)) return false;
  return true;
}

elem_t mat_det(const FiniteRing& r, const Mat& x) {
  if (x.n > 8) throw RingError("mat_det: dimension too large");
  std::vector<std::size_t> p(x.n);
  std::iota(p.begin(), p.end(), 0);
  elem_t det = 0;
  do {
    elem_t term = r.one();
    for (std::size_t i = 0; i < x.n && term; ++i) term = r.mul(term, x.at(i, p[i]));
    if (!term) continue;
    int inversions = 0;
    for (std::size_t i = 0; i < x.n; ++i)
      for (std::size_t j = i + 1; j < x.n; ++j)
        if (p[i] > p[j]) ++inversions;
    det = inversions % 2 ? r.sub(det, term) : r.add(det, term);
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

std::string mat_to_line(const FiniteRing& r, const Mat& x) {
  std::string out;
  for (std::size_t i = 0; i < x.n; ++i) {
    if (i) out += " ; ";
    for (std::size_t j = 0; j < x.n; ++j) {
      if (j) out += ' ';
      out += r.name(x.at(i, j));
    }
  }
  return out;
}

Mat mat_from_line(const FiniteRing& r, std::string_view line) {
  std::vector<std::vector<elem_t>> rows(1);
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    if (tok == ";")
      rows.emplace_back();
    else
      rows.back().push_back(r.parse_element(tok));
  }
  const std::size_t n = rows.size();
  Mat m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw RingError("matrix line is not square");
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace chevlab
