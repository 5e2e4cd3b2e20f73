#include "loopforms/detail/int_matrix.hpp"

#include <sstream>
#include <utility>

namespace loopforms::detail {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(0) {
  for (const auto& r : rows) {
    if (cols_ == 0) cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_)
      throw DimensionMismatch("ragged initializer for IntMatrix");
    for (const auto& x : r) a_.push_back(x);
  }
}

IntMatrix::IntMatrix(const std::vector<std::vector<Int>>& rows)
    : rows_(static_cast<int>(rows.size())), cols_(0) {
  for (const auto& r : rows) {
    if (cols_ == 0) cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_)
      throw DimensionMismatch("ragged row list for IntMatrix");
    for (const auto& x : r) a_.push_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void IntMatrix::add_col_multiple(int src, int dst, const Int& c) {
  for (int i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

void IntMatrix::add_row_multiple(int src, int dst, const Int& c) {
  for (int j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMatrix::negate_col(int k) {
  for (int i = 0; i < rows_; ++i) at(i, k) = -at(i, k);
}

void IntMatrix::negate_row(int k) {
  for (int j = 0; j < cols_; ++j) at(k, j) = -at(k, j);
}

void IntMatrix::swap_cols(int k, int l) {
  if (k == l) return;
  for (int i = 0; i < rows_; ++i) std::swap(at(i, k), at(i, l));
}

void IntMatrix::swap_rows(int k, int l) {
  if (k == l) return;
  for (int j = 0; j < cols_; ++j) std::swap(at(k, j), at(l, j));
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { piv = i; break; }
      if (piv < 0) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // Bareiss update: the division is exact.
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

int rank(const IntMatrix& a) {
  const int nr = a.rows(), nc = a.cols();
  std::vector<std::vector<Rational>> m(nr, std::vector<Rational>(nc));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m[i][j] = Rational(a.at(i, j));
  int r = 0;
  for (int col = 0; col < nc && r < nr; ++col) {
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (m[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < nr; ++i) {
      if (m[i][col] == 0) continue;
      Rational f = m[i][col] / m[r][col];
      for (int j = col; j < nc; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

bool is_symmetric(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (a.at(i, j) != a.at(j, i)) return false;
  return true;
}

}  // namespace loopforms::detail

namespace loopforms {

bool is_prime(long p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace loopforms
