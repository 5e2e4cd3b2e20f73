#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "loopforms/errors.hpp"
#include "loopforms/int_types.hpp"

namespace loopforms::detail {

// Dense row-major matrix over arbitrary-precision integers. This is the
// workhorse behind the public form types; it carries no invariants of its
// own beyond shape.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);
  explicit IntMatrix(const std::vector<std::vector<Int>>& rows);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const IntMatrix& o) const = default;

  // Elementary congruence-style column/row operations used by the reduction
  // algorithms. Column ops act on the right factor, row ops on the left.
  void add_col_multiple(int src, int dst, const Int& c);  // col dst += c * col src
  void add_row_multiple(int src, int dst, const Int& c);  // row dst += c * row src
  void negate_col(int k);
  void negate_row(int k);
  void swap_cols(int k, int l);
  void swap_rows(int k, int l);

  std::string to_string() const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);

// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& a);

// Exact rank via elimination over the rationals.
int rank(const IntMatrix& a);

bool is_symmetric(const IntMatrix& a);

}  // namespace loopforms::detail
