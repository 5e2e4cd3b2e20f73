#pragma once

#include <string>
#include <vector>

#include "loopforms/detail/int_matrix.hpp"
#include "loopforms/int_types.hpp"

namespace loopforms::forms {

enum class Parity { Even, Odd };

/// Classical invariants of an integer symmetric bilinear form, computed
/// exactly: rank, signature (inertia), determinant, and even/odd type.
struct FormInvariants {
  int rank = 0;
  int signature = 0;
  Int determinant = 0;
  Parity parity = Parity::Even;

  bool operator==(const FormInvariants&) const = default;
};

/// A symmetric n-by-n matrix over Z, n >= 1. Immutable after construction;
/// symmetry is checked at construction time.
class SymmetricForm {
 public:
  explicit SymmetricForm(const std::vector<std::vector<Int>>& entries);
  explicit SymmetricForm(detail::IntMatrix m);
  SymmetricForm(std::initializer_list<std::initializer_list<Int>> rows)
      : SymmetricForm(detail::IntMatrix(rows)) {}

  static SymmetricForm diagonal(const std::vector<Int>& entries);

  int dimension() const { return m_.rows(); }
  const Int& at(int i, int j) const { return m_.at(i, j); }
  const detail::IntMatrix& matrix() const { return m_; }

  bool operator==(const SymmetricForm& o) const { return m_ == o.m_; }
  std::string to_string() const { return m_.to_string(); }

 private:
  detail::IntMatrix m_;
};

/// An integer matrix of determinant +1 or -1; the base changes realizing
/// congruences of forms. Checked at construction.
class UnimodularMatrix {
 public:
  explicit UnimodularMatrix(const std::vector<std::vector<Int>>& entries);
  explicit UnimodularMatrix(detail::IntMatrix m);
  UnimodularMatrix(std::initializer_list<std::initializer_list<Int>> rows)
      : UnimodularMatrix(detail::IntMatrix(rows)) {}

  static UnimodularMatrix identity(int n);

  int dimension() const { return m_.rows(); }
  const Int& at(int i, int j) const { return m_.at(i, j); }
  const detail::IntMatrix& matrix() const { return m_; }
  const Int& determinant() const { return det_; }

  UnimodularMatrix operator*(const UnimodularMatrix& o) const;
  bool operator==(const UnimodularMatrix& o) const { return m_ == o.m_; }
  std::string to_string() const { return m_.to_string(); }

 private:
  detail::IntMatrix m_;
  Int det_;
};

/// Exact rank, signature, determinant and parity. Signature is computed by
/// symmetric Gaussian elimination over the rationals; indefinite 2x2 pivot
/// blocks (arising when the trailing diagonal vanishes) contribute zero.
FormInvariants invariants(const SymmetricForm& a);

/// Congruence transform U^T A U. Convention fixed project-wide: column
/// vectors, base change on the right.
SymmetricForm transform(const SymmetricForm& a, const UnimodularMatrix& u);

/// Block-diagonal direct sum. The list must be non-empty.
SymmetricForm block_sum(const std::vector<SymmetricForm>& pieces);

}  // namespace loopforms::forms
