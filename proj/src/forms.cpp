#include "loopforms/forms.hpp"

#include <utility>

#include "loopforms/errors.hpp"

namespace loopforms::forms {

SymmetricForm::SymmetricForm(const std::vector<std::vector<Int>>& entries)
    : SymmetricForm(detail::IntMatrix(entries)) {}

SymmetricForm::SymmetricForm(detail::IntMatrix m) : m_(std::move(m)) {
  if (m_.rows() < 1) throw DimensionMismatch("symmetric form must have rank at least 1");
  if (!detail::is_symmetric(m_)) throw Error("matrix is not symmetric: " + m_.to_string());
}

SymmetricForm SymmetricForm::diagonal(const std::vector<Int>& entries) {
  detail::IntMatrix m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (int i = 0; i < m.rows(); ++i) m.at(i, i) = entries[i];
  return SymmetricForm(std::move(m));
}

UnimodularMatrix::UnimodularMatrix(const std::vector<std::vector<Int>>& entries)
    : UnimodularMatrix(detail::IntMatrix(entries)) {}

UnimodularMatrix::UnimodularMatrix(detail::IntMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionMismatch("base change must be square");
  det_ = detail::determinant(m_);
  if (det_ != 1 && det_ != -1)
    throw NotUnimodular("determinant " + det_.str() + " is not a unit");
}

UnimodularMatrix UnimodularMatrix::identity(int n) {
  return UnimodularMatrix(detail::IntMatrix::identity(n));
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
  return UnimodularMatrix(detail::multiply(m_, o.m_));
}

FormInvariants invariants(const SymmetricForm& a) {
  const int n = a.dimension();

  FormInvariants inv;
  inv.determinant = detail::determinant(a.matrix());

  inv.parity = Parity::Even;
  for (int i = 0; i < n; ++i)
    if (parity_bit(a.at(i, i)) != 0) inv.parity = Parity::Odd;

  // Symmetric elimination over Q. Nonzero diagonal pivots contribute their
  // sign to the inertia count; if the whole trailing diagonal vanishes, a
  // nonzero off-diagonal entry gives an indefinite 2x2 block (one positive,
  // one negative eigenvalue).
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = Rational(a.at(i, j));

  auto swap_sym = [&](int k, int l) {
    if (k == l) return;
    for (int i = 0; i < n; ++i) std::swap(b[i][k], b[i][l]);
    std::swap(b[k], b[l]);
  };

  int pos = 0, neg = 0;
  int i = 0;
  while (i < n) {
    int piv = -1;
    for (int k = i; k < n; ++k)
      if (b[k][k] != 0) { piv = k; break; }
    if (piv >= 0) {
      swap_sym(i, piv);
      const Rational d = b[i][i];
      (d > 0 ? pos : neg) += 1;
      for (int r = i + 1; r < n; ++r) {
        if (b[r][i] == 0) continue;
        Rational f = b[r][i] / d;
        for (int c = i + 1; c < n; ++c) b[r][c] -= f * b[i][c];
      }
      for (int r = i + 1; r < n; ++r) b[r][i] = b[i][r] = 0;
      ++i;
      continue;
    }
    // Trailing diagonal is zero; hunt for an off-diagonal coupling.
    int pk = -1, pl = -1;
    for (int k = i; k < n && pk < 0; ++k)
      for (int l = k + 1; l < n; ++l)
        if (b[k][l] != 0) { pk = k; pl = l; break; }
    if (pk < 0) break;  // trailing block is zero: rank exhausted
    swap_sym(i, pk);
    swap_sym(i + 1, pl);
    const Rational c = b[i][i + 1];
    pos += 1;
    neg += 1;
    // Clear the coupling of the 2x2 block [[0,c],[c,0]] to the rest.
    for (int r = i + 2; r < n; ++r) {
      Rational fi = b[r][i + 1] / c;   // coefficient on row i
      Rational fj = b[r][i] / c;       // coefficient on row i+1
      if (fi == 0 && fj == 0) continue;
      for (int s = i + 2; s < n; ++s) b[r][s] -= fi * b[i][s] + fj * b[i + 1][s];
    }
    for (int r = i + 2; r < n; ++r) {
      b[r][i] = b[r][i + 1] = 0;
      b[i][r] = b[i + 1][r] = 0;
    }
    i += 2;
  }

  inv.rank = pos + neg;
  inv.signature = pos - neg;
  return inv;
}

SymmetricForm transform(const SymmetricForm& a, const UnimodularMatrix& u) {
  if (a.dimension() != u.dimension())
    throw DimensionMismatch("form of rank " + std::to_string(a.dimension()) +
                            " cannot be transformed by base change of rank " +
                            std::to_string(u.dimension()));
  return SymmetricForm(
      detail::multiply(detail::multiply(detail::transpose(u.matrix()), a.matrix()), u.matrix()));
}

SymmetricForm block_sum(const std::vector<SymmetricForm>& pieces) {
  if (pieces.empty()) throw Error("block_sum of empty list");
  int n = 0;
  for (const auto& p : pieces) n += p.dimension();
  detail::IntMatrix m(n, n);
  int off = 0;
  for (const auto& p : pieces) {
    for (int i = 0; i < p.dimension(); ++i)
      for (int j = 0; j < p.dimension(); ++j) m.at(off + i, off + j) = p.at(i, j);
    off += p.dimension();
  }
  return SymmetricForm(std::move(m));
}

}  // namespace loopforms::forms
