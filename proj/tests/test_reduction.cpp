#include <doctest.h>

#include <random>
#include <vector>

#include "loopforms/errors.hpp"
#include "loopforms/reduction.hpp"

using namespace loopforms;
using namespace loopforms::forms;
using namespace loopforms::reduction;

namespace {

SymmetricForm hyperbolic() { return SymmetricForm{{Int(0), Int(1)}, {Int(1), Int(0)}}; }

SymmetricForm chain(const std::vector<int>& diag) {
  int n = static_cast<int>(diag.size());
  detail::IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    m.at(i, i + 1) = 1;
    m.at(i + 1, i) = 1;
  }
  return SymmetricForm(std::move(m));
}

// Expected block multiset from (rank, signature, parity): even unimodular
// desk-scale forms are sums of hyperbolic planes, odd ones diagonalize.
BlockCounts predicted_counts(const SymmetricForm& a) {
  auto inv = invariants(a);
  if (inv.parity == Parity::Even)
    return {0, 0, inv.rank / 2};
  return {(inv.rank + inv.signature) / 2, (inv.rank - inv.signature) / 2, 0};
}

}  // namespace

TEST_CASE("reduce_chain on the spec shapes") {
  auto c1 = reduce_chain(SymmetricForm::diagonal({Int(1)}));
  CHECK(c1.blocks == std::vector<Block>{Block::PlusOne});
  CHECK(c1.base_change == UnimodularMatrix::identity(1));
  CHECK(c1.verify());

  auto ch = reduce_chain(hyperbolic());
  CHECK(ch.blocks == std::vector<Block>{Block::Hyperbolic});
  CHECK(ch.verify());

  SymmetricForm a{{Int(2), Int(1)}, {Int(1), Int(0)}};
  auto ca = reduce_chain(a);
  CHECK(ca.blocks == std::vector<Block>{Block::Hyperbolic});
  CHECK(ca.verify());
  // The fixed base change from the worked example is also a valid witness.
  CHECK(transform(a, UnimodularMatrix{{Int(1), Int(0)}, {Int(-1), Int(1)}}) == hyperbolic());

  auto c3 = reduce_chain(chain({1, 1, 1}));
  CHECK(count_blocks(c3.blocks) == BlockCounts{2, 1, 0});
  CHECK(c3.verify());
}

TEST_CASE("reduce_chain error taxonomy") {
  CHECK_THROWS_AS(reduce_chain(SymmetricForm::diagonal({Int(2)})), NotUnimodular);
  CHECK_THROWS_AS(reduce_chain(chain({2, 2})), NotUnimodular);  // det 3
  // Unimodular but not tridiagonal with unit couplings.
  CHECK_THROWS_AS(reduce_chain(SymmetricForm{{Int(1), Int(2)}, {Int(2), Int(3)}}), NotChainShape);
  CHECK_THROWS_AS(
      reduce_chain(SymmetricForm{
          {Int(0), Int(0), Int(1)}, {Int(0), Int(1), Int(0)}, {Int(1), Int(0), Int(0)}}),
      NotChainShape);
}

TEST_CASE("reduce_chain handles negative couplings and block sums of chains") {
  SymmetricForm mixed{{Int(1), Int(-1)}, {Int(-1), Int(0)}};
  auto c = reduce_chain(mixed);
  CHECK(c.verify());
  CHECK(count_blocks(c.blocks) == BlockCounts{1, 1, 0});

  // A mixed odd + hyperbolic presentation canonicalizes to diagonal form.
  auto two = reduce_chain(block_sum({chain({1}), hyperbolic()}));
  CHECK(two.verify());
  CHECK(count_blocks(two.blocks) == BlockCounts{2, 1, 0});
}

TEST_CASE("zero diagonal with odd partner splits to (1) + (-1), not H") {
  SymmetricForm a{{Int(0), Int(1)}, {Int(1), Int(3)}};
  auto c = reduce_chain(a);
  CHECK(c.verify());
  CHECK(count_blocks(c.blocks) == BlockCounts{1, 1, 0});

  SymmetricForm b{{Int(0), Int(1)}, {Int(1), Int(4)}};
  auto cb = reduce_chain(b);
  CHECK(cb.verify());
  CHECK(count_blocks(cb.blocks) == BlockCounts{0, 0, 1});
}

TEST_CASE("brute_force_split on small forms") {
  auto m1 = brute_force_split(SymmetricForm::diagonal({Int(-1)}), 3);
  CHECK(m1.blocks == std::vector<Block>{Block::MinusOne});
  CHECK(m1.verify());

  auto h = brute_force_split(SymmetricForm{{Int(2), Int(1)}, {Int(1), Int(0)}}, 2);
  CHECK(h.blocks == std::vector<Block>{Block::Hyperbolic});
  CHECK(h.verify());

  auto d = brute_force_split(SymmetricForm::diagonal({Int(1), Int(-1)}), 3);
  CHECK(count_blocks(d.blocks) == BlockCounts{1, 1, 0});
  CHECK(d.verify());
}

TEST_CASE("brute_force_split error taxonomy") {
  CHECK_THROWS_AS(brute_force_split(SymmetricForm::diagonal({Int(3)}), 3), NotUnimodular);
  CHECK_THROWS_AS(
      brute_force_split(SymmetricForm::diagonal(std::vector<Int>(7, Int(1))), 3), Error);

  // A hyperbolic plane in a skewed basis: the shortest splitting vectors are
  // (2,-3)-like, outside the unit box.
  SymmetricForm skew{{Int(24), Int(17)}, {Int(17), Int(12)}};
  CHECK_THROWS_AS(brute_force_split(skew, 1), SearchExhausted);
  auto c = brute_force_split(skew, 4);
  CHECK(c.blocks == std::vector<Block>{Block::Hyperbolic});
  CHECK(c.verify());
  // The doubling schedule reaches it as well.
  CHECK(brute_force_split_auto(skew).verify());
}

TEST_CASE("oracle agreement on all unimodular chains of rank <= 3") {
  int checked = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> diag(n, -2), coup(std::max(0, n - 1), -1);
    auto next = [](std::vector<int>& v, int lo, int hi) {
      for (size_t k = 0; k < v.size(); ++k) {
        if (v[k] < hi) {
          ++v[k];
          for (size_t l = 0; l < k; ++l) v[l] = lo;
          return true;
        }
      }
      return false;
    };
    do {
      std::vector<int> c = coup;
      do {
        detail::IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = diag[i];
        for (int i = 0; i + 1 < n; ++i) {
          m.at(i, i + 1) = c[i];
          m.at(i + 1, i) = c[i];
        }
        SymmetricForm a(std::move(m));
        Int det = detail::determinant(a.matrix());
        if (det == 1 || det == -1) {
          auto fast = reduce_chain(a);
          auto slow = brute_force_split_auto(a);
          CHECK(fast.verify());
          CHECK(slow.verify());
          CHECK(fast.counts() == slow.counts());
          CHECK(fast.counts() == predicted_counts(a));
          ++checked;
        }
      } while (next(c, -1, 1));
    } while (next(diag, -2, 2));
  }
  CHECK(checked > 50);
}

TEST_CASE("random longer chains split with verifying certificates") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> entry(-3, 3), len(4, 8);
  int reduced = 0;
  for (int trial = 0; trial < 4000 && reduced < 60; ++trial) {
    int n = len(rng);
    std::vector<int> diag(n);
    for (int& d : diag) d = entry(rng);
    SymmetricForm a = chain(diag);
    Int det = detail::determinant(a.matrix());
    if (det != 1 && det != -1) continue;
    auto cert = reduce_chain(a);
    CHECK(cert.verify());
    auto counts = cert.counts();
    auto inv = invariants(a);
    CHECK(counts.plus_one - counts.minus_one == inv.signature);
    CHECK(counts.plus_one + counts.minus_one + 2 * counts.hyperbolic == inv.rank);
    CHECK((counts.hyperbolic == 0) == (inv.parity == Parity::Odd));
    ++reduced;
  }
  CHECK(reduced >= 40);
}

TEST_CASE("counting identities tie blocks to invariants") {
  for (const auto& diag : {std::vector<int>{1, 1, 1}, {0, 1, 0}, {1, 0, -1}, {-1, -1, 0}}) {
    SymmetricForm a = chain(diag);
    Int det = detail::determinant(a.matrix());
    if (det != 1 && det != -1) continue;
    auto cert = reduce_chain(a);
    auto counts = cert.counts();
    auto inv = invariants(a);
    CHECK(counts.plus_one - counts.minus_one == inv.signature);
    CHECK(counts.plus_one + counts.minus_one + 2 * counts.hyperbolic == inv.rank);
    CHECK((inv.parity == Parity::Even) == (counts.plus_one == 0 && counts.minus_one == 0));
  }
}
