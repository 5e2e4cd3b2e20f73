#pragma once

#include <vector>

#include "loopforms/forms.hpp"

namespace loopforms::reduction {

using forms::SymmetricForm;
using forms::UnimodularMatrix;

/// The three indecomposable pieces a unimodular chain form splits into:
/// (+1), (-1), and the hyperbolic plane [[0,1],[1,0]].
enum class Block { PlusOne, MinusOne, Hyperbolic };

SymmetricForm block_form(Block b);

/// Block-diagonal assembly of a block list, in order.
SymmetricForm assemble_blocks(const std::vector<Block>& blocks);

struct BlockCounts {
  int plus_one = 0;
  int minus_one = 0;
  int hyperbolic = 0;
  bool operator==(const BlockCounts&) const = default;
};

BlockCounts count_blocks(const std::vector<Block>& blocks);

/// A machine-checkable witness that `source` is congruent to the block
/// assembly: transform(source, base_change) == assemble_blocks(blocks),
/// bit-exactly. verify() re-multiplies and compares.
struct CongruenceCertificate {
  SymmetricForm source;
  UnimodularMatrix base_change;
  std::vector<Block> blocks;

  bool verify() const;
  BlockCounts counts() const { return count_blocks(blocks); }
};

/// True if the matrix is tridiagonal with all couplings in {+1,-1}; zero
/// couplings are allowed as boundaries between chain components (a block
/// sum of chains).
bool is_chain_form(const SymmetricForm& a);

/// Split a unimodular chain form into (+1), (-1) and hyperbolic blocks with
/// an explicit base change. The scan always splits at the smallest index
/// admitting one: a diagonal +-1 is cleared directly; a diagonal 0 is paired
/// with a neighbor into a unimodular 2x2 block, which normalizes to H when
/// the partner diagonal is even and to (1)+(-1) when it is odd.
///
/// Throws NotUnimodular if |det| != 1, NotChainShape for inputs outside the
/// supported shape (such callers should use brute_force_split).
CongruenceCertificate reduce_chain(const SymmetricForm& a);

/// Independent splitting oracle: searches integer vectors with coordinates
/// in [-bound, bound] for v with v.v = +-1 (rank-1 split via the orthogonal
/// complement) or primitive v with v.v = 0 paired with w, v.w = 1
/// (hyperbolic split), and recurses.
///
/// Throws SearchExhausted when no splitting vector exists within the bound,
/// and Error when the rank exceeds `max_rank`.
CongruenceCertificate brute_force_split(const SymmetricForm& a, int bound, int max_rank = 6);

/// Oracle with the default bound schedule: 3, doubling up to 24 before
/// giving up with SearchExhausted.
CongruenceCertificate brute_force_split_auto(const SymmetricForm& a, int max_rank = 6);

}  // namespace loopforms::reduction
