#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforms/plumbing.hpp"
#include "loopforms/reduction.hpp"

namespace loopforms::classify {

using plumbing::SingularSetData;
using reduction::Block;
using reduction::CongruenceCertificate;

enum class KsFlag { Zero, PossiblyChern };

/// The homeomorphism type read off a certified decomposition: counts of
/// CP^2, -CP^2 and S^2 x S^2 summands, the Kirby-Siebenmann flag, and an
/// explanatory note for the exceptional actions.
struct HomeoType {
  int cp2_count = 0;
  int neg_cp2_count = 0;
  int s2xs2_count = 0;
  KsFlag ks_flag = KsFlag::Zero;
  std::optional<std::string> exception_note;

  /// Rendered as a connected sum, e.g. "S⁴ # ℂP² # ℂP² # (−ℂP²)".
  std::string describe() const;
};

/// Rewrites a block multiset so that hyperbolic and odd blocks never mix:
/// (1) + H = 2(1) + (-1), applied while both kinds are present. Keeps
/// (rank, signature, parity) and makes counts canonical.
std::vector<Block> normalize_blocks(std::vector<Block> blocks);

/// The rank-3 base change witnessing (1) + H = (1) + (1) + (-1), fixed once
/// and checked exactly by the tests.
forms::UnimodularMatrix odd_hyperbolic_witness();

/// Intersection form implied by an exceptional flag: (1) for the pseudofree
/// p = 3 case (up to orientation), H for the fixed-point-free p = 2 case.
forms::SymmetricForm exception_form(const SingularSetData& data);

/// Counts blocks of a verified certificate into a HomeoType; for flagged
/// exceptional data the result carries the note and KS flag instead of
/// asserting a construction.
HomeoType homeo_type(const CongruenceCertificate& cert, const SingularSetData& data);

enum class Summand { S4, S2xS2, CP2, NegCP2, CP2NegCP2 };

enum class CutStrategy { AdjacentPair, TwoStep };

std::string summand_name(Summand s);

/// One unimodular cut of the loop together with the certified reductions of
/// its chains.
struct CutReduction {
  int i = 0, j = 0;
  bool adjacent = false;
  std::vector<forms::SymmetricForm> chains;
  std::vector<CongruenceCertificate> certificates;
};

/// Every unimodular cut of a valid configuration, reduced and certified,
/// adjacent pairs first (each group in index order).
std::vector<CutReduction> certified_cuts(const SingularSetData& data);

struct EquivariantDecomposition {
  std::vector<Summand> summands;  // leading S4 first
  bool leading_s4 = true;
  CutStrategy strategy = CutStrategy::AdjacentPair;
  int cut_i = 0, cut_j = 0;
  std::vector<std::string> notes;

  std::string describe() const;
};

/// Selects an adjacent unimodular cut when one exists (strategy
/// AdjacentPair), otherwise a two-step split, and maps each chain's
/// certified blocks to standard summands. A rank-2 chain of odd parity and
/// signature 0 is emitted as the irreducible CP2 # -CP2 piece. Throws
/// ExceptionCase for flagged data and NoUnimodularCut if the list is empty.
EquivariantDecomposition equivariant_decomposition(const SingularSetData& data,
                                                   const std::vector<CutReduction>& cuts);

EquivariantDecomposition equivariant_decomposition(const SingularSetData& data);

}  // namespace loopforms::classify
