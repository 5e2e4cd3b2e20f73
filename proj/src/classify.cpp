#include "loopforms/classify.hpp"

#include <algorithm>

#include "loopforms/errors.hpp"

namespace loopforms::classify {

using forms::SymmetricForm;
using forms::UnimodularMatrix;
using plumbing::ExceptionFlag;

std::string HomeoType::describe() const {
  if (ks_flag == KsFlag::PossiblyChern) return "±ℂP² or ±ℂP̂² (Chern manifold)";
  std::string s = "S⁴";
  for (int k = 0; k < cp2_count; ++k) s += " # ℂP²";
  for (int k = 0; k < neg_cp2_count; ++k) s += " # (−ℂP²)";
  for (int k = 0; k < s2xs2_count; ++k) s += " # S²×S²";
  return s;
}

std::vector<Block> normalize_blocks(std::vector<Block> blocks) {
  auto counts = reduction::count_blocks(blocks);
  while (counts.hyperbolic > 0 && counts.plus_one + counts.minus_one > 0) {
    counts.hyperbolic -= 1;
    counts.plus_one += 1;
    counts.minus_one += 1;
  }
  std::vector<Block> out;
  out.insert(out.end(), counts.plus_one, Block::PlusOne);
  out.insert(out.end(), counts.minus_one, Block::MinusOne);
  out.insert(out.end(), counts.hyperbolic, Block::Hyperbolic);
  return out;
}

UnimodularMatrix odd_hyperbolic_witness() {
  // Columns (1,1,0), (1,0,-1), (1,1,-1) in the form (1) + H are orthogonal
  // of squares 1, 1, -1.
  return UnimodularMatrix({{Int(1), Int(1), Int(1)},
                           {Int(1), Int(0), Int(1)},
                           {Int(0), Int(-1), Int(-1)}});
}

SymmetricForm exception_form(const SingularSetData& data) {
  switch (data.exception()) {
    case ExceptionFlag::PseudofreeP3B1:
      return SymmetricForm::diagonal({Int(1)});
    case ExceptionFlag::FixedPointFreeP2Hyperbolic:
      return SymmetricForm({{Int(0), Int(1)}, {Int(1), Int(0)}});
    case ExceptionFlag::None:
      break;
  }
  throw Error("no exception form for a non-exceptional configuration");
}

HomeoType homeo_type(const CongruenceCertificate& cert, const SingularSetData& data) {
  if (!cert.verify()) throw Error("homeo_type requires a verified certificate");

  HomeoType h;
  auto counts = reduction::count_blocks(normalize_blocks(cert.blocks));
  h.cp2_count = counts.plus_one;
  h.neg_cp2_count = counts.minus_one;
  h.s2xs2_count = counts.hyperbolic;

  switch (data.exception()) {
    case ExceptionFlag::None:
      h.ks_flag = KsFlag::Zero;
      break;
    case ExceptionFlag::PseudofreeP3B1:
      h.ks_flag = KsFlag::PossiblyChern;
      h.exception_note =
          "pseudofree Z_3 x Z_3 action with b2 = 1: the manifold is ±ℂP² or possibly the "
          "Chern manifold ±ℂP̂² (nonzero Kirby–Siebenmann invariant); the plumbing "
          "construction does not apply, so no decomposition is asserted";
      break;
    case ExceptionFlag::FixedPointFreeP2Hyperbolic:
      h.ks_flag = KsFlag::Zero;
      h.exception_note =
          "fixed-point-free Z_2 x Z_2 action on the hyperbolic form (S²×S²): the loop "
          "construction does not apply, so no decomposition is asserted";
      break;
  }
  return h;
}

std::string summand_name(Summand s) {
  switch (s) {
    case Summand::S4: return "S⁴";
    case Summand::S2xS2: return "S²×S²";
    case Summand::CP2: return "ℂP²";
    case Summand::NegCP2: return "−ℂP²";
    case Summand::CP2NegCP2: return "ℂP² # −ℂP²";
  }
  return "?";
}

std::string EquivariantDecomposition::describe() const {
  std::string s;
  for (size_t k = 0; k < summands.size(); ++k) {
    if (k) s += " # ";
    bool parenthesize = summands[k] == Summand::CP2NegCP2;
    s += parenthesize ? "(" + summand_name(summands[k]) + ")" : summand_name(summands[k]);
  }
  return s;
}

std::vector<CutReduction> certified_cuts(const SingularSetData& data) {
  const int t = data.sphere_count();
  std::vector<CutReduction> out;
  auto push_cut = [&](int i, int j) {
    if (!plumbing::cut_is_unimodular(data, i, j)) return;
    CutReduction cr;
    cr.i = i;
    cr.j = j;
    cr.adjacent = plumbing::cut_is_adjacent(data, i, j);
    cr.chains = plumbing::cut_redundant(data, i, j);
    for (const auto& chain : cr.chains) cr.certificates.push_back(reduction::reduce_chain(chain));
    out.push_back(std::move(cr));
  };
  // Adjacent pairs in index order first, then the rest.
  for (int i = 0; i < t; ++i) push_cut(i, (i + 1) % t);
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      if (!plumbing::cut_is_adjacent(data, i, j)) push_cut(i, j);
  return out;
}

namespace {

std::vector<Summand> chain_summands(const SymmetricForm& chain,
                                    const CongruenceCertificate& cert,
                                    std::vector<std::string>& notes) {
  auto counts = reduction::count_blocks(normalize_blocks(cert.blocks));
  std::vector<Summand> out;
  if (chain.dimension() == 2 && counts.plus_one == 1 && counts.minus_one == 1) {
    forms::FormInvariants inv = forms::invariants(chain);
    if (inv.parity == forms::Parity::Odd && inv.signature == 0) {
      // Torus actions on CP^2 # -CP^2 need not split equivariantly, so the
      // piece is kept atomic; the non-equivariant splitting is noted.
      notes.push_back(
          "a rank-2 odd chain of signature 0 is emitted as the irreducible piece "
          "ℂP² # −ℂP²; non-equivariantly it splits as ℂP² and −ℂP²");
      out.push_back(Summand::CP2NegCP2);
      return out;
    }
  }
  out.insert(out.end(), counts.plus_one, Summand::CP2);
  out.insert(out.end(), counts.minus_one, Summand::NegCP2);
  out.insert(out.end(), counts.hyperbolic, Summand::S2xS2);
  return out;
}

}  // namespace

EquivariantDecomposition equivariant_decomposition(const SingularSetData& data,
                                                   const std::vector<CutReduction>& cuts) {
  if (data.exception() != ExceptionFlag::None)
    throw ExceptionCase("exceptional fixed-point-free actions admit no loop decomposition");
  if (cuts.empty())
    throw NoUnimodularCut("no unimodular cut available for a valid configuration");

  const CutReduction* selected = nullptr;
  for (const auto& c : cuts)
    if (c.adjacent) { selected = &c; break; }
  if (!selected) selected = &cuts.front();

  EquivariantDecomposition d;
  d.strategy = selected->adjacent ? CutStrategy::AdjacentPair : CutStrategy::TwoStep;
  d.cut_i = selected->i;
  d.cut_j = selected->j;
  d.leading_s4 = true;
  d.summands.push_back(Summand::S4);
  d.notes.push_back(
      "the leading S⁴ summand carries the residual action, which need not be standard "
      "(the singular set may be knotted there)");
  for (size_t k = 0; k < selected->chains.size(); ++k) {
    auto part = chain_summands(selected->chains[k], selected->certificates[k], d.notes);
    d.summands.insert(d.summands.end(), part.begin(), part.end());
  }
  return d;
}

EquivariantDecomposition equivariant_decomposition(const SingularSetData& data) {
  return equivariant_decomposition(data, certified_cuts(data));
}

}  // namespace loopforms::classify
