#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforms/int_types.hpp"
#include "loopforms/plumbing.hpp"

namespace loopforms::gluing {

/// A 2x2 integer matrix of determinant +1 or -1: an element of the structure
/// group GL(2,Z) of the torus bundle over the plumbing circle.
class Gl2Matrix {
 public:
  Gl2Matrix(Int a, Int b, Int c, Int d);

  static Gl2Matrix identity() { return {1, 0, 0, 1}; }

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }
  Int determinant() const { return a_ * d_ - b_ * c_; }

  Gl2Matrix operator*(const Gl2Matrix& o) const;
  Gl2Matrix operator-() const { return {-a_, -b_, -c_, -d_}; }
  bool operator==(const Gl2Matrix&) const = default;

  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }
  std::string to_string() const;

 private:
  Int a_, b_, c_, d_;
};

/// Clutching function of a disk bundle with Euler number e: [[1,0],[e,1]].
Gl2Matrix clutch(const Int& e);

/// Base-fiber coordinate switch at a plumbing point: [[0,1],[1,0]].
Gl2Matrix switch_factor();

/// Orientation change [[1,0],[0,eps]], eps in {+1,-1}.
Gl2Matrix orientation(int eps);

// The three generator matrices are pinned, but the attaching map of each
// sphere is determined only up to isotopy by its action on pi_1 of the
// fiber, so the factorization is an explicit convention: the order of the
// three factors, the shape of the orientation factor, and whether the
// factor for sphere i uses the sign at its own pole or at the next one.
enum class FactorArrangement {
  SwitchOrientClutch,
  SwitchClutchOrient,
  OrientSwitchClutch,
  OrientClutchSwitch,
  ClutchSwitchOrient,
  ClutchOrientSwitch,
};

enum class OrientFactorForm {
  Fiber,           // diag(1, eps) -- the literal orientation change
  Base,            // diag(eps, 1)
  ImproperBase,    // diag(-eps, eps)
  ImproperFiber,   // diag(eps, -eps)
};

enum class PoleIndexing { Same, Next };  // eps_i vs eps_{i+1}

struct FactorOrder {
  FactorArrangement arrangement = FactorArrangement::SwitchOrientClutch;
  OrientFactorForm orient_form = OrientFactorForm::Fiber;
  PoleIndexing pole_indexing = PoleIndexing::Same;

  static FactorOrder default_order() { return {}; }
  bool operator==(const FactorOrder&) const = default;
};

/// All 48 convention variants, default first.
std::vector<FactorOrder> all_conventions();

std::string format_convention(const FactorOrder& order);
std::optional<FactorOrder> parse_convention(const std::string& name);

/// The per-sphere gluing factor gamma_i under a convention.
Gl2Matrix sphere_factor(const plumbing::SingularSetData& data, int i, const FactorOrder& order);

/// Total gluing gamma = gamma_t ... gamma_2 gamma_1 around the loop.
Gl2Matrix total_gluing(const plumbing::SingularSetData& data,
                       const FactorOrder& order = FactorOrder::default_order());

enum class CompatibilityStatus { TrivialPrincipal, Incompatible };

enum class IncompatibilityReason {
  None,
  NotIdentityOddP,               // p > 2 forces gamma = I
  BaseFiberSplitViolation,       // gamma = +-J breaks the base-fiber splitting
  MinusIdentityTorsionViolation, // gamma = -I forces 2-torsion in H_1(M - Sigma)
  NotInNormalizer,               // gamma outside {+-I, +-J} at p = 2
};

struct CompatibilityVerdict {
  CompatibilityStatus status = CompatibilityStatus::Incompatible;
  IncompatibilityReason reason = IncompatibilityReason::None;

  bool trivial_principal() const { return status == CompatibilityStatus::TrivialPrincipal; }
  bool operator==(const CompatibilityVerdict&) const = default;
};

/// Whether order-p rotations of both torus factors survive conjugation by
/// gamma: at odd p the centralizer condition forces gamma = I; at p = 2 the
/// normalizer allows {+-I, +-J} before the geometric rejections.
CompatibilityVerdict compatibility(const Gl2Matrix& gamma, long p);

/// Search the 48 conventions for one under which every model configuration
/// has total gluing I. Throws NoConventionFound (with the search transcript)
/// if none works. An empty model list returns the default convention.
FactorOrder calibrate_convention(const std::vector<plumbing::SingularSetData>& models);

/// The two configurations known to carry torus actions, used to calibrate:
/// the CP^2-type triangle (e = 1,1,1) and the S^2 x S^2-type square
/// (e = 0,0,0,0), all intersection signs positive.
std::vector<plumbing::SingularSetData> standard_calibration_models();

}  // namespace loopforms::gluing
