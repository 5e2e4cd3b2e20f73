#pragma once

#include <functional>
#include <string>
#include <vector>

#include "loopforms/forms.hpp"

namespace loopforms::plumbing {

using forms::SymmetricForm;

enum class ExceptionFlag {
  None,
  PseudofreeP3B1,              // b2 = 1, p = 3, pseudofree action
  FixedPointFreeP2Hyperbolic,  // p = 2, fixed-point-free, intersection form H
};

struct SphereData {
  Int euler;     // self-intersection e_i
  int sign;      // epsilon_i = sign of the intersection at the pole x_i, +1 or -1

  bool operator==(const SphereData&) const = default;
};

/// The singular set of an action: a closed loop of t invariant spheres
/// meeting pairwise at poles, indexed cyclically. Sphere i carries its Euler
/// number e_i; its `sign` field is the intersection sign at the pole shared
/// with sphere i-1 (indices mod t). Exceptional fixed-point-free actions
/// carry a flag and may have no spheres at all.
class SingularSetData {
 public:
  SingularSetData(long p, std::vector<SphereData> spheres, int orientation = 1,
                  ExceptionFlag exception = ExceptionFlag::None);

  long p() const { return p_; }
  int sphere_count() const { return static_cast<int>(spheres_.size()); }
  const std::vector<SphereData>& spheres() const { return spheres_; }
  const SphereData& sphere(int i) const { return spheres_[i]; }
  int orientation() const { return orientation_; }
  ExceptionFlag exception() const { return exception_; }

  bool operator==(const SingularSetData&) const = default;

 private:
  long p_;
  std::vector<SphereData> spheres_;
  int orientation_;
  ExceptionFlag exception_;
};

struct CutTest {
  int i = 0, j = 0;  // 0-based sphere indices
  bool unimodular = false;
};

struct ValidationReport {
  bool valid = false;
  std::string reason;  // set when invalid
  int circular_rank = 0;
  int expected_rank = 0;  // t - 2 in the loop case
  std::vector<CutTest> cuts_tested;
  int fixed_point_count = 0;
  std::string primitivity_note;
};

/// The t-by-t intersection matrix of the loop: diagonal e_i, entry
/// (i, i+1 mod t) carrying the sign at the shared pole x_{i+1}. Requires
/// t >= 3.
SymmetricForm circular_matrix(const SingularSetData& data);

/// Remove spheres i and j (0-based, distinct) from the loop. Returns the
/// intersection forms of the one (i, j adjacent) or two (otherwise) chains
/// that remain, each reordered along its arc and with couplings normalized
/// to +1 by sphere orientation flips.
std::vector<SymmetricForm> cut_redundant(const SingularSetData& data, int i, int j);

/// True if deleting spheres i and j leaves a unimodular form.
bool cut_is_unimodular(const SingularSetData& data, int i, int j);

bool cut_is_adjacent(const SingularSetData& data, int i, int j);

/// Structural checks: circular rank must be t-2, at least one cut pair must
/// be unimodular, fixed points number t. Exceptional flagged data bypasses
/// the loop checks. Failures land in the verdict, never in exceptions.
ValidationReport validate(const SingularSetData& data);

/// |H_1| of the boundary lens space of a linear plumbing chain: the absolute
/// determinant. 1 means the boundary is S^3, 0 means S^1 x S^2.
Int boundary_h1_order(const SymmetricForm& chain);

/// All valid configurations with t = b2+2 spheres and |e_i| <= euler_bound,
/// deduplicated up to rotation, reflection, sphere orientation flips and
/// global orientation reversal. Results stream to `emit` in a deterministic
/// order.
void enumerate_singular_data(int b2, int euler_bound, long p,
                             const std::function<void(const SingularSetData&)>& emit);

std::vector<SingularSetData> enumerate_singular_data(int b2, int euler_bound, long p = 2);

}  // namespace loopforms::plumbing
