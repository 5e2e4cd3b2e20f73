#include "loopforms/plumbing.hpp"

#include <cstdint>

#include "loopforms/errors.hpp"

namespace loopforms::plumbing {

using detail::IntMatrix;

SingularSetData::SingularSetData(long p, std::vector<SphereData> spheres, int orientation,
                                 ExceptionFlag exception)
    : p_(p), spheres_(std::move(spheres)), orientation_(orientation), exception_(exception) {
  if (!is_prime(p_)) throw Error("p = " + std::to_string(p_) + " is not prime");
  if (orientation_ != 1 && orientation_ != -1) throw Error("orientation must be +1 or -1");
  for (const auto& s : spheres_)
    if (s.sign != 1 && s.sign != -1) throw Error("intersection signs must be +1 or -1");
  if (exception_ == ExceptionFlag::None) {
    if (sphere_count() < 3)
      throw Error("a singular loop needs at least 3 spheres (t = b2 + 2 with b2 >= 1)");
  } else {
    if (!spheres_.empty())
      throw Error("exceptional fixed-point-free data carries no sphere loop");
    if (exception_ == ExceptionFlag::PseudofreeP3B1 && p_ != 3)
      throw Error("the pseudofree exception requires p = 3");
    if (exception_ == ExceptionFlag::FixedPointFreeP2Hyperbolic && p_ != 2)
      throw Error("the fixed-point-free hyperbolic exception requires p = 2");
  }
}

SymmetricForm circular_matrix(const SingularSetData& data) {
  const int t = data.sphere_count();
  if (t < 3) throw Error("circular matrix requires at least 3 spheres");
  IntMatrix m(t, t);
  for (int i = 0; i < t; ++i) m.at(i, i) = data.sphere(i).euler;
  for (int i = 0; i < t; ++i) {
    const int j = (i + 1) % t;
    m.at(i, j) = data.sphere(j).sign;  // sign at the shared pole x_j
    m.at(j, i) = data.sphere(j).sign;
  }
  return SymmetricForm(std::move(m));
}

bool cut_is_adjacent(const SingularSetData& data, int i, int j) {
  const int t = data.sphere_count();
  return (i + 1) % t == j || (j + 1) % t == i;
}

namespace {

// Chain form of one arc of consecutive spheres, couplings normalized to +1
// by flipping sphere orientations along the arc.
SymmetricForm arc_chain(const SingularSetData& data, const std::vector<int>& arc) {
  const int m = static_cast<int>(arc.size());
  IntMatrix c(m, m);
  for (int k = 0; k < m; ++k) c.at(k, k) = data.sphere(arc[k]).euler;
  for (int k = 0; k + 1 < m; ++k) {
    // arc[k+1] follows arc[k] around the loop, so the coupling is the sign
    // at the pole of the later sphere.
    Int s = data.sphere(arc[k + 1]).sign;
    c.at(k, k + 1) = s;
    c.at(k + 1, k) = s;
  }
  for (int k = 1; k < m; ++k) {
    if (c.at(k - 1, k) < 0) {
      c.negate_col(k);
      c.negate_row(k);
    }
  }
  return SymmetricForm(std::move(c));
}

}  // namespace

std::vector<SymmetricForm> cut_redundant(const SingularSetData& data, int i, int j) {
  const int t = data.sphere_count();
  if (t < 3) throw Error("cut requires a loop of at least 3 spheres");
  if (i == j) throw Error("the two redundant spheres must be distinct");
  if (i < 0 || j < 0 || i >= t || j >= t) throw Error("cut index out of range");

  std::vector<int> arc1, arc2;
  for (int k = (i + 1) % t; k != j; k = (k + 1) % t) arc1.push_back(k);
  for (int k = (j + 1) % t; k != i; k = (k + 1) % t) arc2.push_back(k);

  std::vector<SymmetricForm> chains;
  if (!arc1.empty()) chains.push_back(arc_chain(data, arc1));
  if (!arc2.empty()) chains.push_back(arc_chain(data, arc2));
  return chains;
}

bool cut_is_unimodular(const SingularSetData& data, int i, int j) {
  for (const SymmetricForm& chain : cut_redundant(data, i, j)) {
    Int d = detail::determinant(chain.matrix());
    if (d != 1 && d != -1) return false;
  }
  return true;
}

ValidationReport validate(const SingularSetData& data) {
  ValidationReport r;
  if (data.exception() != ExceptionFlag::None) {
    r.valid = true;
    r.fixed_point_count = 0;
    r.circular_rank = 0;
    r.expected_rank = 0;
    r.primitivity_note =
        data.exception() == ExceptionFlag::PseudofreeP3B1
            ? "exceptional case: pseudofree Z_3 x Z_3 action, b2 = 1; no sphere loop to check"
            : "exceptional case: fixed-point-free Z_2 x Z_2 action on the hyperbolic form; "
              "no sphere loop to check";
    return r;
  }

  const int t = data.sphere_count();
  r.expected_rank = t - 2;
  r.fixed_point_count = t;
  SymmetricForm c = circular_matrix(data);
  r.circular_rank = detail::rank(c.matrix());

  bool any_unimodular = false;
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) {
      bool uni = cut_is_unimodular(data, i, j);
      r.cuts_tested.push_back({i, j, uni});
      any_unimodular = any_unimodular || uni;
    }

  r.primitivity_note =
      data.p() == 2
          ? "p = 2: each sphere class is primitive (unit geometric intersection with its neighbor)"
          : "p odd: primitivity follows from connectedness of the singular set; the 2-torsion "
            "caveat is informational only";

  if (r.circular_rank != r.expected_rank) {
    r.valid = false;
    r.reason = "circular matrix has rank " + std::to_string(r.circular_rank) + ", expected t-2 = " +
               std::to_string(r.expected_rank);
  } else if (!any_unimodular) {
    r.valid = false;
    r.reason = "no pair of redundant spheres cuts the loop to a unimodular form";
  } else {
    r.valid = true;
  }
  return r;
}

Int boundary_h1_order(const SymmetricForm& chain) {
  const int n = chain.dimension();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Int& x = chain.at(i, j);
      if (j > i + 1) {
        if (x != 0) throw NotChainShape("plumbing boundary needs a linear chain");
      } else if (x != 1 && x != -1) {
        throw NotChainShape("plumbing boundary needs a connected linear chain");
      }
    }
  return boost::multiprecision::abs(detail::determinant(chain.matrix()));
}

namespace {

// 2x2 integer transfer step for the kernel recursion of the circular matrix:
// row i of C x = 0 reads eps_i x_{i-1} + e_i x_i + eps_{i+1} x_{i+1} = 0.
// The circular matrix has corank exactly 2 iff the cyclic product of these
// steps is the identity.
struct Transfer2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  Transfer2 compose(const Transfer2& rhs) const {  // this * rhs
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d, c * rhs.a + d * rhs.c,
            c * rhs.b + d * rhs.d};
  }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
};

bool corank_two_filter(const std::vector<int>& e, const std::vector<int>& eps) {
  const int t = static_cast<int>(e.size());
  Transfer2 p;
  for (int i = 0; i < t; ++i) {
    const int en = eps[(i + 1) % t];
    Transfer2 step{-static_cast<std::int64_t>(en) * e[i],
                   -static_cast<std::int64_t>(en) * eps[i], 1, 0};
    p = step.compose(p);
  }
  return p.is_identity();
}

// Orbit representative test for dedup: the configuration (e, s) with s the
// product of the intersection signs is kept iff it is the lexicographically
// greatest member of its orbit under rotation, reflection and global
// orientation reversal (sphere orientation flips are already folded into s).
bool is_canonical(const std::vector<int>& e, int s) {
  const int t = static_cast<int>(e.size());
  std::vector<int> cand(t);
  for (int g = 0; g < 2; ++g) {
    const int flip = g == 0 ? 1 : -1;
    const int s2 = (t % 2 == 0) ? s : s * flip;
    for (int dir = 0; dir < 2; ++dir) {
      for (int r = 0; r < t; ++r) {
        for (int k = 0; k < t; ++k) {
          int idx = dir == 0 ? (r + k) % t : ((r - k) % t + t) % t;
          cand[k] = flip * e[idx];
        }
        if (cand > e) return false;
        if (cand == e && s2 > s) return false;
      }
    }
  }
  return true;
}

}  // namespace

void enumerate_singular_data(int b2, int euler_bound, long p,
                             const std::function<void(const SingularSetData&)>& emit) {
  if (b2 < 1) throw Error("b2 must be at least 1");
  if (euler_bound < 0) throw Error("euler bound must be non-negative");
  if (!is_prime(p)) throw Error("p = " + std::to_string(p) + " is not prime");
  const int t = b2 + 2;
  // TODO: partition the leading e-coordinate across threads once bounds
  // beyond 4 become interesting; the classes are independent.
  // The int64 transfer products stay well below overflow at desk scale.
  if (t * (64 - __builtin_clzll(static_cast<unsigned long long>(euler_bound) + 2)) > 60)
    throw Error("euler bound too large for the enumeration fast path");

  std::vector<int> e(t, -euler_bound);
  std::vector<int> eps(t, 1);
  bool more = true;
  while (more) {
    for (int cls = 0; cls < 2; ++cls) {
      const int s = cls == 0 ? 1 : -1;
      eps.assign(t, 1);
      eps[t - 1] = s;
      if (corank_two_filter(e, eps) && is_canonical(e, s)) {
        std::vector<SphereData> spheres(t);
        for (int k = 0; k < t; ++k) spheres[k] = SphereData{Int(e[k]), eps[k]};
        SingularSetData data(p, std::move(spheres));
        if (validate(data).valid) emit(data);
      }
    }
    int k = t - 1;
    while (k >= 0 && e[k] == euler_bound) {
      e[k] = -euler_bound;
      --k;
    }
    if (k < 0) more = false;
    else ++e[k];
  }
}

std::vector<SingularSetData> enumerate_singular_data(int b2, int euler_bound, long p) {
  std::vector<SingularSetData> out;
  enumerate_singular_data(b2, euler_bound, p,
                          [&](const SingularSetData& d) { out.push_back(d); });
  return out;
}

}  // namespace loopforms::plumbing
