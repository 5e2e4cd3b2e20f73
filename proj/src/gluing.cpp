#include "loopforms/gluing.hpp"

#include <sstream>

#include "loopforms/errors.hpp"

namespace loopforms::gluing {

Gl2Matrix::Gl2Matrix(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  Int det = determinant();
  if (det != 1 && det != -1)
    throw NotUnimodular("GL(2,Z) element must have determinant +-1, got " + det.str());
}

Gl2Matrix Gl2Matrix::operator*(const Gl2Matrix& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
          c_ * o.b_ + d_ * o.d_};
}

std::string Gl2Matrix::to_string() const {
  std::ostringstream os;
  os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
  return os.str();
}

Gl2Matrix clutch(const Int& e) { return {1, 0, e, 1}; }

Gl2Matrix switch_factor() { return {0, 1, 1, 0}; }

Gl2Matrix orientation(int eps) {
  if (eps != 1 && eps != -1) throw Error("orientation sign must be +1 or -1");
  return {1, 0, 0, eps};
}

namespace {

Gl2Matrix orient_factor(OrientFactorForm form, int eps) {
  switch (form) {
    case OrientFactorForm::Fiber: return {1, 0, 0, eps};
    case OrientFactorForm::Base: return {eps, 0, 0, 1};
    case OrientFactorForm::ImproperBase: return {-eps, 0, 0, eps};
    case OrientFactorForm::ImproperFiber: return {eps, 0, 0, -eps};
  }
  throw Error("unknown orientation factor form");
}

const char* arrangement_name(FactorArrangement a) {
  switch (a) {
    case FactorArrangement::SwitchOrientClutch: return "switch-orient-clutch";
    case FactorArrangement::SwitchClutchOrient: return "switch-clutch-orient";
    case FactorArrangement::OrientSwitchClutch: return "orient-switch-clutch";
    case FactorArrangement::OrientClutchSwitch: return "orient-clutch-switch";
    case FactorArrangement::ClutchSwitchOrient: return "clutch-switch-orient";
    case FactorArrangement::ClutchOrientSwitch: return "clutch-orient-switch";
  }
  return "?";
}

const char* orient_form_name(OrientFactorForm f) {
  switch (f) {
    case OrientFactorForm::Fiber: return "fiber";
    case OrientFactorForm::Base: return "base";
    case OrientFactorForm::ImproperBase: return "improper-base";
    case OrientFactorForm::ImproperFiber: return "improper-fiber";
  }
  return "?";
}

}  // namespace

std::vector<FactorOrder> all_conventions() {
  std::vector<FactorOrder> out;
  out.push_back(FactorOrder::default_order());
  for (FactorArrangement a :
       {FactorArrangement::SwitchOrientClutch, FactorArrangement::SwitchClutchOrient,
        FactorArrangement::OrientSwitchClutch, FactorArrangement::OrientClutchSwitch,
        FactorArrangement::ClutchSwitchOrient, FactorArrangement::ClutchOrientSwitch})
    for (OrientFactorForm f : {OrientFactorForm::Fiber, OrientFactorForm::Base,
                               OrientFactorForm::ImproperBase, OrientFactorForm::ImproperFiber})
      for (PoleIndexing pi : {PoleIndexing::Same, PoleIndexing::Next}) {
        FactorOrder o{a, f, pi};
        if (!(o == FactorOrder::default_order())) out.push_back(o);
      }
  return out;
}

std::string format_convention(const FactorOrder& order) {
  std::string s = std::string(arrangement_name(order.arrangement)) + ":" +
                  orient_form_name(order.orient_form) + ":" +
                  (order.pole_indexing == PoleIndexing::Same ? "same-pole" : "next-pole");
  return s;
}

std::optional<FactorOrder> parse_convention(const std::string& name) {
  if (name == "default") return FactorOrder::default_order();
  for (const FactorOrder& o : all_conventions())
    if (format_convention(o) == name) return o;
  return std::nullopt;
}

Gl2Matrix sphere_factor(const plumbing::SingularSetData& data, int i, const FactorOrder& order) {
  const int t = data.sphere_count();
  const int pole = order.pole_indexing == PoleIndexing::Same ? i : (i + 1) % t;
  const Gl2Matrix s = switch_factor();
  const Gl2Matrix o = orient_factor(order.orient_form, data.sphere(pole).sign);
  const Gl2Matrix c = clutch(data.sphere(i).euler);
  switch (order.arrangement) {
    case FactorArrangement::SwitchOrientClutch: return s * o * c;
    case FactorArrangement::SwitchClutchOrient: return s * c * o;
    case FactorArrangement::OrientSwitchClutch: return o * s * c;
    case FactorArrangement::OrientClutchSwitch: return o * c * s;
    case FactorArrangement::ClutchSwitchOrient: return c * s * o;
    case FactorArrangement::ClutchOrientSwitch: return c * o * s;
  }
  throw Error("unknown factor arrangement");
}

Gl2Matrix total_gluing(const plumbing::SingularSetData& data, const FactorOrder& order) {
  const int t = data.sphere_count();
  if (t < 3) throw Error("total gluing requires a loop of at least 3 spheres");
  Gl2Matrix gamma = Gl2Matrix::identity();
  for (int i = 0; i < t; ++i) gamma = sphere_factor(data, i, order) * gamma;
  return gamma;
}

CompatibilityVerdict compatibility(const Gl2Matrix& gamma, long p) {
  if (!is_prime(p)) throw Error("p = " + std::to_string(p) + " is not prime");
  Int det = gamma.determinant();
  if (det != 1 && det != -1) throw NotUnimodular("gluing matrix must be unimodular");

  if (p > 2) {
    if (gamma.is_identity()) return {CompatibilityStatus::TrivialPrincipal,
                                     IncompatibilityReason::None};
    return {CompatibilityStatus::Incompatible, IncompatibilityReason::NotIdentityOddP};
  }

  const Gl2Matrix i = Gl2Matrix::identity();
  const Gl2Matrix j{0, 1, -1, 0};
  if (gamma == i) return {CompatibilityStatus::TrivialPrincipal, IncompatibilityReason::None};
  if (gamma == j || gamma == -j)
    return {CompatibilityStatus::Incompatible, IncompatibilityReason::BaseFiberSplitViolation};
  if (gamma == -i)
    return {CompatibilityStatus::Incompatible,
            IncompatibilityReason::MinusIdentityTorsionViolation};
  return {CompatibilityStatus::Incompatible, IncompatibilityReason::NotInNormalizer};
}

std::vector<plumbing::SingularSetData> standard_calibration_models() {
  using plumbing::SingularSetData;
  using plumbing::SphereData;
  std::vector<SingularSetData> models;
  models.emplace_back(2, std::vector<SphereData>{{Int(1), 1}, {Int(1), 1}, {Int(1), 1}});
  models.emplace_back(
      2, std::vector<SphereData>{{Int(0), 1}, {Int(0), 1}, {Int(0), 1}, {Int(0), 1}});
  return models;
}

FactorOrder calibrate_convention(const std::vector<plumbing::SingularSetData>& models) {
  if (models.empty()) return FactorOrder::default_order();
  std::ostringstream transcript;
  for (const FactorOrder& order : all_conventions()) {
    bool ok = true;
    for (const auto& model : models) {
      Gl2Matrix gamma = total_gluing(model, order);
      if (!gamma.is_identity()) {
        transcript << format_convention(order) << ": gamma = " << gamma.to_string()
                   << " on a model with t = " << model.sphere_count() << "\n";
        ok = false;
        break;
      }
    }
    if (ok) return order;
  }
  throw NoConventionFound("no factor convention closes every model to the identity",
                          transcript.str());
}

}  // namespace loopforms::gluing
