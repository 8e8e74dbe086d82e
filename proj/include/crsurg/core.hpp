#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crsurg/error.hpp"
#include "crsurg/slope.hpp"

namespace crsurg {

enum class Orientation { Forward, Reverse };

/// Where a component's classical invariants come from when it is drawn as a
/// front: the word text, the 1-based component id inside that word and the
/// traversal direction.
struct FrontBinding {
  std::string word;
  int index = 1;
  Orientation orient = Orientation::Forward;
  bool operator==(const FrontBinding&) const = default;
};

struct LegendrianComponent {
  std::string label;
  std::int64_t tb = 0;
  std::int64_t rot = 0;
  std::string note;
  std::optional<FrontBinding> front;
  bool operator==(const LegendrianComponent&) const = default;
};

/// Symmetric linking numbers between distinct labels; absent pairs are 0.
class LinkingData {
 public:
  void set(const std::string& a, const std::string& b, std::int64_t value) {
    if (a == b) throw Error(ErrorKind::SemanticError, "self-linking of '" + a + "' is not allowed");
    auto key = ordered(a, b);
    if (value == 0)
      entries_.erase(key);
    else
      entries_[key] = value;
  }

  std::int64_t get(const std::string& a, const std::string& b) const {
    if (a == b) return 0;
    auto it = entries_.find(ordered(a, b));
    return it == entries_.end() ? 0 : it->second;
  }

  /// Nonzero entries keyed by (smaller label, larger label).
  const std::map<std::pair<std::string, std::string>, std::int64_t>& entries() const { return entries_; }

  bool operator==(const LinkingData&) const = default;

 private:
  static std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  }
  std::map<std::pair<std::string, std::string>, std::int64_t> entries_;
};

/// Legendrian link with contact Dehn coefficients measured against lambda_c.
struct ContactSurgeryDiagram {
  std::vector<LegendrianComponent> components;
  LinkingData linking;
  std::map<std::string, SlopeQ> coefficients;

  const LegendrianComponent* find(const std::string& label) const {
    for (const auto& c : components)
      if (c.label == label) return &c;
    return nullptr;
  }

  /// True when every coefficient is +1 or -1.
  bool is_pm1() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const auto& kv) {
      return kv.second == SlopeQ(1) || kv.second == SlopeQ(-1);
    });
  }

  bool operator==(const ContactSurgeryDiagram&) const = default;
};

/// Tight contact structure chosen on the thickened torus glued in by a
/// contact round 1-surgery.
struct TightLayerSpec {
  enum class Variant { InvariantStd, NonRotative, RotativePlus, RotativeMinus };

  Variant variant = Variant::InvariantStd;
  std::int64_t value = 0;  // holonomy for NonRotative, m for the rotative layers
  std::int64_t twisting = 0;

  static TightLayerSpec invariant() { return {}; }
  static TightLayerSpec nonrotative(std::int64_t holonomy, std::int64_t twisting = 0) {
    return {Variant::NonRotative, holonomy, twisting};
  }
  static TightLayerSpec rotative_plus(std::int64_t m, std::int64_t twisting = 1) {
    return {Variant::RotativePlus, m, twisting};
  }
  static TightLayerSpec rotative_minus(std::int64_t m, std::int64_t twisting = 1) {
    return {Variant::RotativeMinus, m, twisting};
  }

  /// InvariantStd is identified with the zero-holonomy minimal-twisting layer.
  TightLayerSpec normalized() const {
    if (variant == Variant::InvariantStd) return nonrotative(0, 0);
    return *this;
  }

  bool is_standard() const {
    auto n = normalized();
    return n.variant == Variant::NonRotative && n.value == 0 && n.twisting == 0;
  }

  bool operator==(const TightLayerSpec&) const = default;
};

struct Round1Spec {
  std::pair<std::string, std::string> pair;
  std::int64_t coeff_a = 0;
  std::int64_t coeff_b = 0;
  TightLayerSpec layer;
  bool operator==(const Round1Spec&) const = default;
};

struct Round2Spec {
  std::string knot;
  SlopeQ coeff;
  std::optional<std::size_t> joint_with;
  bool operator==(const Round2Spec&) const = default;
};

struct RoundSurgeryDiagram {
  std::vector<LegendrianComponent> components;
  LinkingData linking;
  std::vector<Round1Spec> round1;
  std::vector<Round2Spec> round2;
  /// Plain contact Dehn surgeries mixed into a round diagram.
  std::map<std::string, SlopeQ> contact_dehn;

  const LegendrianComponent* find(const std::string& label) const {
    for (const auto& c : components)
      if (c.label == label) return &c;
    return nullptr;
  }

  bool operator==(const RoundSurgeryDiagram&) const = default;
};

// ---------------------------------------------------------------------------
// Coefficient calculus.  With lambda_c = tb*mu + lambda, the curve
// p*mu + q*lambda_c equals (p + q*tb)*mu + q*lambda.

inline SlopeQ contact_to_topological(const SlopeQ& c, std::int64_t tb) {
  if (c.is_infinite()) return c;
  return SlopeQ(checked::add(c.num(), checked::mul(c.den(), tb)), c.den());
}

inline SlopeQ topological_to_contact(const SlopeQ& t, std::int64_t tb) {
  if (t.is_infinite()) return t;
  return SlopeQ(checked::sub(t.num(), checked::mul(t.den(), tb)), t.den());
}

/// Dividing-curve slope on the boundary of a standard neighbourhood, 1/tb in
/// canonical coordinates (infinite for tb = 0).
inline TaggedSlope boundary_slope(std::int64_t tb) {
  return {SlopeQ(1, tb), BasisTag::Canonical};
}

/// Reads n off a surgery meridian a*mu + b*lambda_c = n*mu + lambda_c.
inline std::int64_t surgery_meridian_coefficient(std::int64_t a, std::int64_t b) {
  if (b != 1)
    throw Error(ErrorKind::InvalidMeridian, "surgery meridian must meet each dividing curve once (lambda_c coefficient " +
                                                std::to_string(b) + ", expected 1)");
  return a;
}

// ---------------------------------------------------------------------------
// Joint pairs.

struct NicenessReport {
  bool coefficients_equal = false;
  bool round2_unit = false;
  bool layer_standard = false;
  bool nice = false;
  std::string reason;  // empty when nice
};

inline std::optional<std::size_t> joint_partner(const RoundSurgeryDiagram& d, std::size_t idx) {
  for (std::size_t j = 0; j < d.round2.size(); ++j)
    if (d.round2[j].joint_with && *d.round2[j].joint_with == idx) return j;
  return std::nullopt;
}

inline NicenessReport check_nice(const RoundSurgeryDiagram& d, std::size_t idx) {
  if (idx >= d.round1.size())
    throw Error(ErrorKind::InvalidParameter, "round1 index " + std::to_string(idx) + " out of range");
  auto partner = joint_partner(d, idx);
  if (!partner) throw Error(ErrorKind::NoJointPartner, "round1 #" + std::to_string(idx) + " has no round2 partner");

  const Round1Spec& r1 = d.round1[idx];
  const Round2Spec& r2 = d.round2[*partner];
  NicenessReport rep;
  rep.coefficients_equal = r1.coeff_a == r1.coeff_b;
  rep.round2_unit = r2.coeff == SlopeQ(1) || r2.coeff == SlopeQ(-1);
  rep.layer_standard = r1.layer.is_standard();
  rep.nice = rep.coefficients_equal && rep.round2_unit && rep.layer_standard;
  if (!rep.coefficients_equal)
    rep.reason = "coefficient mismatch";
  else if (!rep.round2_unit)
    rep.reason = "round-2 coefficient not +1/-1";
  else if (!rep.layer_standard)
    rep.reason = "layer is not the zero-holonomy minimal-twisting layer";
  return rep;
}

/// Sufficient condition for symplectic fillability: the diagram consists only
/// of nice joint pairs whose round-2 coefficient is -1.
inline bool is_fillable_sufficient(const RoundSurgeryDiagram& d) {
  if (!d.contact_dehn.empty()) return false;
  if (d.round2.size() != d.round1.size()) return false;
  for (std::size_t i = 0; i < d.round1.size(); ++i) {
    auto partner = joint_partner(d, i);
    if (!partner) return false;
    if (d.round1[i].pair.second != d.round2[*partner].knot) return false;
    if (!check_nice(d, i).nice) return false;
    if (d.round2[*partner].coeff != SlopeQ(-1)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation.

enum class ViolationKind {
  DuplicateLabel,
  UnknownLabel,
  SelfLinking,
  MissingCoefficient,
  ExtraCoefficient,
  SamePairLabels,
  ComponentInTwoRound1,
  JointIndexOutOfRange,
  JointMismatch,
  DuplicateJoint,
  InvalidLayer,
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
    case ViolationKind::UnknownLabel: return "UnknownLabel";
    case ViolationKind::SelfLinking: return "SelfLinking";
    case ViolationKind::MissingCoefficient: return "MissingCoefficient";
    case ViolationKind::ExtraCoefficient: return "ExtraCoefficient";
    case ViolationKind::SamePairLabels: return "SamePairLabels";
    case ViolationKind::ComponentInTwoRound1: return "ComponentInTwoRound1";
    case ViolationKind::JointIndexOutOfRange: return "JointIndexOutOfRange";
    case ViolationKind::JointMismatch: return "JointMismatch";
    case ViolationKind::DuplicateJoint: return "DuplicateJoint";
    case ViolationKind::InvalidLayer: return "InvalidLayer";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string detail;
  bool operator==(const Violation&) const = default;
};

namespace detail {

inline void check_labels(const std::vector<LegendrianComponent>& comps, const LinkingData& lk,
                         std::set<std::string>& labels, std::vector<Violation>& out) {
  for (const auto& c : comps)
    if (!labels.insert(c.label).second) out.push_back({ViolationKind::DuplicateLabel, c.label});
  for (const auto& [key, v] : lk.entries()) {
    if (key.first == key.second) out.push_back({ViolationKind::SelfLinking, key.first});
    for (const auto* l : {&key.first, &key.second})
      if (!labels.count(*l)) out.push_back({ViolationKind::UnknownLabel, "lk(" + key.first + ", " + key.second + ")"});
  }
}

}  // namespace detail

inline std::vector<Violation> validate_diagram(const ContactSurgeryDiagram& d) {
  std::vector<Violation> out;
  std::set<std::string> labels;
  detail::check_labels(d.components, d.linking, labels, out);
  for (const auto& c : d.components)
    if (!d.coefficients.count(c.label)) out.push_back({ViolationKind::MissingCoefficient, c.label});
  for (const auto& [label, coeff] : d.coefficients)
    if (!labels.count(label)) out.push_back({ViolationKind::ExtraCoefficient, label});
  return out;
}

inline std::vector<Violation> validate_diagram(const RoundSurgeryDiagram& d) {
  std::vector<Violation> out;
  std::set<std::string> labels;
  detail::check_labels(d.components, d.linking, labels, out);

  std::set<std::string> in_round1;
  for (std::size_t i = 0; i < d.round1.size(); ++i) {
    const auto& r = d.round1[i];
    const std::string where = "round1 #" + std::to_string(i);
    if (r.pair.first == r.pair.second) out.push_back({ViolationKind::SamePairLabels, where});
    for (const auto* l : {&r.pair.first, &r.pair.second}) {
      if (!labels.count(*l)) out.push_back({ViolationKind::UnknownLabel, where + ": " + *l});
      if (!in_round1.insert(*l).second && r.pair.first != r.pair.second)
        out.push_back({ViolationKind::ComponentInTwoRound1, *l});
    }
    using V = TightLayerSpec::Variant;
    const auto& layer = r.layer;
    bool rotative = layer.variant == V::RotativePlus || layer.variant == V::RotativeMinus;
    if (layer.twisting < 0 || (rotative && layer.value < 1) ||
        (layer.variant == V::InvariantStd && (layer.value != 0 || layer.twisting != 0)))
      out.push_back({ViolationKind::InvalidLayer, where});
  }

  std::set<std::size_t> joined;
  for (std::size_t j = 0; j < d.round2.size(); ++j) {
    const auto& r = d.round2[j];
    const std::string where = "round2 #" + std::to_string(j);
    if (!labels.count(r.knot)) out.push_back({ViolationKind::UnknownLabel, where + ": " + r.knot});
    if (r.joint_with) {
      if (*r.joint_with >= d.round1.size()) {
        out.push_back({ViolationKind::JointIndexOutOfRange, where});
      } else {
        if (d.round1[*r.joint_with].pair.second != r.knot) out.push_back({ViolationKind::JointMismatch, where + ": a joint round 2-surgery must sit on the second member of round1 #" + std::to_string(*r.joint_with)});
        if (!joined.insert(*r.joint_with).second) out.push_back({ViolationKind::DuplicateJoint, where});
      }
    }
  }
  for (const auto& [label, coeff] : d.contact_dehn)
    if (!labels.count(label)) out.push_back({ViolationKind::UnknownLabel, "contact_surgery " + label});
  return out;
}

}  // namespace crsurg
