#pragma once

// Converting between contact (+-1)-surgery diagrams and round surgery
// diagrams made of nice contact joint pairs.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crsurg/core.hpp"
#include "crsurg/error.hpp"
#include "crsurg/homology.hpp"

namespace crsurg {

// ---------------------------------------------------------------------------
// Contact Kirby move of type 1.
//
// K is a Legendrian unknot with tb = -m carrying contact +1; K_1..K_m are
// push-offs of a single stabilisation of K carrying contact -1.  Push-off
// linking equals tb of the knot being pushed, so lk(K, K_i) = -m and
// lk(K_i, K_j) = -m-1.  The pair of topological framings (1-m, -m-2) with
// this linking pattern has unimodular linking matrix for every m.

enum class GadgetLinking {
  PushoffChain,     // lk(K,K_i) = -m, lk(K_i,K_j) = -m-1
  AllPushoffsOfK,   // every pair links -m
};

inline std::string_view to_string(GadgetLinking g) {
  return g == GadgetLinking::PushoffChain ? "chain" : "star";
}

namespace detail {

inline ContactSurgeryDiagram gadget_unchecked(std::int64_t m, GadgetLinking linking, const std::string& prefix) {
  ContactSurgeryDiagram d;
  const std::string k = prefix + "K";
  d.components.push_back({k, -m, m - 1, "", std::nullopt});
  d.coefficients.emplace(k, SlopeQ(1));
  for (std::int64_t i = 1; i <= m; ++i) {
    const std::string ki = prefix + "K" + std::to_string(i);
    d.components.push_back({ki, -m - 1, m, "", std::nullopt});
    d.coefficients.emplace(ki, SlopeQ(-1));
    d.linking.set(k, ki, -m);
    for (std::int64_t j = 1; j < i; ++j)
      d.linking.set(prefix + "K" + std::to_string(j), ki, linking == GadgetLinking::PushoffChain ? -m - 1 : -m);
  }
  return d;
}

}  // namespace detail

/// The cosmetic (+-1)-presentation of the standard 3-sphere used by the
/// bridge.  Checked against the homology oracle before it is returned.
inline ContactSurgeryDiagram kirby1_gadget(std::int64_t m, GadgetLinking linking = GadgetLinking::PushoffChain,
                                           const std::string& prefix = "") {
  if (m <= 0) throw Error(ErrorKind::InvalidParameter, "gadget parameter m must be positive, got " + std::to_string(m));
  if (m > 4096) throw Error(ErrorKind::InvalidParameter, "gadget parameter m too large");
  ContactSurgeryDiagram d = detail::gadget_unchecked(m, linking, prefix);
  const BigInt det = determinant(topological_linking_matrix(d));
  const H1Class h = h1_dehn(d);
  if ((det != 1 && det != -1) || !h.is_trivial())
    throw Error(ErrorKind::GadgetSelfTestFailed, "gadget m=" + std::to_string(m) + " with " +
                                                     std::string(to_string(linking)) + " linking fails: det " +
                                                     det.str() + ", H1 " + h.str());
  return d;
}

// ---------------------------------------------------------------------------
// (+-1)-diagram -> round diagram of nice joint pairs.

struct GadgetParams {
  std::int64_t m = 1;   // case 2 and case 4
  std::int64_t m1 = 1;  // case 3, first gadget
  std::int64_t m2 = 1;  // case 3, second gadget
};

struct GadgetInsertion {
  std::int64_t m = 1;  // parameter passed to kirby1_gadget
  std::vector<std::string> labels;
};

struct PlannedPair {
  std::string a;
  std::string b;
  std::int64_t k = 1;
  std::int64_t r2 = 1;
};

struct PairingPlan {
  int case_id = 1;
  std::vector<GadgetInsertion> gadgets;
  std::vector<PlannedPair> pairs;
};

struct PairingResult {
  RoundSurgeryDiagram diagram;
  PairingPlan plan;
};

inline int parity_case(std::size_t n_plus, std::size_t n_minus) {
  const bool p = n_plus % 2, q = n_minus % 2;
  if (!p && !q) return 1;
  if (p && !q) return 2;
  if (!p && q) return 3;
  return 4;
}

namespace detail {

inline void require_pm1(const ContactSurgeryDiagram& d) {
  if (auto v = validate_diagram(d); !v.empty())
    throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail);
  for (const auto& c : d.components) {
    auto it = d.coefficients.find(c.label);
    if (it == d.coefficients.end() || (it->second != SlopeQ(1) && it->second != SlopeQ(-1)))
      throw Error(ErrorKind::NotPm1Diagram, "component '" + c.label + "' does not carry contact coefficient +1 or -1");
  }
}

inline std::string fresh_prefix(const std::set<std::string>& taken, std::size_t& counter, std::int64_t m) {
  for (;;) {
    const std::string prefix = "g" + std::to_string(++counter) + "_";
    bool clash = false;
    for (std::int64_t i = 0; i <= m && !clash; ++i)
      clash = taken.count(prefix + "K" + (i ? std::to_string(i) : std::string())) > 0;
    if (!clash) return prefix;
  }
}

}  // namespace detail

/// Adds gadgets according to the parities of #(+1) and #(-1), then pairs
/// equal-coefficient components in label order into nice joint pairs with
/// round-1 coefficients (k, k), zero-holonomy layer and round-2 coefficient
/// equal to the shared contact coefficient.
inline PairingResult pair_pm1_diagram(const ContactSurgeryDiagram& d, std::int64_t k = 1, GadgetParams params = {}) {
  detail::require_pm1(d);
  if (params.m < 1 || params.m1 < 1 || params.m2 < 1)
    throw Error(ErrorKind::InvalidParameter, "gadget parameters must be positive");

  ContactSurgeryDiagram work = d;
  std::size_t n_plus = 0, n_minus = 0;
  for (const auto& [label, c] : d.coefficients) (c == SlopeQ(1) ? n_plus : n_minus)++;

  PairingResult out;
  PairingPlan& plan = out.plan;
  plan.case_id = parity_case(n_plus, n_minus);
  std::vector<std::int64_t> gadget_ms;
  switch (plan.case_id) {
    case 2: gadget_ms = {checked::mul(2, params.m)}; break;
    case 3: gadget_ms = {checked::add(checked::mul(2, params.m1), 1), checked::mul(2, params.m2)}; break;
    case 4: gadget_ms = {checked::add(checked::mul(2, params.m), 1)}; break;
    default: break;
  }

  std::set<std::string> taken;
  for (const auto& c : d.components) taken.insert(c.label);
  std::size_t counter = 0;
  for (std::int64_t gm : gadget_ms) {
    const std::string prefix = detail::fresh_prefix(taken, counter, gm);
    const ContactSurgeryDiagram g = kirby1_gadget(gm, GadgetLinking::PushoffChain, prefix);
    GadgetInsertion ins{gm, {}};
    for (const auto& c : g.components) {
      ins.labels.push_back(c.label);
      taken.insert(c.label);
      work.components.push_back(c);
      work.coefficients.emplace(c.label, g.coefficients.at(c.label));
    }
    for (const auto& [key, v] : g.linking.entries()) work.linking.set(key.first, key.second, v);
    plan.gadgets.push_back(std::move(ins));
  }

  std::vector<std::string> plus, minus;
  for (const auto& [label, c] : work.coefficients) (c == SlopeQ(1) ? plus : minus).push_back(label);
  if (plus.size() % 2 || minus.size() % 2) throw Error(ErrorKind::InternalError, "gadget insertion left an odd count");

  RoundSurgeryDiagram& rd = out.diagram;
  rd.components = work.components;
  rd.linking = work.linking;
  auto emit = [&](const std::vector<std::string>& labels, std::int64_t r2) {
    for (std::size_t i = 0; i + 1 < labels.size(); i += 2) {
      const std::size_t idx = rd.round1.size();
      rd.round1.push_back({{labels[i], labels[i + 1]}, k, k, TightLayerSpec::nonrotative(0, 0)});
      rd.round2.push_back({labels[i + 1], SlopeQ(r2), idx});
      plan.pairs.push_back({labels[i], labels[i + 1], k, r2});
    }
  };
  emit(plus, 1);
  emit(minus, -1);

  for (std::size_t i = 0; i < rd.round1.size(); ++i)
    if (!check_nice(rd, i).nice) throw Error(ErrorKind::InternalError, "constructed pair is not nice");
  return out;
}

// ---------------------------------------------------------------------------
// Round diagram of nice joint pairs -> (+-1)-diagram.

inline ContactSurgeryDiagram joint_pairs_to_pm1(const RoundSurgeryDiagram& rd) {
  if (auto v = validate_diagram(rd); !v.empty())
    throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail);
  ContactSurgeryDiagram d;
  d.components = rd.components;
  d.linking = rd.linking;
  std::vector<bool> joint_round2(rd.round2.size(), false);
  for (std::size_t i = 0; i < rd.round1.size(); ++i) {
    const auto& r1 = rd.round1[i];
    auto partner = joint_partner(rd, i);
    auto not_nice = [&](const std::string& why) {
      return Error(ErrorKind::NotNice, "round1 #" + std::to_string(i) + " (" + r1.pair.first + ", " + r1.pair.second +
                                           "): " + why);
    };
    if (!partner) throw not_nice("no round-2 partner");
    const auto& r2 = rd.round2[*partner];
    if (r2.knot != r1.pair.first && r2.knot != r1.pair.second) throw not_nice("round-2 knot is not a pair member");
    const auto rep = check_nice(rd, i);
    if (!rep.nice) throw not_nice(rep.reason);
    joint_round2[*partner] = true;
    d.coefficients[r1.pair.first] = r2.coeff;
    d.coefficients[r1.pair.second] = r2.coeff;
  }
  for (std::size_t j = 0; j < rd.round2.size(); ++j)
    if (!joint_round2[j])
      throw Error(ErrorKind::UnsupportedComposition, "round2 on '" + rd.round2[j].knot + "' is not part of a joint pair");
  for (const auto& [label, c] : rd.contact_dehn) {
    if (d.coefficients.count(label))
      throw Error(ErrorKind::UnsupportedComposition, "component '" + label + "' carries both a joint pair and a Dehn surgery");
    d.coefficients[label] = c;
  }
  for (const auto& c : d.components)
    if (!d.coefficients.count(c.label))
      throw Error(ErrorKind::InvalidParameter, "component '" + c.label + "' is not covered by any surgery");
  return d;
}

// ---------------------------------------------------------------------------
// Realisations of Legendrian surgeries as contact round surgeries.

/// Contact round 1-surgery on a Legendrian pair with identical coefficients
/// on both members (default +1) and the invariant layer.
inline Round1Spec adachi_round1(const std::vector<LegendrianComponent>& components,
                                const std::pair<std::string, std::string>& pair, std::int64_t coefficient = 1) {
  if (pair.first == pair.second)
    throw Error(ErrorKind::InvalidParameter, "round 1-surgery needs two distinct components, got '" + pair.first + "' twice");
  for (const auto* label : {&pair.first, &pair.second})
    if (std::none_of(components.begin(), components.end(), [&](const auto& c) { return c.label == *label; }))
      throw Error(ErrorKind::UnknownComponent, "unknown component '" + *label + "'");
  return {pair, coefficient, coefficient, TightLayerSpec::invariant()};
}

/// Contact round 2-surgery whose surgery meridian is a*mu + b*lambda_c.
inline Round2Spec adachi_round2_realize(const std::string& knot, std::int64_t a, std::int64_t b) {
  return {knot, SlopeQ(surgery_meridian_coefficient(a, b)), std::nullopt};
}

}  // namespace crsurg
