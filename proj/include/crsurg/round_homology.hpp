#pragma once

#include <string>
#include <vector>

#include "crsurg/bridge.hpp"
#include "crsurg/core.hpp"
#include "crsurg/homology.hpp"

namespace crsurg {

/// First homology of every connected piece of a round surgery diagram.
///   - only nice joint pairs: one piece, via the equivalent (+-1)-diagram
///   - one round 1-surgery on a two-component link: one piece
///   - one round 2-surgery on a knot: two pieces (outer, inner)
inline std::vector<H1Class> h1_round_diagram(const RoundSurgeryDiagram& rd) {
  if (auto v = validate_diagram(rd); !v.empty())
    throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail);

  if (!rd.round1.empty() && rd.contact_dehn.empty() && rd.round1.size() == rd.round2.size()) {
    bool all_joint = true;
    for (std::size_t i = 0; i < rd.round1.size() && all_joint; ++i) {
      auto partner = joint_partner(rd, i);
      all_joint = partner && check_nice(rd, i).nice;
    }
    if (all_joint) return {h1_dehn(joint_pairs_to_pm1(rd))};
  }
  if (rd.round1.size() == 1 && rd.round2.empty() && rd.contact_dehn.empty())
    return {h1_round1(rd, rd.round1.front())};
  if (rd.round1.empty() && rd.round2.size() == 1 && rd.contact_dehn.empty() && rd.components.size() == 1) {
    const auto& r2 = rd.round2.front();
    const auto* c = rd.find(r2.knot);
    if (!c) throw Error(ErrorKind::UnknownComponent, "unknown component '" + r2.knot + "'");
    const auto h = h1_round2(c->tb, r2.coeff);
    return {h.outer, h.inner};
  }

  std::string offending = "diagram";
  if (!rd.contact_dehn.empty())
    offending = "contact_surgery " + rd.contact_dehn.begin()->first;
  else if (!rd.round1.empty())
    offending = "round1 (" + rd.round1.front().pair.first + ", " + rd.round1.front().pair.second + ")";
  else if (!rd.round2.empty())
    offending = "round2 " + rd.round2.front().knot;
  throw Error(ErrorKind::UnsupportedComposition,
              "homology supports only nice joint pairs, a single round 1-surgery or a single round 2-surgery; offending: " +
                  offending);
}

}  // namespace crsurg
