#pragma once

// Gluing two annulus arc systems into a convex torus.
//
// Torus coordinates: the horizontal circle is the common boundary direction,
// the vertical circle runs down through A (top -> bottom) and back up
// through B.  Positions on a boundary circle are integers modulo
// D = 4*n0*n1: top mark j sits at (2j+1)*n1, bottom mark j at (2j+1)*n0.
//
//   v  = (#A arcs crossed top->bottom) - (#A arcs crossed bottom->top)
//   h  = (total horizontal displacement) / D
//
// A parallel arc (a, b) runs parallel to the boundary segment a -> b, so
// travelling a -> b moves forward.  Classes are reported with v > 0, or
// v = 0 and h >= 0.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crsurg/arcs.hpp"
#include "crsurg/core.hpp"
#include "crsurg/error.hpp"

namespace crsurg {

enum class Annulus { A, B };

struct GluedStep {
  Annulus annulus = Annulus::A;
  bool traversing = true;
  std::size_t index = 0;  // into the canonical traversing / parallel list
  bool forward = true;    // top->bottom, or a->b for parallel arcs
  bool operator==(const GluedStep&) const = default;
};

struct GluedCurve {
  std::int64_t h = 0;
  std::int64_t v = 0;
  std::vector<GluedStep> steps;
  bool contractible() const { return h == 0 && v == 0; }
};

struct GluedCurves {
  std::vector<GluedCurve> curves;
};

namespace detail {

struct Endpoint {
  Side side;
  int mark;
  auto operator<=>(const Endpoint&) const = default;
};

// Arc viewed from one end: where it leads, and displacement / vertical step.
struct ArcEnd {
  GluedStep step;
  Endpoint other;
  std::int64_t dx = 0;
  std::int64_t dv = 0;
};

inline std::int64_t mark_pos(const ArcConfig& c, Side s, std::int64_t mark) {
  return s == Side::Top ? (2 * mark + 1) * c.n1 : (2 * mark + 1) * c.n0;
}

// Map from each (side, mark) of the annulus's own numbering to the arc end there.
inline std::map<Endpoint, ArcEnd> arc_ends(const ArcConfig& c, Annulus which) {
  const std::int64_t D = 4 * static_cast<std::int64_t>(c.n0) * c.n1;
  std::map<Endpoint, ArcEnd> out;
  const auto k = static_cast<std::int64_t>(c.traversing.size());
  if (k > 0) {
    std::vector<int> tops, bottoms;
    for (const auto& t : c.traversing) {
      tops.push_back(t.top);
      bottoms.push_back(t.bottom);
    }
    std::sort(tops.begin(), tops.end());
    std::sort(bottoms.begin(), bottoms.end());
    const std::int64_t J = c.winding();
    for (std::size_t idx = 0; idx < c.traversing.size(); ++idx) {
      const auto& t = c.traversing[idx];
      const auto i = static_cast<std::int64_t>(std::lower_bound(tops.begin(), tops.end(), t.top) - tops.begin());
      const std::int64_t lift = floor_div(i + J, k);
      const std::int64_t dx = mark_pos(c, Side::Bottom, t.bottom) + lift * D - mark_pos(c, Side::Top, t.top);
      const std::int64_t dv = which == Annulus::A ? 1 : 0;
      out[{Side::Top, t.top}] = {{which, true, idx, true}, {Side::Bottom, t.bottom}, dx, dv};
      out[{Side::Bottom, t.bottom}] = {{which, true, idx, false}, {Side::Top, t.top}, -dx, -dv};
    }
  }
  for (std::size_t idx = 0; idx < c.parallel.size(); ++idx) {
    const auto& p = c.parallel[idx];
    const std::int64_t diff = mark_pos(c, p.side, p.b) - mark_pos(c, p.side, p.a);
    const std::int64_t dx = ((diff % D) + D) % D;
    out[{p.side, p.a}] = {{which, false, idx, true}, {p.side, p.b}, dx, 0};
    out[{p.side, p.b}] = {{which, false, idx, false}, {p.side, p.a}, -dx, 0};
  }
  return out;
}

}  // namespace detail

/// Glues A and B along both boundary circles.  A's top mark j is identified
/// with B's top mark j + offset_top (mod 2n0); bottom likewise.  Offsets
/// beyond one period add Dehn twists to the identification.
inline GluedCurves glue_annuli(const ArcConfig& a_in, const ArcConfig& b_in, std::int64_t offset_top,
                               std::int64_t offset_bottom) {
  if (a_in.n0 != b_in.n0 || a_in.n1 != b_in.n1)
    throw Error(ErrorKind::MarkMismatch, "annuli disagree on mark counts: arcs(" + std::to_string(a_in.n0) + "," +
                                             std::to_string(a_in.n1) + ") vs arcs(" + std::to_string(b_in.n0) + "," +
                                             std::to_string(b_in.n1) + ")");
  validate_arc_config(a_in);
  validate_arc_config(b_in);
  const ArcConfig a = a_in.canonical(), b = b_in.canonical();
  const std::int64_t D = 4 * static_cast<std::int64_t>(a.n0) * a.n1;
  const int nt = a.marks(Side::Top), nb = a.marks(Side::Bottom);

  const auto ends_a = detail::arc_ends(a, Annulus::A);
  const auto ends_b = detail::arc_ends(b, Annulus::B);

  // B mark m on a side sits where A mark m - offset sits; B coordinates are
  // shifted by offset * (mark spacing).
  const std::int64_t shift_top = checked::mul(offset_top, 2 * static_cast<std::int64_t>(a.n1));
  const std::int64_t shift_bottom = checked::mul(offset_bottom, 2 * static_cast<std::int64_t>(a.n0));
  auto to_b = [&](const detail::Endpoint& e) -> detail::Endpoint {
    const std::int64_t off = e.side == Side::Top ? offset_top : offset_bottom;
    return {e.side, detail::floor_mod(e.mark + off, e.side == Side::Top ? nt : nb)};
  };
  auto from_b = [&](const detail::Endpoint& e) -> detail::Endpoint {
    const std::int64_t off = e.side == Side::Top ? offset_top : offset_bottom;
    return {e.side, detail::floor_mod(e.mark - off, e.side == Side::Top ? nt : nb)};
  };
  auto shift_of = [&](Side s) { return s == Side::Top ? shift_top : shift_bottom; };

  std::map<std::pair<bool, std::size_t>, bool> used_a;
  GluedCurves out;
  auto visit_order = [&](const detail::ArcEnd& e) { return std::make_pair(e.step.traversing, e.step.index); };
  // Start every curve on the first unused A arc in canonical order, traversing arcs first.
  std::vector<detail::Endpoint> starts;
  for (const auto& t : a.traversing) starts.push_back({Side::Top, t.top});
  for (const auto& p : a.parallel) starts.push_back({p.side, p.a});

  for (const auto& start : starts) {
    const auto& first = ends_a.at(start);
    if (used_a[visit_order(first)]) continue;
    GluedCurve curve;
    std::int64_t dx = 0;
    detail::Endpoint at = start;
    for (;;) {
      const auto& ea = ends_a.at(at);
      used_a[visit_order(ea)] = true;
      curve.steps.push_back(ea.step);
      dx = checked::add(dx, ea.dx);
      curve.v += ea.dv;
      at = ea.other;
      const detail::Endpoint bstart = to_b(at);
      const auto& eb = ends_b.at(bstart);
      curve.steps.push_back(eb.step);
      // Displacement in A coordinates: endpoints shift by -shift(side).
      dx = checked::add(dx, eb.dx - shift_of(eb.other.side) + shift_of(bstart.side));
      at = from_b(eb.other);
      if (at == start) break;
      if (curve.steps.size() > 4 * static_cast<std::size_t>(nt + nb))
        throw Error(ErrorKind::InternalError, "dividing curve trace did not close");
    }
    if (dx % D != 0) throw Error(ErrorKind::InternalError, "closed dividing curve with fractional winding");
    curve.h = dx / D;
    if (curve.v < 0 || (curve.v == 0 && curve.h < 0)) {
      curve.h = -curve.h;
      curve.v = -curve.v;
      std::reverse(curve.steps.begin(), curve.steps.end());
      for (auto& s : curve.steps) s.forward = !s.forward;
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

/// Giroux's criterion on a torus: a contractible dividing curve means every
/// neighbourhood is overtwisted.
inline bool giroux_overtwisted(const GluedCurves& g) {
  if (g.curves.empty()) throw Error(ErrorKind::EmptyDividingSet, "convex torus with empty dividing set");
  return std::any_of(g.curves.begin(), g.curves.end(), [](const GluedCurve& c) { return c.contractible(); });
}

/// Annulus picture of a layer with 2n marks per side.  Non-rotative layers
/// give 2n traversing arcs whose winding is the holonomy; rotative layers
/// give only boundary-parallel arcs (t0~t1, t2~t3, ... on both sides).
inline ArcConfig layer_to_annulus(const TightLayerSpec& layer_in, int n) {
  if (n < 1 || n > 10000) throw Error(ErrorKind::InvalidParameter, "arcs per side must be in [1, 10000]");
  const TightLayerSpec layer = layer_in.normalized();
  if (layer.twisting < 0) throw Error(ErrorKind::InvalidParameter, "twisting must be non-negative");
  ArcConfig c;
  c.n0 = n;
  c.n1 = n;
  switch (layer.variant) {
    case TightLayerSpec::Variant::NonRotative: {
      if (layer.twisting >= 1)
        throw Error(ErrorKind::Unsupported, "no annulus model for non-rotative layers with positive twisting");
      const std::int64_t k = 2 * static_cast<std::int64_t>(n);
      for (std::int64_t i = 0; i < k; ++i)
        c.traversing.push_back({static_cast<int>(i), detail::floor_mod(i + layer.value, k), layer.value});
      break;
    }
    case TightLayerSpec::Variant::RotativePlus:
    case TightLayerSpec::Variant::RotativeMinus:
      if (layer.value < 1) throw Error(ErrorKind::InvalidParameter, "rotative layer index must be positive");
      for (int i = 0; i < 2 * n; i += 2) {
        c.parallel.push_back({Side::Top, i, i + 1});
        c.parallel.push_back({Side::Bottom, i, i + 1});
      }
      break;
    case TightLayerSpec::Variant::InvariantStd:
      break;
  }
  return c.canonical();
}

}  // namespace crsurg
