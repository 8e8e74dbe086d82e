#pragma once

// Combinatorial front projections.
//
// A front is read left to right as a word of events acting on a stack of
// horizontal strands numbered 1.. from the bottom:
//
//   U<i>  left cusp: two new strands appear at positions i, i+1
//   C<i>  right cusp: strands i, i+1 are joined and disappear
//   X<i>  crossing: strands i, i+1 swap positions
//
// At a crossing the strand coming from position i+1 descends, so it has the
// smaller slope and passes in front.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "crsurg/core.hpp"
#include "crsurg/error.hpp"

namespace crsurg::front {

struct FrontEvent {
  enum class Kind { Cup, Cap, Cross };
  Kind kind;
  int pos;  // 1-based, counted from the bottom strand
  bool operator==(const FrontEvent&) const = default;
};

struct FrontWord {
  std::vector<FrontEvent> events;
  bool operator==(const FrontWord&) const = default;
};

inline char event_letter(FrontEvent::Kind k) {
  switch (k) {
    case FrontEvent::Kind::Cup: return 'U';
    case FrontEvent::Kind::Cap: return 'C';
    case FrontEvent::Kind::Cross: return 'X';
  }
  return '?';
}

inline std::string print_front_word(const FrontWord& w) {
  std::string out;
  for (const auto& e : w.events) {
    if (!out.empty()) out += ' ';
    out += event_letter(e.kind);
    out += std::to_string(e.pos);
  }
  return out;
}

/// Checks the running strand count; `columns` (token start offsets) are used
/// for diagnostics when available.
inline void validate_front_word(const FrontWord& w, const std::vector<int>& columns = {}) {
  int strands = 0;
  for (std::size_t k = 0; k < w.events.size(); ++k) {
    const auto& e = w.events[k];
    SourcePos at{1, k < columns.size() ? columns[k] : 0};
    const std::string tok = std::string(1, event_letter(e.kind)) + std::to_string(e.pos);
    if (e.kind == FrontEvent::Kind::Cup) {
      if (e.pos < 1 || e.pos > strands + 1)
        throw Error(ErrorKind::PositionError,
                    "cup " + tok + " needs 1 <= i <= " + std::to_string(strands + 1) + " with " +
                        std::to_string(strands) + " strands",
                    at);
      strands += 2;
    } else {
      if (e.pos < 1 || e.pos > strands - 1)
        throw Error(ErrorKind::PositionError,
                    tok + " needs 1 <= i <= " + std::to_string(strands - 1) + " with " + std::to_string(strands) +
                        " strands",
                    at);
      if (e.kind == FrontEvent::Kind::Cap) strands -= 2;
    }
  }
  if (strands != 0)
    throw Error(ErrorKind::OpenDiagram, "front ends with " + std::to_string(strands) + " open strands");
}

inline FrontWord parse_front_word(std::string_view text) {
  FrontWord w;
  std::vector<int> columns;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    FrontEvent::Kind kind;
    if (c == 'U')
      kind = FrontEvent::Kind::Cup;
    else if (c == 'C')
      kind = FrontEvent::Kind::Cap;
    else if (c == 'X')
      kind = FrontEvent::Kind::Cross;
    else
      throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + text[i] + "' in front word",
                  {1, col});
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || i - start > 6)
      throw Error(ErrorKind::SyntaxError, std::string("expected a position after '") + c + "'", {1, col});
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      throw Error(ErrorKind::SyntaxError, "tokens must be separated by whitespace", {1, static_cast<int>(i) + 1});
    w.events.push_back({kind, std::stoi(std::string(text.substr(start, i - start)))});
    columns.push_back(col);
  }
  validate_front_word(w, columns);
  return w;
}

// ---------------------------------------------------------------------------
// Threading.  Every strand is born at a cup and dies at a cap; cups and caps
// glue strands into closed components.

struct Strand {
  std::size_t cup_event = 0;
  std::size_t cap_event = 0;
  bool lower_at_cup = false;  // lower branch of its cup
  bool lower_at_cap = false;  // lower branch of its cap
  std::size_t cup_partner = 0;
  std::size_t cap_partner = 0;
  int component = -1;         // 0-based id, numbered by first cup
};

struct FrontTrace {
  std::vector<Strand> strands;
  /// For every event, the strand ids at (pos, pos+1) just before the event
  /// (for a cup: the two new strands, lower first).
  std::vector<std::pair<std::size_t, std::size_t>> event_strands;
  int num_components = 0;
  /// Component id of each cup/cap event, -1 for crossings.
  std::vector<int> event_component;
};

inline FrontTrace trace_components(const FrontWord& w) {
  validate_front_word(w);
  FrontTrace t;
  std::vector<std::size_t> stack;  // strand ids by position (index 0 = position 1)
  t.event_strands.resize(w.events.size());
  for (std::size_t k = 0; k < w.events.size(); ++k) {
    const auto& e = w.events[k];
    const auto i = static_cast<std::size_t>(e.pos - 1);
    switch (e.kind) {
      case FrontEvent::Kind::Cup: {
        std::size_t lo = t.strands.size(), hi = lo + 1;
        t.strands.push_back({k, 0, true, false, hi, 0, -1});
        t.strands.push_back({k, 0, false, false, lo, 0, -1});
        stack.insert(stack.begin() + static_cast<std::ptrdiff_t>(i), {lo, hi});
        t.event_strands[k] = {lo, hi};
        break;
      }
      case FrontEvent::Kind::Cap: {
        std::size_t lo = stack[i], hi = stack[i + 1];
        t.strands[lo].cap_event = k;
        t.strands[lo].lower_at_cap = true;
        t.strands[lo].cap_partner = hi;
        t.strands[hi].cap_event = k;
        t.strands[hi].lower_at_cap = false;
        t.strands[hi].cap_partner = lo;
        stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(i), stack.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        t.event_strands[k] = {lo, hi};
        break;
      }
      case FrontEvent::Kind::Cross:
        t.event_strands[k] = {stack[i], stack[i + 1]};
        std::swap(stack[i], stack[i + 1]);
        break;
    }
  }
  // Strands are created in cup order, so walking them in id order numbers
  // components by first appearance.
  for (std::size_t s = 0; s < t.strands.size(); ++s) {
    if (t.strands[s].component >= 0) continue;
    const int id = t.num_components++;
    std::size_t cur = s;
    bool via_cap = true;
    while (t.strands[cur].component < 0) {
      t.strands[cur].component = id;
      cur = via_cap ? t.strands[cur].cap_partner : t.strands[cur].cup_partner;
      via_cap = !via_cap;
    }
  }
  t.event_component.assign(w.events.size(), -1);
  for (std::size_t k = 0; k < w.events.size(); ++k)
    if (w.events[k].kind != FrontEvent::Kind::Cross)
      t.event_component[k] = t.strands[t.event_strands[k].first].component;
  return t;
}

// ---------------------------------------------------------------------------
// Orientation and invariants.

struct OrientedFront {
  FrontWord word;
  /// One entry per component id (0-based); missing entries mean Forward.
  std::vector<Orientation> orientation;
  bool operator==(const OrientedFront&) const = default;
};

/// Sign of a crossing given whether the over and under strands run
/// rightward.  Calibrated so that the default-oriented clasp
/// "U1 U1 X2 X2 C1 C1" has linking number +1: strands running in opposite
/// horizontal directions cross positively, equal directions negatively.
inline int crossing_sign(bool over_rightward, bool under_rightward) {
  return over_rightward == under_rightward ? -1 : +1;
}

struct ComponentInvariants {
  std::int64_t tb = 0;
  std::int64_t rot = 0;
  std::int64_t self_writhe = 0;
  std::int64_t up_cusps = 0;
  std::int64_t down_cusps = 0;
  std::int64_t cups = 0;
  std::int64_t caps = 0;
  bool operator==(const ComponentInvariants&) const = default;
};

struct FrontInvariants {
  std::vector<ComponentInvariants> components;
  /// lk[i][j] for component ids i != j; diagonal is 0.
  std::vector<std::vector<std::int64_t>> lk;
  bool operator==(const FrontInvariants&) const = default;
};

/// Horizontal direction of every strand: true = traversed rightward.
/// "Forward" runs the lower branch of the component's first cup rightward.
inline std::vector<bool> strand_directions(const FrontTrace& t, const std::vector<Orientation>& orientation) {
  std::vector<bool> right(t.strands.size(), false);
  std::vector<bool> seen(static_cast<std::size_t>(t.num_components), false);
  for (std::size_t s = 0; s < t.strands.size(); ++s) {
    const auto comp = static_cast<std::size_t>(t.strands[s].component);
    if (seen[comp]) continue;
    seen[comp] = true;
    // s is the lower branch of this component's first cup.
    bool dir = comp < orientation.size() && orientation[comp] == Orientation::Reverse ? false : true;
    std::size_t cur = s;
    bool via_cap = true;
    do {
      right[cur] = dir;
      cur = via_cap ? t.strands[cur].cap_partner : t.strands[cur].cup_partner;
      via_cap = !via_cap;
      dir = !dir;
    } while (cur != s);
  }
  return right;
}

inline FrontInvariants classical_invariants(const OrientedFront& f) {
  const FrontTrace t = trace_components(f.word);
  const auto right = strand_directions(t, f.orientation);
  const auto n = static_cast<std::size_t>(t.num_components);
  FrontInvariants inv;
  inv.components.resize(n);
  std::vector<std::vector<std::int64_t>> mixed(n, std::vector<std::int64_t>(n, 0));

  for (std::size_t k = 0; k < f.word.events.size(); ++k) {
    const auto& e = f.word.events[k];
    const auto [lo, hi] = t.event_strands[k];
    switch (e.kind) {
      case FrontEvent::Kind::Cup: {
        auto& ci = inv.components[static_cast<std::size_t>(t.strands[lo].component)];
        ++ci.cups;
        // Leaving along a rightward lower branch means the cusp is passed downward.
        if (right[lo]) ++ci.down_cusps; else ++ci.up_cusps;
        break;
      }
      case FrontEvent::Kind::Cap: {
        auto& ci = inv.components[static_cast<std::size_t>(t.strands[lo].component)];
        ++ci.caps;
        if (right[lo]) ++ci.up_cusps; else ++ci.down_cusps;
        break;
      }
      case FrontEvent::Kind::Cross: {
        // hi starts above and descends: it is the over strand.
        const int sign = crossing_sign(right[hi], right[lo]);
        const auto a = static_cast<std::size_t>(t.strands[lo].component);
        const auto b = static_cast<std::size_t>(t.strands[hi].component);
        if (a == b) {
          inv.components[a].self_writhe += sign;
        } else {
          mixed[a][b] += sign;
          mixed[b][a] += sign;
        }
        break;
      }
    }
  }
  for (auto& ci : inv.components) {
    ci.tb = ci.self_writhe - ci.caps;
    ci.rot = (ci.down_cusps - ci.up_cusps) / 2;
  }
  inv.lk.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) inv.lk[i][j] = mixed[i][j] / 2;
  return inv;
}

/// Inserts a zigzag (one cup, one cap, no crossings) right after the
/// component's first cup, on that cup's lower branch.  sign = +1 adds two
/// down cusps (rot + 1), sign = -1 two up cusps (rot - 1).
inline OrientedFront stabilize(const OrientedFront& f, int component, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidParameter, "stabilization sign must be +1 or -1");
  const FrontTrace t = trace_components(f.word);
  if (component < 0 || component >= t.num_components)
    throw Error(ErrorKind::UnknownComponent, "front has no component " + std::to_string(component + 1));
  std::size_t first_cup = 0;
  while (t.event_component[first_cup] != component || f.word.events[first_cup].kind != FrontEvent::Kind::Cup)
    ++first_cup;
  const auto right = strand_directions(t, f.orientation);
  const bool rightward = right[t.event_strands[first_cup].first];
  const int i = f.word.events[first_cup].pos;

  // For a rightward strand, U(i) C(i+1) is passed through two down cusps and
  // U(i+1) C(i) through two up cusps; a leftward strand swaps the two.
  const bool below = (sign == 1) == rightward;
  OrientedFront out = f;
  auto at = out.word.events.begin() + static_cast<std::ptrdiff_t>(first_cup) + 1;
  if (below)
    out.word.events.insert(at, {{FrontEvent::Kind::Cup, i}, {FrontEvent::Kind::Cap, i + 1}});
  else
    out.word.events.insert(at, {{FrontEvent::Kind::Cup, i + 1}, {FrontEvent::Kind::Cap, i}});
  return out;
}

}  // namespace crsurg::front
