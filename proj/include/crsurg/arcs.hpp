#pragma once

// Dividing-arc systems on an annulus S^1 x [0,1].
//
// The top circle carries 2*n0 marked points 0..2n0-1 and the bottom circle
// 2*n1 points, both numbered in the same circular direction.  Arcs are
//
//   traversing  top point -> bottom point
//   parallel    both ends on one side; it cuts off the disk containing the
//               marks a, a+1, ..., b (read cyclically)
//
// Disjoint traversing arcs preserve the cyclic order, so the whole family is
// fixed by one integer: the winding J, meaning the i-th traversing endpoint
// on top (sorted) runs to the (i+J)-th traversing endpoint on the bottom,
// counted in the universal cover.  Every traversing arc carries this J.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "crsurg/error.hpp"
#include "crsurg/slope.hpp"

namespace crsurg {

enum class Side { Top, Bottom };

struct TraversingArc {
  int top = 0;
  int bottom = 0;
  std::int64_t winding = 0;
  auto operator<=>(const TraversingArc&) const = default;
};

struct ParallelArc {
  Side side = Side::Top;
  int a = 0;
  int b = 0;
  auto operator<=>(const ParallelArc&) const = default;
};

struct ArcConfig {
  int n0 = 1;  // top carries 2*n0 marks
  int n1 = 1;  // bottom carries 2*n1 marks
  std::vector<TraversingArc> traversing;
  std::vector<ParallelArc> parallel;

  int marks(Side s) const { return 2 * (s == Side::Top ? n0 : n1); }

  std::int64_t winding() const { return traversing.empty() ? 0 : traversing.front().winding; }

  /// Sorted arc lists; canonical configurations compare equal iff isotopic
  /// rel the marked points.
  ArcConfig canonical() const {
    ArcConfig c = *this;
    std::sort(c.traversing.begin(), c.traversing.end());
    std::sort(c.parallel.begin(), c.parallel.end());
    return c;
  }

  auto operator<=>(const ArcConfig&) const = default;
};

namespace detail {

inline int floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t m) { return checked::floor_div(a, m); }

/// Marks strictly inside the cyclic interval a -> b.
inline std::vector<int> interior(int a, int b, int n) {
  std::vector<int> out;
  for (int x = (a + 1) % n; x != b; x = (x + 1) % n) out.push_back(x);
  return out;
}

inline std::set<int> closed_interval(int a, int b, int n) {
  std::set<int> out{a};
  for (int x = (a + 1) % n; x != b; x = (x + 1) % n) out.insert(x);
  out.insert(b);
  return out;
}

}  // namespace detail

/// Returns a description of the first broken invariant, or nullopt.
inline std::optional<std::string> arc_config_problem(const ArcConfig& cfg) {
  if (cfg.n0 < 1 || cfg.n1 < 1) return "n0 and n1 must be positive";
  const int nt = cfg.marks(Side::Top), nb = cfg.marks(Side::Bottom);
  std::vector<int> used_top(static_cast<std::size_t>(nt), 0), used_bottom(static_cast<std::size_t>(nb), 0);
  auto use = [](std::vector<int>& used, int p, int n, const char* side) -> std::optional<std::string> {
    if (p < 0 || p >= n) return std::string(side) + " mark " + std::to_string(p) + " out of range";
    if (used[static_cast<std::size_t>(p)]++) return std::string(side) + " mark " + std::to_string(p) + " used twice";
    return std::nullopt;
  };
  for (const auto& t : cfg.traversing) {
    if (auto e = use(used_top, t.top, nt, "top")) return e;
    if (auto e = use(used_bottom, t.bottom, nb, "bottom")) return e;
  }
  for (const auto& p : cfg.parallel) {
    const int n = cfg.marks(p.side);
    auto& used = p.side == Side::Top ? used_top : used_bottom;
    const char* name = p.side == Side::Top ? "top" : "bottom";
    if (p.a == p.b) return std::string("parallel arc with equal ends on ") + name;
    if (auto e = use(used, p.a, n, name)) return e;
    if (auto e = use(used, p.b, n, name)) return e;
  }
  for (int p = 0; p < nt; ++p)
    if (!used_top[static_cast<std::size_t>(p)]) return "top mark " + std::to_string(p) + " is not an arc endpoint";
  for (int p = 0; p < nb; ++p)
    if (!used_bottom[static_cast<std::size_t>(p)]) return "bottom mark " + std::to_string(p) + " is not an arc endpoint";

  // Traversing arcs: common winding J and order-preserving matching.
  if (!cfg.traversing.empty()) {
    auto arcs = cfg.traversing;
    std::sort(arcs.begin(), arcs.end());
    std::vector<int> bottoms;
    for (const auto& t : arcs) bottoms.push_back(t.bottom);
    std::sort(bottoms.begin(), bottoms.end());
    const auto k = static_cast<std::int64_t>(arcs.size());
    const std::int64_t J = arcs.front().winding;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].winding != J) return "traversing arcs must share one winding";
      const int expected = bottoms[static_cast<std::size_t>(detail::floor_mod(static_cast<std::int64_t>(i) + J, k))];
      if (arcs[i].bottom != expected) return "traversing arcs cross (matching does not respect the winding)";
    }
  }

  // Parallel arcs: cut-off disk free of traversing endpoints, laminar per side.
  for (Side side : {Side::Top, Side::Bottom}) {
    const int n = cfg.marks(side);
    std::set<int> traversing_ends;
    for (const auto& t : cfg.traversing) traversing_ends.insert(side == Side::Top ? t.top : t.bottom);
    std::vector<std::set<int>> intervals;
    for (const auto& p : cfg.parallel) {
      if (p.side != side) continue;
      for (int x : detail::interior(p.a, p.b, n))
        if (traversing_ends.count(x)) return "parallel arc encloses a traversing endpoint";
      intervals.push_back(detail::closed_interval(p.a, p.b, n));
    }
    for (std::size_t i = 0; i < intervals.size(); ++i)
      for (std::size_t j = i + 1; j < intervals.size(); ++j) {
        const auto& A = intervals[i];
        const auto& B = intervals[j];
        std::size_t common = 0;
        for (int x : A) common += B.count(x);
        const bool disjoint = common == 0;
        const bool nested = (common == A.size() && A.size() < B.size()) || (common == B.size() && B.size() < A.size());
        if (!disjoint && !nested) return "parallel arcs intersect";
      }
  }
  return std::nullopt;
}

inline void validate_arc_config(const ArcConfig& cfg) {
  if (auto problem = arc_config_problem(cfg)) throw Error(ErrorKind::InvalidParameter, "invalid arc configuration: " + *problem);
}

// ---------------------------------------------------------------------------
// Literal syntax:  arcs(N0,N1)[t0-b0 t1-b1 t2~t3 b2~b3 w=1]

inline std::string print_arc_config(const ArcConfig& cfg) {
  const ArcConfig c = cfg.canonical();
  std::string s = "arcs(" + std::to_string(c.n0) + "," + std::to_string(c.n1) + ")[";
  bool first = true;
  auto sep = [&] {
    if (!first) s += ' ';
    first = false;
  };
  for (const auto& t : c.traversing) {
    sep();
    s += "t" + std::to_string(t.top) + "-b" + std::to_string(t.bottom);
  }
  for (const auto& p : c.parallel) {
    sep();
    const char* l = p.side == Side::Top ? "t" : "b";
    s += l + std::to_string(p.a) + "~" + l + std::to_string(p.b);
  }
  if (!c.traversing.empty()) {
    sep();
    s += "w=" + std::to_string(c.winding());
  }
  return s + "]";
}

inline ArcConfig parse_arc_config(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorKind::SyntaxError, "arc literal: " + what, {1, static_cast<int>(i) + 1});
  };
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  auto expect = [&](char c) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != c) throw fail(std::string("expected '") + c + "'");
    ++i;
  };
  auto number = [&]() -> std::int64_t {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (digits == i || i - digits > 12) throw fail("expected an integer");
    return std::stoll(std::string(text.substr(start, i - start)));
  };
  auto mark = [&](char side) -> int {
    if (i >= text.size() || text[i] != side) throw fail(std::string("expected '") + side + "'");
    ++i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) throw fail("mark index must be non-negative");
    return static_cast<int>(number());
  };

  skip_ws();
  if (text.substr(i, 4) != "arcs") throw fail("expected 'arcs('");
  i += 4;
  ArcConfig cfg;
  expect('(');
  cfg.n0 = static_cast<int>(number());
  expect(',');
  cfg.n1 = static_cast<int>(number());
  expect(')');
  expect('[');
  std::optional<std::int64_t> winding;
  for (;;) {
    skip_ws();
    if (i >= text.size()) throw fail("unterminated literal");
    if (text[i] == ']') {
      ++i;
      break;
    }
    if (text[i] == 'w') {
      ++i;
      expect('=');
      winding = number();
      continue;
    }
    const char side = text[i];
    if (side != 't' && side != 'b') throw fail("expected t<i>, b<i> or w=<int>");
    const int first = mark(side);
    if (i >= text.size()) throw fail("unterminated arc");
    if (text[i] == '-' && side == 't') {
      ++i;
      cfg.traversing.push_back({first, mark('b'), 0});
    } else if (text[i] == '~') {
      ++i;
      cfg.parallel.push_back({side == 't' ? Side::Top : Side::Bottom, first, mark(side)});
    } else {
      throw fail("expected '-' (top to bottom) or '~' (parallel)");
    }
  }
  skip_ws();
  if (i != text.size()) throw fail("trailing characters");
  if (winding && cfg.traversing.empty()) throw fail("winding given without traversing arcs");
  for (auto& t : cfg.traversing) t.winding = winding.value_or(0);
  if (cfg.n0 < 1 || cfg.n1 < 1 || cfg.n0 > 10000 || cfg.n1 > 10000) throw fail("n0, n1 must be in [1, 10000]");
  validate_arc_config(cfg);
  return cfg.canonical();
}

}  // namespace crsurg
