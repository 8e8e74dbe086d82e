#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crsurg/arcs.hpp"
#include "crsurg/error.hpp"
#include "crsurg/slope.hpp"

namespace crsurg {

// ---------------------------------------------------------------------------
// Negative continued fractions  s = r0 - 1/(r1 - 1/(... - 1/rk)),  ri <= -2.

struct NegCF {
  std::vector<std::int64_t> coefficients;
  bool operator==(const NegCF&) const = default;
};

inline NegCF neg_cf(const SlopeQ& s) {
  if (s.is_infinite() || s >= SlopeQ(-1))
    throw Error(ErrorKind::DomainError, "negative continued fraction needs a slope < -1, got " + s.str());
  NegCF cf;
  std::int64_t p = s.num(), q = s.den();
  for (;;) {
    const std::int64_t r = checked::floor_div(p, q);
    const std::int64_t rem = p - r * q;  // 0 <= rem < q
    if (rem == 0) {
      cf.coefficients.push_back(r);
      break;
    }
    // p/q = r - 1/x with x = -q/rem < -1.
    cf.coefficients.push_back(r);
    const std::int64_t next_p = -q;
    q = rem;
    p = next_p;
  }
  return cf;
}

inline SlopeQ reconstruct(const NegCF& cf) {
  if (cf.coefficients.empty()) throw Error(ErrorKind::InvalidParameter, "empty continued fraction");
  SlopeQ x(cf.coefficients.back());
  for (auto it = cf.coefficients.rbegin() + 1; it != cf.coefficients.rend(); ++it) x = SlopeQ(*it) - SlopeQ(1) / x;
  return x;
}

// ---------------------------------------------------------------------------
// SL(2, Z) acting on slopes p/q through the column vector (q, p).

struct UnimodularMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return checked::sub(checked::mul(a, d), checked::mul(b, c)); }

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    using namespace checked;
    return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)),
            add(mul(x.c, y.a), mul(x.d, y.c)), add(mul(x.c, y.b), mul(x.d, y.d))};
  }

  SlopeQ apply(const SlopeQ& s) const {
    using namespace checked;
    const std::int64_t q = s.den(), p = s.num();
    const std::int64_t q2 = add(mul(a, q), mul(b, p));
    const std::int64_t p2 = add(mul(c, q), mul(d, p));
    return SlopeQ(p2, q2);
  }

  bool operator==(const UnimodularMatrix&) const = default;
};

struct NormalizedSlopes {
  UnimodularMatrix matrix;
  SlopeQ slope0;
  SlopeQ slope1;
};

namespace detail {

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  const std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Tie-break key: (max |entry|, sum |entry|), then the lexicographically
// largest entries, so that the identity beats -I.
inline auto matrix_key(const UnimodularMatrix& m) {
  auto ab = [](std::int64_t v) { return v < 0 ? -v : v; };
  const std::int64_t mx = std::max({ab(m.a), ab(m.b), ab(m.c), ab(m.d)});
  return std::make_tuple(mx, ab(m.a) + ab(m.b) + ab(m.c) + ab(m.d), -m.a, -m.b, -m.c, -m.d);
}

}  // namespace detail

/// Finds A in SL(2,Z) with A.s0 = -1 and A.s1 <= -1 (finite).  Among the
/// infinitely many solutions the one with the smallest (max|entry|,
/// sum|entry|) is returned, ties going to the lexicographically largest.
inline NormalizedSlopes normalize_slopes(const SlopeQ& s0, const SlopeQ& s1) {
  // U sends (q0, p0) to (1, 0); V sends (1, 0) to (1, -1).
  std::int64_t x, y;
  detail::ext_gcd(s0.den(), s0.num(), x, y);
  const UnimodularMatrix U{x, y, -s0.num(), s0.den()};
  const UnimodularMatrix M0 = UnimodularMatrix{1, 0, -1, 1} * U;

  // Stabiliser of the direction (1, -1): S_k = [[1+k, k], [-k, 1-k]], and -I.
  const SlopeQ img = M0.apply(s1);
  const std::int64_t q1 = img.den(), p1 = img.num();
  const std::int64_t sigma = checked::add(q1, p1);
  auto valid = [&](std::int64_t k) {
    // Image of (q1, p1) under S_k is (q1 + k*sigma, p1 - k*sigma).
    const std::int64_t Q = checked::add(q1, checked::mul(k, sigma));
    const std::int64_t P = checked::sub(p1, checked::mul(k, sigma));
    return Q != 0 && SlopeQ(P, Q) <= SlopeQ(-1);
  };

  // Entries of S_k * M0 are affine in k; the key is minimised near a
  // breakpoint of some |entry| or at the edge of the admissible half-line.
  std::vector<std::int64_t> candidates{0};
  auto entries_at = [&](std::int64_t k) { return UnimodularMatrix{1 + k, k, -k, 1 - k} * M0; };
  const UnimodularMatrix e0 = entries_at(0), e1 = entries_at(1);
  const std::int64_t base[4] = {e0.a, e0.b, e0.c, e0.d};
  const std::int64_t slope[4] = {e1.a - e0.a, e1.b - e0.b, e1.c - e0.c, e1.d - e0.d};
  auto push_near = [&](long double k) {
    if (k > 4e15L || k < -4e15L) return;
    const auto f = static_cast<std::int64_t>(k);
    for (std::int64_t d = -2; d <= 2; ++d) candidates.push_back(f + d);
  };
  for (int i = 0; i < 4; ++i) {
    if (slope[i] != 0) push_near(-static_cast<long double>(base[i]) / slope[i]);
    for (int j = 0; j < 4; ++j)
      for (int sgn : {1, -1}) {
        const std::int64_t ds = slope[i] - sgn * slope[j];
        if (ds != 0) push_near(-static_cast<long double>(base[i] - sgn * base[j]) / ds);
      }
  }
  if (sigma != 0) push_near(-static_cast<long double>(q1) / sigma);

  bool found = false;
  UnimodularMatrix best;
  for (std::int64_t k : candidates) {
    if (!valid(k)) continue;
    for (int sgn : {1, -1}) {
      UnimodularMatrix m = entries_at(k);
      if (sgn < 0) m = {-m.a, -m.b, -m.c, -m.d};
      if (!found || detail::matrix_key(m) < detail::matrix_key(best)) {
        best = m;
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorKind::InternalError, "no normalising matrix found");
  return {best, best.apply(s0), best.apply(s1)};
}

// ---------------------------------------------------------------------------
// Tight contact structures on T^2 x I with convex boundary.

struct BoundaryData {
  std::int64_t num_dividing = 2;
  TaggedSlope slope;
};

struct TightCount {
  enum class Kind { Finite, TwoPerTwisting, InfiniteZIndexed, Unsupported };
  Kind kind = Kind::Unsupported;
  boost::multiprecision::cpp_int value = 0;  // Finite only
  std::string reason;                        // Unsupported only

  static TightCount finite(boost::multiprecision::cpp_int v) { return {Kind::Finite, std::move(v), {}}; }
  static TightCount two_per_twisting() { return {Kind::TwoPerTwisting, 2, {}}; }
  static TightCount infinite() { return {Kind::InfiniteZIndexed, 0, {}}; }
  static TightCount unsupported(std::string why) { return {Kind::Unsupported, 0, std::move(why)}; }
};

inline std::string_view to_string(TightCount::Kind k) {
  switch (k) {
    case TightCount::Kind::Finite: return "finite";
    case TightCount::Kind::TwoPerTwisting: return "two_per_twisting";
    case TightCount::Kind::InfiniteZIndexed: return "infinite_z_indexed";
    case TightCount::Kind::Unsupported: return "unsupported";
  }
  return "?";
}

/// |(r0+1)(r1+1)...(r_{k-1}+1) r_k| for the expansion of the slope.
inline boost::multiprecision::cpp_int minimal_twisting_count(const SlopeQ& s) {
  const NegCF cf = neg_cf(s);
  boost::multiprecision::cpp_int n = 1;
  for (std::size_t i = 0; i + 1 < cf.coefficients.size(); ++i) n *= cf.coefficients[i] + 1;
  n *= cf.coefficients.back();
  return abs(n);
}

inline TightCount honda_count(const BoundaryData& b0, const BoundaryData& b1, std::int64_t twisting) {
  for (const auto* b : {&b0, &b1})
    if (b->num_dividing < 2 || b->num_dividing % 2 != 0)
      throw Error(ErrorKind::InvalidParameter, "number of dividing curves must be even and >= 2");
  if (twisting < 0) throw Error(ErrorKind::InvalidParameter, "twisting must be non-negative");
  if (b0.slope.slope != SlopeQ(-1))
    throw Error(ErrorKind::NotNormalized, "boundary slope of T_0 must be -1 (run normalize_slopes first)");
  const SlopeQ& s1 = b1.slope.slope;
  if (s1.is_infinite() || s1 > SlopeQ(-1))
    throw Error(ErrorKind::NotNormalized, "boundary slope of T_1 must be <= -1 after normalisation");

  if (b0.num_dividing > 2 || b1.num_dividing > 2) {
    if (s1 == SlopeQ(-1) && twisting == 0)
      return TightCount::unsupported(
          "#Gamma > 2 with slopes -1: non-rotative structures correspond to annulus arc configurations "
          "(use enumerate_configurations)");
    return TightCount::unsupported("#Gamma > 2: only the arc-configuration correspondence for slopes -1 is modelled");
  }
  if (twisting >= 1) return TightCount::two_per_twisting();
  if (s1 == SlopeQ(-1)) return TightCount::infinite();
  return TightCount::finite(minimal_twisting_count(s1));
}

// ---------------------------------------------------------------------------
// Non-rotative configurations for slopes -1 with 2n0 and 2n1 dividing curves.

namespace detail {

/// All non-crossing perfect matchings of a linear run of marks; each pair
/// (x, y) is listed with x before y in the run.
inline void noncrossing_matchings(const std::vector<int>& run, std::size_t lo, std::size_t hi,
                                  std::vector<std::pair<int, int>>& cur,
                                  std::vector<std::vector<std::pair<int, int>>>& out) {
  if (lo >= hi) {
    out.push_back(cur);
    return;
  }
  for (std::size_t j = lo + 1; j < hi; j += 2) {
    cur.emplace_back(run[lo], run[j]);
    // Inner part (lo+1 .. j) and outer part (j+1 .. hi) are matched independently.
    std::vector<std::vector<std::pair<int, int>>> inner;
    std::vector<std::pair<int, int>> tmp;
    noncrossing_matchings(run, lo + 1, j, tmp, inner);
    for (const auto& in : inner) {
      auto saved = cur.size();
      cur.insert(cur.end(), in.begin(), in.end());
      noncrossing_matchings(run, j + 1, hi, cur, out);
      cur.resize(saved);
    }
    cur.pop_back();
  }
}

/// Every way to choose k traversing endpoints among n circle marks with the
/// remaining marks matched by parallel arcs inside the gaps.
struct SideChoice {
  std::vector<int> ends;                      // sorted
  std::vector<std::pair<int, int>> parallel;  // (a, b) cutting off a..b
};

inline void side_choices(int n, int k, std::vector<SideChoice>& out) {
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == k) {
      // Gaps between consecutive chosen ends (cyclically) must be even.
      std::vector<std::vector<std::vector<std::pair<int, int>>>> per_gap;
      for (int g = 0; g < k; ++g) {
        const int from = pick[static_cast<std::size_t>(g)];
        const int to = pick[static_cast<std::size_t>((g + 1) % k)];
        std::vector<int> run;
        for (int x = (from + 1) % n; x != to; x = (x + 1) % n) run.push_back(x);
        if (run.size() % 2) return;
        std::vector<std::vector<std::pair<int, int>>> ms;
        std::vector<std::pair<int, int>> cur;
        noncrossing_matchings(run, 0, run.size(), cur, ms);
        per_gap.push_back(std::move(ms));
      }
      std::vector<std::pair<int, int>> acc;
      auto combine = [&](auto&& self2, std::size_t g) -> void {
        if (g == per_gap.size()) {
          out.push_back({pick, acc});
          return;
        }
        for (const auto& m : per_gap[g]) {
          auto saved = acc.size();
          acc.insert(acc.end(), m.begin(), m.end());
          self2(self2, g + 1);
          acc.resize(saved);
        }
      };
      combine(combine, 0);
      return;
    }
    for (int x = start; x < n; ++x) {
      pick.push_back(x);
      self(self, x + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// All isotopy classes (marked points fixed) of arc systems with 2n0 top and
/// 2n1 bottom marks, at least two traversing arcs and no closed curves, whose
/// winding lies in [-max_winding, max_winding].  Output is sorted.
inline std::vector<ArcConfig> enumerate_configurations(int n0, int n1, std::int64_t max_winding) {
  if (n0 < 1 || n1 < 1) throw Error(ErrorKind::InvalidParameter, "n0 and n1 must be positive");
  if (max_winding < 0) throw Error(ErrorKind::InvalidParameter, "max_winding must be non-negative");
  if (n0 > 8 || n1 > 8) throw Error(ErrorKind::InvalidParameter, "enumeration limited to n0, n1 <= 8");
  std::vector<ArcConfig> out;
  for (int k = 2; k <= std::min(2 * n0, 2 * n1); k += 2) {
    std::vector<detail::SideChoice> tops, bottoms;
    detail::side_choices(2 * n0, k, tops);
    detail::side_choices(2 * n1, k, bottoms);
    for (const auto& t : tops)
      for (const auto& b : bottoms)
        for (std::int64_t J = -max_winding; J <= max_winding; ++J) {
          ArcConfig cfg;
          cfg.n0 = n0;
          cfg.n1 = n1;
          for (int i = 0; i < k; ++i)
            cfg.traversing.push_back({t.ends[static_cast<std::size_t>(i)],
                                      b.ends[static_cast<std::size_t>(detail::floor_mod(i + J, k))], J});
          for (const auto& [x, y] : t.parallel) cfg.parallel.push_back({Side::Top, x, y});
          for (const auto& [x, y] : b.parallel) cfg.parallel.push_back({Side::Bottom, x, y});
          out.push_back(cfg.canonical());
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace crsurg
