#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "crsurg/error.hpp"

namespace crsurg {

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

// Floor division for b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

}  // namespace checked

/// Reduced rational number with a single point at infinity (stored as 1/0).
///
/// Used for surgery coefficients and for dividing-curve slopes.  The
/// representation is canonical, so defaulted equality is value equality.
class SlopeQ {
 public:
  constexpr SlopeQ() = default;

  SlopeQ(std::int64_t p, std::int64_t q = 1) { assign(p, q); }

  static SlopeQ infinity() {
    SlopeQ s;
    s.p_ = 1;
    s.q_ = 0;
    return s;
  }

  std::int64_t num() const noexcept { return p_; }
  std::int64_t den() const noexcept { return q_; }

  bool is_infinite() const noexcept { return q_ == 0; }
  bool is_integer() const noexcept { return q_ == 1; }

  bool operator==(const SlopeQ&) const = default;

  /// Total order on Q with infinity placed above every rational.
  std::strong_ordering operator<=>(const SlopeQ& o) const {
    if (is_infinite() || o.is_infinite()) {
      if (is_infinite() && o.is_infinite()) return std::strong_ordering::equal;
      return is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    __int128 lhs = static_cast<__int128>(p_) * o.q_;
    __int128 rhs = static_cast<__int128>(o.p_) * q_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend SlopeQ operator+(const SlopeQ& a, const SlopeQ& b) {
    require_finite(a, b);
    return SlopeQ(checked::add(checked::mul(a.p_, b.q_), checked::mul(b.p_, a.q_)), checked::mul(a.q_, b.q_));
  }
  friend SlopeQ operator-(const SlopeQ& a, const SlopeQ& b) {
    require_finite(a, b);
    return SlopeQ(checked::sub(checked::mul(a.p_, b.q_), checked::mul(b.p_, a.q_)), checked::mul(a.q_, b.q_));
  }
  friend SlopeQ operator*(const SlopeQ& a, const SlopeQ& b) {
    require_finite(a, b);
    return SlopeQ(checked::mul(a.p_, b.p_), checked::mul(a.q_, b.q_));
  }
  /// Division; dividing a nonzero finite value by zero yields infinity.
  friend SlopeQ operator/(const SlopeQ& a, const SlopeQ& b) {
    require_finite(a, b);
    if (b.p_ == 0 && a.p_ == 0) throw Error(ErrorKind::DomainError, "0/0 is undefined");
    if (b.p_ == 0) return infinity();
    return SlopeQ(checked::mul(a.p_, b.q_), checked::mul(a.q_, b.p_));
  }
  SlopeQ operator-() const {
    if (is_infinite()) return *this;
    return SlopeQ(checked::neg(p_), q_);
  }

  /// "p/q", "n" for integers, "inf" for infinity.
  std::string str() const {
    if (is_infinite()) return "inf";
    if (q_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "/" + std::to_string(q_);
  }

  /// Parses "p/q", "n", "inf" (optionally signed); returns nullopt on bad syntax.
  /// "p/0" with p != 0 is accepted as infinity.
  static std::optional<SlopeQ> parse(std::string_view text) {
    if (text == "inf" || text == "+inf" || text == "-inf") return infinity();
    auto slash = text.find('/');
    auto num = parse_int(text.substr(0, slash));
    if (!num) return std::nullopt;
    if (slash == std::string_view::npos) return SlopeQ(*num, 1);
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) return std::nullopt;
    auto den = parse_int(den_text);
    if (!den) return std::nullopt;
    if (*den == 0) {
      if (*num == 0) return std::nullopt;
      return infinity();
    }
    return SlopeQ(*num, *den);
  }

  friend std::ostream& operator<<(std::ostream& os, const SlopeQ& s) { return os << s.str(); }

 private:
  void assign(std::int64_t p, std::int64_t q) {
    if (q == 0) {
      if (p == 0) throw Error(ErrorKind::DomainError, "0/0 is not a slope");
      p_ = 1;
      q_ = 0;
      return;
    }
    if (q < 0) {
      p = checked::neg(p);
      q = checked::neg(q);
    }
    std::int64_t g = std::gcd(p, q);
    p_ = p / g;
    q_ = q / g;
  }

  static void require_finite(const SlopeQ& a, const SlopeQ& b) {
    if (a.is_infinite() || b.is_infinite())
      throw Error(ErrorKind::DomainError, "arithmetic on the infinite slope");
  }

  static std::optional<std::int64_t> parse_int(std::string_view t) {
    if (t.empty()) return std::nullopt;
    bool negative = false;
    std::size_t i = 0;
    if (t[0] == '-' || t[0] == '+') {
      negative = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) return std::nullopt;
    std::int64_t v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return std::nullopt;
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, t[i] - '0', &v)) return std::nullopt;
    }
    return negative ? -v : v;
  }

  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

/// Coordinate frame a boundary slope is expressed in.  A curve a*mu + b*long
/// has slope b/a in the frame's (meridian, longitude) pair.
enum class BasisTag {
  Canonical,    // (mu, lambda), lambda the Seifert longitude
  Contact,      // (mu, lambda_c), lambda_c = tb*mu + lambda
  LayerInternal // (x, y) on the glued thickened torus
};

inline std::string_view to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::Canonical: return "canonical";
    case BasisTag::Contact: return "contact";
    case BasisTag::LayerInternal: return "layer";
  }
  return "?";
}

struct TaggedSlope {
  SlopeQ slope;
  BasisTag basis = BasisTag::Canonical;
  bool operator==(const TaggedSlope&) const = default;
};

}  // namespace crsurg
