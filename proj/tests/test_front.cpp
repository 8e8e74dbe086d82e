#include <gtest/gtest.h>

#include <random>

#include "crsurg/crsurg.hpp"
#include "oracles.hpp"

using namespace crsurg;
using namespace crsurg::front;

namespace {

FrontInvariants inv(const std::string& word, std::vector<Orientation> o = {}) {
  return classical_invariants({parse_front_word(word), std::move(o)});
}

ErrorKind kind_of(const std::string& word) {
  try {
    parse_front_word(word);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

}  // namespace

TEST(FrontWord, ParsePrint) {
  const FrontWord w = parse_front_word("  u1 U1 x2  X2 c1 C1 ");
  EXPECT_EQ(print_front_word(w), "U1 U1 X2 X2 C1 C1");
  EXPECT_EQ(w.events.size(), 6u);
}

TEST(FrontWord, Errors) {
  EXPECT_EQ(kind_of("U1 Q1"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("U"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("U1C1"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("U3 C1"), ErrorKind::PositionError);
  EXPECT_EQ(kind_of("U1 X2 C1"), ErrorKind::PositionError);
  EXPECT_EQ(kind_of("U1 U1 C1"), ErrorKind::OpenDiagram);
  try {
    parse_front_word("U1 C5");
  } catch (const Error& e) {
    EXPECT_EQ(e.pos().column, 4);
  }
}

TEST(Invariants, Unknot) {
  const auto i = inv("U1 C1");
  ASSERT_EQ(i.components.size(), 1u);
  EXPECT_EQ(i.components[0].tb, -1);
  EXPECT_EQ(i.components[0].rot, 0);
  EXPECT_EQ(i.components[0].up_cusps, 1);
  EXPECT_EQ(i.components[0].down_cusps, 1);
}

TEST(Invariants, ClaspLinksPositively) {
  const auto i = inv("U1 U1 X2 X2 C1 C1");
  ASSERT_EQ(i.components.size(), 2u);
  EXPECT_EQ(i.components[0].tb, -1);
  EXPECT_EQ(i.components[1].tb, -1);
  EXPECT_EQ(i.lk[0][1], 1);
  EXPECT_EQ(i.lk[1][0], 1);
}

TEST(Invariants, SplitUnknotsDoNotLink) {
  const auto i = inv("U1 C1 U1 C1");
  ASSERT_EQ(i.components.size(), 2u);
  EXPECT_EQ(i.lk[0][1], 0);
  const auto j = inv("U1 U3 C3 C1");
  EXPECT_EQ(j.lk[0][1], 0);
}

TEST(Invariants, ZigzagUnknot) {
  // One extra cup/cap pair: a stabilised unknot, tb = -2, |rot| = 1.
  const auto f = inv("U1 U1 C2 C1");
  EXPECT_EQ(f.components[0].tb, -2);
  EXPECT_EQ(std::abs(f.components[0].rot), 1);
  const auto r = inv("U1 U1 C2 C1", {Orientation::Reverse});
  EXPECT_EQ(r.components[0].tb, -2);
  EXPECT_EQ(r.components[0].rot, -f.components[0].rot);
}

TEST(Invariants, OrientationReversal) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const FrontWord w = oracle::random_front(rng);
    const auto base = classical_invariants({w, {}});
    const auto n = base.components.size();
    for (std::size_t flip = 0; flip < n; ++flip) {
      std::vector<Orientation> o(n, Orientation::Forward);
      o[flip] = Orientation::Reverse;
      const auto r = classical_invariants({w, o});
      for (std::size_t c = 0; c < n; ++c) {
        EXPECT_EQ(r.components[c].tb, base.components[c].tb);
        EXPECT_EQ(r.components[c].rot, c == flip ? -base.components[c].rot : base.components[c].rot);
        for (std::size_t d = 0; d < n; ++d)
          if (c != d) {
            EXPECT_EQ(r.lk[c][d], (c == flip) != (d == flip) ? -base.lk[c][d] : base.lk[c][d]);
          }
      }
    }
  }
}

TEST(Invariants, RotParityMatchesTb) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto i = classical_invariants({oracle::random_front(rng), {}});
    for (const auto& c : i.components) {
      EXPECT_EQ(((c.tb + c.rot + 1) % 2 + 2) % 2, 0) << "tb + rot must be odd";
      EXPECT_EQ(c.up_cusps + c.down_cusps, 2 * c.caps);
      EXPECT_EQ(c.cups, c.caps);
    }
  }
}

TEST(Stabilization, LowersTbShiftsRot) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    OrientedFront f{oracle::random_front(rng), {}};
    const auto before = classical_invariants(f);
    const int n = static_cast<int>(before.components.size());
    for (int c = 0; c < n; ++c)
      for (int sign : {1, -1}) {
        const auto g = stabilize(f, c, sign);
        const auto after = classical_invariants(g);
        ASSERT_EQ(after.components.size(), before.components.size());
        EXPECT_EQ(after.components[static_cast<std::size_t>(c)].tb, before.components[static_cast<std::size_t>(c)].tb - 1);
        EXPECT_EQ(after.components[static_cast<std::size_t>(c)].rot,
                  before.components[static_cast<std::size_t>(c)].rot + sign);
        EXPECT_EQ(after.lk, before.lk);
        for (int o = 0; o < n; ++o)
          if (o != c) {
            EXPECT_EQ(after.components[static_cast<std::size_t>(o)], before.components[static_cast<std::size_t>(o)]);
          }
      }
  }
}

TEST(Stabilization, RespectsOrientation) {
  OrientedFront f{parse_front_word("U1 C1"), {Orientation::Reverse}};
  const auto g = classical_invariants(stabilize(f, 0, 1));
  EXPECT_EQ(g.components[0].tb, -2);
  EXPECT_EQ(g.components[0].rot, 1);
}

TEST(Stabilization, Errors) {
  OrientedFront f{parse_front_word("U1 C1"), {}};
  EXPECT_THROW(stabilize(f, 1, 1), Error);
  EXPECT_THROW(stabilize(f, 0, 0), Error);
}
