#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "crsurg/crsurg.hpp"
#include "oracles.hpp"

using namespace crsurg;

namespace {

H1Class group(std::size_t free_rank, std::vector<int> torsion) {
  H1Class h;
  h.free_rank = free_rank;
  for (int t : torsion) h.torsion.push_back(t);
  return h;
}

ContactSurgeryDiagram hopf(SlopeQ a, SlopeQ b, std::int64_t lk = 1) {
  ContactSurgeryDiagram d;
  d.components = {{"A", -1, 0, "", std::nullopt}, {"B", -1, 0, "", std::nullopt}};
  d.linking.set("A", "B", lk);
  d.coefficients = {{"A", a}, {"B", b}};
  return d;
}

void expect_smith_certificate(const IntMatrix& m) {
  const SmithResult r = smith_normal_form(m);
  EXPECT_EQ(r.left * m * r.right, r.diagonal);
  const BigInt dl = determinant(r.left), dr = determinant(r.right);
  EXPECT_TRUE(dl == 1 || dl == -1);
  EXPECT_TRUE(dr == 1 || dr == -1);
  for (std::size_t i = 0; i < r.diagonal.rows(); ++i)
    for (std::size_t j = 0; j < r.diagonal.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(r.diagonal(i, j), 0);
      }
  for (std::size_t i = 0; i + 1 < r.entries.size(); ++i) {
    if (r.entries[i + 1] == 0) continue;
    EXPECT_EQ(r.entries[i + 1] % r.entries[i], 0);
  }
}

}  // namespace

TEST(Smith, SmallExamples) {
  const auto r = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0], 1);
  EXPECT_EQ(r.entries[1], 6);
  EXPECT_EQ(smith_normal_form(IntMatrix{{0}}).entries, std::vector<BigInt>{0});
  const auto id = smith_normal_form(IntMatrix::identity(4));
  EXPECT_EQ(id.diagonal, IntMatrix::identity(4));
}

TEST(Smith, RandomCertificates) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    expect_smith_certificate(m);
    if (r == c) {
      // Independent check: |det| is the product of the invariant factors.
      BigInt prod = 1;
      for (const auto& d : smith_normal_form(m).entries) prod *= d;
      BigInt det = determinant(m);
      EXPECT_EQ(prod, det < 0 ? BigInt(-det) : det);
    }
  }
}

TEST(Smith, LargeMatrixIsFast) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix m(64, 64);
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j) m(i, j) = entry(rng);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = smith_normal_form(m);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(ms, 1000);
  EXPECT_EQ(r.left * m * r.right, r.diagonal);
}

TEST(H1Dehn, Examples) {
  ContactSurgeryDiagram unknot;
  unknot.components = {{"U", -1, 0, "", std::nullopt}};
  unknot.coefficients = {{"U", SlopeQ(1)}};
  EXPECT_EQ(h1_dehn(unknot), group(1, {}));
  EXPECT_EQ(h1_dehn(hopf(SlopeQ(-1), SlopeQ(-1))), group(0, {3}));
  EXPECT_EQ(h1_dehn(ContactSurgeryDiagram{}), group(0, {}));
  // Infinite coefficient: that component is not surgered.
  EXPECT_EQ(h1_dehn(hopf(SlopeQ::infinity(), SlopeQ(-1))), group(0, {2}));
  // Rational surgery on the unknot: topological p/q gives Z/|p|.
  unknot.coefficients = {{"U", SlopeQ(7, 2)}};
  EXPECT_EQ(h1_dehn(unknot), group(0, {5}));
}

TEST(H1Dehn, SquareOrderMatchesDeterminant) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_pm1(rng);
    const auto h = h1_dehn(d);
    BigInt det = determinant(topological_linking_matrix(d));
    if (det < 0) det = -det;
    EXPECT_EQ(oracle::group_order(h), det);
  }
}

TEST(H1Round1, HopfSnapshot) {
  // Contact (0, 0) on the tb = -1 Hopf link, topological (-1, -1).
  const H1Class h = h1_round1(-1, -1, 1, 0, 0);
  EXPECT_EQ(h, group(2, {}));
  EXPECT_FALSE(oracle::is_z3(h));
}

TEST(H1Round1, ShiftInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> tb(-6, 2), lk(-4, 4), n(-8, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int t1 = tb(rng), t2 = tb(rng), l = lk(rng), a = n(rng), b = n(rng);
    const H1Class base = h1_round1(t1, t2, l, a, b);
    for (int k = -6; k <= 6; ++k) EXPECT_EQ(h1_round1(t1, t2, l, a + k, b + k), base);
  }
}

TEST(H1Round1, DependsOnlyOnDifference) {
  for (int d1 = -6; d1 <= 6; ++d1)
    for (int d2 = -6; d2 <= 6; ++d2) {
      // Topological (d1, d2) on the Hopf link equals contact (d1 + 1, d2 + 1).
      EXPECT_EQ(h1_round1(-1, -1, 1, d1 + 1, d2 + 1), h1_round1(-1, -1, 1, d1 - d2 + 1, 1));
    }
}

TEST(H1Round1, NeverThreeTorus) {
  for (int diff = -10; diff <= 10; ++diff) {
    const H1Class h = h1_round1(-1, -1, 1, diff, 0);
    EXPECT_FALSE(oracle::is_z3(h)) << diff;
    EXPECT_GE(h.free_rank, 1u);
  }
}

TEST(H1Round1, UnlinkHasFreePart) {
  const H1Class h = h1_round1(-1, -1, 0, 1, 1);
  EXPECT_GE(h.free_rank, 1u);
}

TEST(H1Round1, ColumnSignsDoNotMatter) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> v(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = round1_presentation(v(rng), v(rng), v(rng), v(rng), v(rng));
    const H1Class base = cokernel(m);
    for (std::size_t c = 0; c < 4; ++c) {
      IntMatrix n = m;
      for (std::size_t r = 0; r < 4; ++r) n(r, c) = -n(r, c);
      EXPECT_EQ(cokernel(n), base);
    }
  }
}

TEST(H1Round1, DiagramEntryPoint) {
  RoundSurgeryDiagram d;
  d.components = {{"A", -1, 0, "", std::nullopt}, {"B", -1, 0, "", std::nullopt}};
  d.linking.set("A", "B", 1);
  d.round1.push_back({{"A", "B"}, 0, 0, TightLayerSpec::invariant()});
  EXPECT_EQ(h1_round1(d, d.round1.front()), group(2, {}));
  d.components.push_back({"C", -1, 0, "", std::nullopt});
  try {
    h1_round1(d, d.round1.front());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTwoComponent);
  }
}

TEST(H1Round2, Examples) {
  EXPECT_EQ(h1_round2(-1, SlopeQ(1)), (Round2Homology{group(1, {}), group(0, {})}));
  for (int tb = -5; tb <= 3; ++tb)
    EXPECT_EQ(h1_round2(tb, topological_to_contact(SlopeQ(0), tb)), (Round2Homology{group(1, {}), group(0, {})}));
  EXPECT_EQ(h1_round2(-1, SlopeQ(5, 2)), (Round2Homology{group(0, {3}), group(0, {2})}));
}

TEST(H1Round2, OuterAgreesWithDehn) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> tb(-7, 3), p(-9, 9), q(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int t = tb(rng);
    const SlopeQ c(p(rng), q(rng));
    ContactSurgeryDiagram d;
    d.components = {{"K", t, 0, "", std::nullopt}};
    d.coefficients = {{"K", c}};
    EXPECT_EQ(h1_round2(t, c).outer, h1_dehn(d));
  }
}

TEST(H1RoundDiagram, Dispatch) {
  RoundSurgeryDiagram d;
  d.components = {{"A", -1, 0, "", std::nullopt}, {"B", -1, 0, "", std::nullopt}};
  d.linking.set("A", "B", 1);
  for (int k = -4; k <= 4; ++k) {
    d.round1 = {{{"A", "B"}, k, k, TightLayerSpec::invariant()}};
    d.round2 = {{"B", SlopeQ(-1), 0}};
    EXPECT_EQ(h1_round_diagram(d), std::vector<H1Class>{group(0, {3})});
  }
  d.round2.clear();
  d.round1 = {{{"A", "B"}, 0, 0, TightLayerSpec::invariant()}};
  EXPECT_EQ(h1_round_diagram(d), std::vector<H1Class>{group(2, {})});
  d.contact_dehn.emplace("A", SlopeQ(1));
  try {
    h1_round_diagram(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedComposition);
  }

  RoundSurgeryDiagram k;
  k.components = {{"K", -1, 0, "", std::nullopt}};
  k.round2 = {{"K", SlopeQ(1), std::nullopt}};
  EXPECT_EQ(h1_round_diagram(k), (std::vector<H1Class>{group(1, {}), group(0, {})}));
}
