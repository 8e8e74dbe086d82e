#include <gtest/gtest.h>

#include "crsurg/crsurg.hpp"

using namespace crsurg;

TEST(SlopeQ, ReducesAndNormalisesSign) {
  EXPECT_EQ(SlopeQ(4, -6), SlopeQ(-2, 3));
  EXPECT_EQ(SlopeQ(-2, 3).num(), -2);
  EXPECT_EQ(SlopeQ(-2, 3).den(), 3);
  EXPECT_TRUE(SlopeQ(5, 0).is_infinite());
  EXPECT_EQ(SlopeQ(-5, 0), SlopeQ::infinity());
  EXPECT_THROW(SlopeQ(0, 0), Error);
}

TEST(SlopeQ, ParseAndPrint) {
  EXPECT_EQ(SlopeQ::parse("-5/2"), SlopeQ(-5, 2));
  EXPECT_EQ(SlopeQ::parse("7"), SlopeQ(7));
  EXPECT_EQ(SlopeQ::parse("+3/6"), SlopeQ(1, 2));
  EXPECT_EQ(SlopeQ::parse("inf"), SlopeQ::infinity());
  EXPECT_EQ(SlopeQ::parse("1/0"), SlopeQ::infinity());
  EXPECT_FALSE(SlopeQ::parse("0/0"));
  EXPECT_FALSE(SlopeQ::parse("1/-2"));
  EXPECT_FALSE(SlopeQ::parse("x"));
  EXPECT_FALSE(SlopeQ::parse(""));
  EXPECT_FALSE(SlopeQ::parse("99999999999999999999"));
  EXPECT_EQ(SlopeQ(-5, 2).str(), "-5/2");
  EXPECT_EQ(SlopeQ(3).str(), "3");
  EXPECT_EQ(SlopeQ::infinity().str(), "inf");
}

TEST(SlopeQ, ArithmeticAndOrder) {
  EXPECT_EQ(SlopeQ(1, 2) + SlopeQ(1, 3), SlopeQ(5, 6));
  EXPECT_EQ(SlopeQ(1, 2) - SlopeQ(1, 3), SlopeQ(1, 6));
  EXPECT_EQ(SlopeQ(2, 3) * SlopeQ(3, 4), SlopeQ(1, 2));
  EXPECT_EQ(SlopeQ(1) / SlopeQ(0), SlopeQ::infinity());
  EXPECT_LT(SlopeQ(-5, 2), SlopeQ(-2));
  EXPECT_LT(SlopeQ(1000000), SlopeQ::infinity());
  EXPECT_THROW(SlopeQ::infinity() + SlopeQ(1), Error);
}

TEST(SlopeQ, OverflowIsReported) {
  const SlopeQ big(std::numeric_limits<std::int64_t>::max());
  try {
    (void)(big * SlopeQ(2));
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Overflow);
  }
}

TEST(Coefficients, ContactToTopological) {
  EXPECT_EQ(contact_to_topological(SlopeQ(0), -1), SlopeQ(-1));
  EXPECT_EQ(contact_to_topological(SlopeQ(1), -1), SlopeQ(0));
  EXPECT_EQ(contact_to_topological(SlopeQ(-1), -1), SlopeQ(-2));
  EXPECT_EQ(contact_to_topological(SlopeQ(5, 2), -1), SlopeQ(3, 2));
  EXPECT_TRUE(contact_to_topological(SlopeQ::infinity(), -4).is_infinite());
  for (int tb = -6; tb <= 3; ++tb)
    for (int p = -7; p <= 7; ++p)
      for (int q = 1; q <= 4; ++q) {
        const SlopeQ c(p, q);
        EXPECT_EQ(topological_to_contact(contact_to_topological(c, tb), tb), c);
      }
}

TEST(Coefficients, BoundarySlope) {
  const TaggedSlope s = boundary_slope(-3);
  EXPECT_EQ(s.slope, SlopeQ(-1, 3));
  EXPECT_EQ(s.basis, BasisTag::Canonical);
  EXPECT_TRUE(boundary_slope(0).slope.is_infinite());
  EXPECT_EQ(boundary_slope(-1).slope, SlopeQ(-1));
}

TEST(Coefficients, SurgeryMeridian) {
  EXPECT_EQ(surgery_meridian_coefficient(0, 1), 0);
  EXPECT_EQ(surgery_meridian_coefficient(-4, 1), -4);
  try {
    surgery_meridian_coefficient(3, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidMeridian);
  }
}

TEST(Linking, SymmetricAndNoSelf) {
  LinkingData lk;
  lk.set("B", "A", 3);
  EXPECT_EQ(lk.get("A", "B"), 3);
  EXPECT_EQ(lk.get("B", "A"), 3);
  EXPECT_EQ(lk.get("A", "C"), 0);
  lk.set("A", "B", 0);
  EXPECT_TRUE(lk.entries().empty());
  EXPECT_THROW(lk.set("A", "A", 1), Error);
}

namespace {

RoundSurgeryDiagram hopf_pair(std::int64_t k1, std::int64_t k2, SlopeQ r2, TightLayerSpec layer = TightLayerSpec::invariant()) {
  RoundSurgeryDiagram d;
  d.components = {{"A", -1, 0, "", std::nullopt}, {"B", -1, 0, "", std::nullopt}};
  d.linking.set("A", "B", 1);
  d.round1.push_back({{"A", "B"}, k1, k2, layer});
  d.round2.push_back({"B", r2, 0});
  return d;
}

}  // namespace

TEST(Niceness, Report) {
  EXPECT_TRUE(check_nice(hopf_pair(2, 2, SlopeQ(-1)), 0).nice);
  EXPECT_TRUE(check_nice(hopf_pair(0, 0, SlopeQ(1), TightLayerSpec::nonrotative(0)), 0).nice);

  auto r = check_nice(hopf_pair(1, 2, SlopeQ(-1)), 0);
  EXPECT_FALSE(r.nice);
  EXPECT_FALSE(r.coefficients_equal);
  EXPECT_EQ(r.reason, "coefficient mismatch");

  r = check_nice(hopf_pair(1, 1, SlopeQ(2)), 0);
  EXPECT_FALSE(r.round2_unit);
  EXPECT_EQ(r.reason, "round-2 coefficient not +1/-1");

  r = check_nice(hopf_pair(1, 1, SlopeQ(1), TightLayerSpec::nonrotative(1)), 0);
  EXPECT_FALSE(r.layer_standard);
  EXPECT_FALSE(r.nice);
  EXPECT_FALSE(check_nice(hopf_pair(1, 1, SlopeQ(1), TightLayerSpec::rotative_plus(1)), 0).nice);
  EXPECT_FALSE(check_nice(hopf_pair(1, 1, SlopeQ(1), TightLayerSpec::nonrotative(0, 1)), 0).nice);
}

TEST(Niceness, Errors) {
  auto d = hopf_pair(1, 1, SlopeQ(1));
  d.round2.clear();
  try {
    check_nice(d, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoJointPartner);
  }
  EXPECT_THROW(check_nice(d, 4), Error);
}

TEST(Fillability, SufficientCondition) {
  EXPECT_TRUE(is_fillable_sufficient(hopf_pair(3, 3, SlopeQ(-1))));
  EXPECT_FALSE(is_fillable_sufficient(hopf_pair(3, 3, SlopeQ(1))));
  EXPECT_FALSE(is_fillable_sufficient(hopf_pair(3, 4, SlopeQ(-1))));
  auto d = hopf_pair(0, 0, SlopeQ(-1));
  d.contact_dehn.emplace("A", SlopeQ(-1));
  EXPECT_FALSE(is_fillable_sufficient(d));
  EXPECT_TRUE(is_fillable_sufficient(RoundSurgeryDiagram{}));
}

TEST(Validation, ContactDiagram) {
  ContactSurgeryDiagram d;
  d.components = {{"A", -1, 0, "", std::nullopt}, {"A", -2, 1, "", std::nullopt}};
  d.coefficients.emplace("A", SlopeQ(1));
  d.coefficients.emplace("Z", SlopeQ(1));
  d.linking.set("A", "Q", 2);
  auto v = validate_diagram(d);
  auto has = [&](ViolationKind k) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
  };
  EXPECT_TRUE(has(ViolationKind::DuplicateLabel));
  EXPECT_TRUE(has(ViolationKind::ExtraCoefficient));
  EXPECT_TRUE(has(ViolationKind::UnknownLabel));
}

TEST(Validation, RoundDiagram) {
  auto d = hopf_pair(1, 1, SlopeQ(1));
  EXPECT_TRUE(validate_diagram(d).empty());
  d.round2.front().knot = "A";
  ASSERT_FALSE(validate_diagram(d).empty());
  EXPECT_EQ(validate_diagram(d).front().kind, ViolationKind::JointMismatch);
  d.round2.front() = {"B", SlopeQ(1), 5};
  EXPECT_EQ(validate_diagram(d).front().kind, ViolationKind::JointIndexOutOfRange);
  d = hopf_pair(1, 1, SlopeQ(1));
  d.round1.push_back(d.round1.front());
  EXPECT_FALSE(validate_diagram(d).empty());
  d = hopf_pair(1, 1, SlopeQ(1), TightLayerSpec::rotative_minus(0));
  EXPECT_EQ(validate_diagram(d).front().kind, ViolationKind::InvalidLayer);
}

TEST(Layers, InvariantIsZeroHolonomy) {
  EXPECT_EQ(TightLayerSpec::invariant().normalized(), TightLayerSpec::nonrotative(0, 0));
  EXPECT_TRUE(TightLayerSpec::invariant().is_standard());
  EXPECT_FALSE(TightLayerSpec::nonrotative(2).is_standard());
}
