#include <gtest/gtest.h>

#include "crsurg/crsurg.hpp"

using namespace crsurg;

namespace {

ArcConfig traversing(std::int64_t k, int n = 1) { return layer_to_annulus(TightLayerSpec::nonrotative(k), n); }
ArcConfig parallel(int n = 1) { return layer_to_annulus(TightLayerSpec::rotative_plus(1), n); }

std::size_t arcs_in(const ArcConfig& c) { return c.traversing.size() + c.parallel.size(); }

}  // namespace

TEST(ArcLiteral, RoundTrip) {
  const ArcConfig c = parse_arc_config("arcs(1,1)[t0-b0 t1-b1 w=0]");
  EXPECT_EQ(c.traversing.size(), 2u);
  EXPECT_EQ(print_arc_config(c), "arcs(1,1)[t0-b0 t1-b1 w=0]");
  const ArcConfig p = parse_arc_config("arcs(1,1)[ t0~t1, b0~b1 ]");
  EXPECT_EQ(p.parallel.size(), 2u);
  EXPECT_EQ(print_arc_config(p), "arcs(1,1)[t0~t1 b0~b1]");
  for (int n0 = 1; n0 <= 3; ++n0)
    for (int n1 = 1; n1 <= 3; ++n1)
      for (const auto& cfg : enumerate_configurations(n0, n1, 2)) {
        const std::string text = print_arc_config(cfg);
        EXPECT_EQ(parse_arc_config(text), cfg.canonical()) << text;
        EXPECT_EQ(print_arc_config(parse_arc_config(text)), text);
      }
}

TEST(ArcLiteral, Invalid) {
  EXPECT_THROW(parse_arc_config("arcs(1,1)[t0-b0"), Error);
  EXPECT_THROW(parse_arc_config("arc(1,1)[]"), Error);
  EXPECT_THROW(parse_arc_config("arcs(1,1)[t0-b1 t1-b0 w=0]"), Error);
  EXPECT_THROW(parse_arc_config("arcs(1,1)[t0-b0]"), Error);
  ArcConfig c;
  c.traversing = {{0, 0, 0}};
  EXPECT_TRUE(arc_config_problem(c).has_value());
  EXPECT_THROW(validate_arc_config(c), Error);
}

TEST(LayerToAnnulus, Shapes) {
  const auto a = traversing(0);
  EXPECT_EQ(a.traversing.size(), 2u);
  EXPECT_EQ(a.winding(), 0);
  EXPECT_EQ(traversing(3).winding(), 3);
  const auto b = parallel();
  EXPECT_TRUE(b.traversing.empty());
  ASSERT_EQ(b.parallel.size(), 2u);
  EXPECT_EQ(b.parallel[0].side, Side::Top);
  EXPECT_EQ(b.parallel[1].side, Side::Bottom);
  EXPECT_EQ(layer_to_annulus(TightLayerSpec::invariant(), 1), traversing(0));
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(arc_config_problem(traversing(5, n)), std::nullopt);
    EXPECT_EQ(arc_config_problem(parallel(n)), std::nullopt);
  }
}

TEST(LayerToAnnulus, Errors) {
  EXPECT_THROW(layer_to_annulus(TightLayerSpec::nonrotative(0, 1), 1), Error);
  EXPECT_THROW(layer_to_annulus(TightLayerSpec::invariant(), 0), Error);
  EXPECT_THROW(layer_to_annulus(TightLayerSpec::rotative_plus(0), 1), Error);
}

TEST(Glue, MatchingTraversingGivesEssentialCurves) {
  const auto g = glue_annuli(traversing(0), traversing(0), 0, 0);
  ASSERT_EQ(g.curves.size(), 2u);
  for (const auto& c : g.curves) {
    EXPECT_EQ(std::abs(c.v), 1);
    EXPECT_EQ(c.h, 0);
  }
  EXPECT_FALSE(giroux_overtwisted(g));
}

TEST(Glue, ParallelGivesNullHomotopicCurve) {
  const auto g = glue_annuli(traversing(0), parallel(), 0, 0);
  ASSERT_EQ(g.curves.size(), 1u);
  EXPECT_TRUE(g.curves[0].contractible());
  EXPECT_TRUE(giroux_overtwisted(g));
}

TEST(Glue, SweepOverHolonomy) {
  for (std::int64_t k = -5; k <= 5; ++k) {
    const auto g = glue_annuli(traversing(k), traversing(k), 0, 0);
    for (const auto& c : g.curves) EXPECT_FALSE(c.contractible()) << k;
    EXPECT_FALSE(giroux_overtwisted(g));
    // Some placement of the boundary-parallel arcs closes off a disk.
    bool found = false;
    for (int ot = 0; ot < 2 && !found; ++ot)
      for (int ob = 0; ob < 2 && !found; ++ob) found = giroux_overtwisted(glue_annuli(traversing(k), parallel(), ot, ob));
    EXPECT_TRUE(found) << k;
  }
}

TEST(Glue, ConservationAndPeriodicity) {
  for (int n = 1; n <= 3; ++n)
    for (std::int64_t k = -3; k <= 3; ++k)
      for (const ArcConfig& b : {traversing(-k, n), traversing(k + 1, n), parallel(n)})
        for (int ot = 0; ot < 2 * n; ++ot)
          for (int ob = 0; ob < 2 * n; ++ob) {
            const ArcConfig a = traversing(k, n);
            const auto g = glue_annuli(a, b, ot, ob);
            std::size_t used = 0;
            for (const auto& c : g.curves) used += c.steps.size();
            EXPECT_EQ(used, arcs_in(a) + arcs_in(b));
            const auto h = glue_annuli(a, b, ot + 2 * n, ob + 2 * n);
            ASSERT_EQ(h.curves.size(), g.curves.size());
            for (std::size_t i = 0; i < g.curves.size(); ++i) {
              EXPECT_EQ(h.curves[i].h, g.curves[i].h);
              EXPECT_EQ(h.curves[i].v, g.curves[i].v);
            }
          }
}

TEST(Glue, Errors) {
  try {
    glue_annuli(traversing(0, 1), traversing(0, 2), 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MarkMismatch);
  }
  try {
    giroux_overtwisted(GluedCurves{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyDividingSet);
  }
  GluedCurves g;
  g.curves = {GluedCurve{0, 1, {}}, GluedCurve{0, 1, {}}};
  EXPECT_FALSE(giroux_overtwisted(g));
  g.curves.push_back(GluedCurve{0, 0, {}});
  EXPECT_TRUE(giroux_overtwisted(g));
}
