#include "presred/gip.hpp"
#include "presred/props.hpp"

#include <doctest.h>

using namespace presred;

namespace {

Encoding reference_encoding() { return build_encoding({1, 5, {{2, 1, 3}}}); }

}  // namespace

TEST_CASE("system1 oracle on the reference instance") {
  Encoding enc = reference_encoding();
  GIPInstance g = build_system1(enc);
  GipScanHints hints = hints_from_encoding(enc, 4);
  CHECK(decide_gip(g, g.x_box, &hints));
  CHECK(count_gip(g, g.x_box, &hints) == 3);
  // Hints only reorder the scan.
  CHECK(count_gip(g, g.x_box, nullptr) == 3);
}

TEST_CASE("system1 oracle on a fully covered instance") {
  Encoding enc = build_encoding({2, 2, {{2, 1, 3}}});
  GIPInstance g = build_system1(enc);
  GipScanHints hints = hints_from_encoding(enc, 4);
  CHECK_FALSE(decide_gip(g, g.x_box, &hints));
  CHECK(count_gip(g, g.x_box, &hints) == 0);
}

TEST_CASE("system2 oracle agrees with system1") {
  Encoding enc = reference_encoding();
  GIPInstance g2 = build_system2(enc);
  GipScanHints hints = hints_from_encoding(enc, 1);
  CHECK(decide_gip(g2, g2.x_box, &hints));
  CHECK(count_gip(g2, g2.x_box, &hints) == 3);
}

TEST_CASE("oracle chain across a few tiny instances") {
  for (const auto& inst : tiny_pipeline_instances(3)) {
    Encoding enc = build_encoding(inst);
    GIPInstance g1 = build_system1(enc);
    GIPInstance g2 = build_system2(enc);
    GipScanHints h1 = hints_from_encoding(enc, 4);
    GipScanHints h2 = hints_from_encoding(enc, 1);
    Int want = count_apcover(inst);
    CHECK(count_gip(g1, g1.x_box, &h1) == want);
    CHECK(count_gip(g2, g2.x_box, &h2) == want);
  }
}

TEST_CASE("scale guard") {
  Encoding enc = reference_encoding();
  GIPInstance g = build_system1(enc);
  BoundedBox huge = g.x_box;
  huge.ranges[0] = {Int(-50'000'000), Int(50'000'000)};
  CHECK_THROWS_AS(decide_gip(g, huge), ScaleError);
}
