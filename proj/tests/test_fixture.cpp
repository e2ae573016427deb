#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccb/fixture.hpp"

using namespace ccb;

namespace {

const char* kRay = R"({
  "name": "axis_ray", "kind": "polyline-ray",
  "components": [{"type": "polyline", "mode": "ray",
                  "vertices": [["0","0"]], "tail": ["1","0"]}]
})";

const char* kRayNoise = R"({
  "name": "axis_ray_noise", "kind": "polyline-ray",
  "components": [{"type": "polyline", "mode": "ray",
                  "vertices": [["0","0"]], "tail": ["1","0"]}],
  "noise": [{"center": ["0","3"], "radius": "1/2"}]
})";

const char* kLineHint = R"({
  "name": "axis_line", "kind": "polyline-line",
  "components": [{"type": "polyline", "mode": "line",
                  "vertices": [["0","0"]],
                  "head": ["-1","0"], "tail": ["1","0"]}],
  "noise": [{"center": ["0","3"], "radius": "1/2"}],
  "hint": {"a": ["0","0"], "delta": "1/2", "k0": 2,
           "A": {"center": ["-1/2","0"], "radius": "1/17"},
           "B": {"center": ["1/2","0"], "radius": "1/17"},
           "C": {"center": ["0","0"], "radius": "1/17"}}
})";

const char* kSegment2 = R"({
  "name": "seg2", "kind": "polyline-segment",
  "components": [{"type": "polyline", "mode": "segment",
                  "vertices": [["0","0"], ["2","0"]]}]
})";

const char* kCircle = R"({
  "name": "unit_circle", "kind": "circle",
  "components": [{"type": "circle", "center": ["0","0"], "radius": "1"}]
})";

const char* kSpiralish = R"({
  "name": "spiralish", "kind": "spiral-segment",
  "components": [{"type": "polyline", "mode": "segment", "margin": "1/10",
                  "vertices": [["0","0"], ["2","0"], ["2","2"]]}]
})";

Point pt(long x, long y) { return Point(rat(x), rat(y)); }

}  // namespace

TEST_CASE("json round trip is bit-exact") {
    for (const char* text :
         {kRay, kRayNoise, kLineHint, kSegment2, kCircle, kSpiralish}) {
        Fixture f1 = fixture_from_json(text);
        std::string s1 = fixture_to_json(f1);
        Fixture f2 = fixture_from_json(s1);
        CHECK(fixture_to_json(f2) == s1);
    }
    CHECK(fixture_from_json(kRay).ray_endpoint() == pt(0, 0));
}

TEST_CASE("load-time validation") {
    // noise ball sitting on the curve is a hard error
    CHECK_THROWS(fixture_from_json(R"({
      "name": "bad", "kind": "polyline-ray",
      "components": [{"type": "polyline", "mode": "ray",
                      "vertices": [["0","0"]], "tail": ["1","0"]}],
      "noise": [{"center": ["2","0"], "radius": "1/4"}]})"));
    CHECK_THROWS_WITH(fixture_from_json(R"({
      "name": "bad", "kind": "circle",
      "components": [{"type": "circle", "center": ["0","0"], "radius": "0"}]})"),
                      "nonpositive radius");
    // hint with an anchor ball too close to the wrong half-line
    CHECK_THROWS(fixture_from_json(R"({
      "name": "bad", "kind": "polyline-line",
      "components": [{"type": "polyline", "mode": "line",
                      "vertices": [["0","0"]],
                      "head": ["-1","0"], "tail": ["1","0"]}],
      "hint": {"a": ["0","0"], "delta": "1/2", "k0": 2,
               "A": {"center": ["-1/16","0"], "radius": "1/17"},
               "B": {"center": ["1/2","0"], "radius": "1/17"},
               "C": {"center": ["0","0"], "radius": "1/17"}}})"));
    // a valid hint loads
    CHECK(fixture_from_json(kLineHint).hint.has_value());
}

TEST_CASE("exact_intersects on the x-axis ray") {
    Fixture ray = fixture_from_json(kRay);
    CHECK(exact_intersects(ray, pt(1, 0), rat(1, 2), false));
    CHECK_FALSE(exact_intersects(ray, pt(0, -2), rat(1), false));
    // foot of (1,1) is (1,0): distance 1 < 13/10
    CHECK(exact_intersects(ray, Point(rat(1), rat(1)), rat(13, 10), false));
    // (-1,1) is at distance sqrt(2) > 13/10 from the ray's endpoint
    CHECK_FALSE(exact_intersects(ray, pt(-1, 1), rat(13, 10), false));
    // ...but at distance 1 from the full line
    Fixture line = fixture_from_json(kLineHint);
    CHECK(exact_intersects(line, pt(-1, 1), rat(13, 10), false));
    // tangency: open misses, closed hits
    CHECK_FALSE(exact_intersects(ray, pt(1, 1), rat(1), false));
    CHECK(exact_intersects(ray, pt(1, 1), rat(1), true));
    CHECK_THROWS_WITH(exact_intersects(ray, pt(0, 0), rat(0), false),
                      "nonpositive radius");

    // noise participates unless excluded
    Fixture noisy = fixture_from_json(kRayNoise);
    CHECK(exact_intersects(noisy, pt(0, 2), rat(3, 4), false));
    CHECK_FALSE(exact_intersects(noisy, pt(0, 2), rat(3, 4), false, -1, false));
}

TEST_CASE("exact_intersects with an enclosure margin") {
    Fixture sp = fixture_from_json(kSpiralish);
    CHECK(exact_intersects(sp, pt(1, 0), rat(1), false));           // deep hit
    CHECK_FALSE(exact_intersects(sp, pt(1, 3), rat(1), false));     // clear
    CHECK_THROWS_WITH(
        exact_intersects(sp, Point(rat(1), rat(21, 20)), rat(1), false),
        "undecided at cap");
}

TEST_CASE("exact_point_on") {
    Fixture noisy = fixture_from_json(kRayNoise);
    CHECK(exact_point_on(noisy, pt(7, 0)));
    CHECK_FALSE(exact_point_on(noisy, pt(-1, 0)));
    CHECK(exact_point_on(noisy, Point(rat(0), rat(7, 2))));  // noise boundary
    CHECK_FALSE(exact_point_on(noisy, Point(rat(0), rat(7, 2)), false));
    Fixture circle = fixture_from_json(kCircle);
    CHECK(exact_point_on(circle, Point(rat(3, 5), rat(4, 5))));
    CHECK_FALSE(exact_point_on(circle, Point(rat(1, 2), rat(1, 2))));
}

TEST_CASE("exact_cover_check on the segment") {
    Fixture seg = fixture_from_json(kSegment2);
    std::vector<Ball> good = {Ball{pt(0, 0), rat(3, 2)},
                              Ball{Point(rat(3, 2), rat(0)), rat(1)}};
    CHECK(exact_cover_check(seg, pt(0, 0), rat(2), good));

    std::vector<Ball> partial = {good[0]};
    Point bad;
    CHECK_FALSE(exact_cover_check(seg, pt(0, 0), rat(2), partial, -1, &bad));
    // the uncovered part is { x >= 3/2 }; witness is on the curve near it
    CHECK(bad[1] == 0);
    CHECK(bad[0] >= rat(3, 2) - pow2(-18));
    CHECK(bad[0] <= rat(2));

    // vacuous: the anchor ball misses the fixture entirely
    CHECK(exact_cover_check(seg, pt(5, 5), rat(1), {}));
}

TEST_CASE("component parameterization") {
    Fixture line = fixture_from_json(kLineHint);
    ComponentParam f = component_param(line, 0);
    CHECK(f.at(rat(3)) == pt(3, 0));
    CHECK(f.at(rat(-2)) == pt(-2, 0));
    CHECK(f.diam_upper(rat(-1), rat(2)) >= rat(3));
    CHECK(f.diam_upper(rat(-1), rat(2)) < rat(3) + pow2(-18));

    Fixture circle = fixture_from_json(kCircle);
    ComponentParam g = component_param(circle, 0);
    CHECK(g.circular);
    CHECK(g.at(rat(0)) == pt(1, 0));
    CHECK(g.at(rat(2)) == pt(-1, 0));
    CHECK(g.at(rat(9, 2)) == g.at(rat(1, 2)));  // wraps at 4
    // portions across a quadrant boundary land on two pieces
    CHECK(g.portions(rat(1, 2), rat(3, 2)).size() == 2);
    // quarter-circle diameter is sqrt(2)
    Rat d = g.diam_upper(rat(0), rat(1));
    CHECK(d * d >= rat(2));
    CHECK(d < rat(15, 10));

    CHECK_THROWS_WITH(g.portions(rat(1), rat(0)), "empty/invalid segment");
}

namespace {

void check_chain_properties(const Fixture& fx, const ComponentParam& f,
                            const Rat& s0, const Rat& s1, const Rat& eps) {
    FormalChain h = chain_for_arc(f, s0, s1, eps);
    CHECK(is_formal_chain(h));
    CHECK(fmesh_lt(h, eps));
    std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        Rat a = s0 + (s1 - s0) * rat((long)i, (long)n);
        Rat b = s0 + (s1 - s0) * rat((long)i + 1, (long)n);
        std::vector<Ball> balls = member_balls(h.links[i]);
        for (const Ball& bl : balls) {
            CHECK(bl.radius < eps);
            // centered on the curve, inside the subarc
            CHECK(exact_point_on(fx, bl.center, false));
        }
        // the subarc is covered by its link
        for (auto& [pc, lo, hi] : f.portions(a, b)) {
            CoverQuery q;
            q.piece = pc;
            q.lo = lo;
            q.hi = hi;
            for (const Ball& bl : balls)
                q.covers.push_back(pc->ball_quad(bl.center, bl.radius));
            CHECK_FALSE(uncovered_param(q).has_value());
        }
    }
}

}  // namespace

TEST_CASE("chain_for_arc on a straight arc") {
    Fixture seg = fixture_from_json(R"({
      "name": "seg4", "kind": "polyline-segment",
      "components": [{"type": "polyline", "mode": "segment",
        "vertices": [["0","0"],["1","0"],["2","0"],["3","0"],["4","0"]]}]})");
    ComponentParam f = component_param(seg, 0);
    CHECK(f.at(rat(5, 2)) == Point(rat(5, 2), rat(0)));
    check_chain_properties(seg, f, rat(0), rat(4), rat(1));
    // halved mesh still verifies
    check_chain_properties(seg, f, rat(0), rat(4), rat(1, 4));
    CHECK_THROWS(chain_for_arc(f, rat(0), rat(4), rat(0)));
    CHECK_THROWS_WITH(chain_for_arc(f, rat(1), rat(1), rat(1)),
                      "empty/invalid segment");
}

TEST_CASE("chain_for_arc on the quarter circle") {
    Fixture circle = fixture_from_json(kCircle);
    ComponentParam f = component_param(circle, 0);
    check_chain_properties(circle, f, rat(0), rat(1), rat(1, 2));
}

TEST_CASE("fixture_presentation is sound") {
    Fixture noisy = fixture_from_json(kRayNoise);
    PresentedSet S = fixture_presentation(noisy);
    ComponentParam f = component_param(noisy, 0);

    std::mt19937 rng(17);
    auto rnd = [&](long lo, long hi) {
        return rat(lo + (long)(rng() % (unsigned long)(hi - lo + 1)),
                   1 + (long)(rng() % 4));
    };
    int yes = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Point c(rnd(-4, 8), rnd(-4, 8));
        Rat r = rat(1 + (long)(rng() % 6), 1 + (long)(rng() % 3));
        std::vector<Nat> members;
        for (int b = 0; b < 3; ++b)
            members.push_back(
                ball_index(Point(rnd(-4, 8), rnd(-4, 8)), r + rat(b)).index);
        SetCode j = encode_finite_set(members);
        SemiDec v = S.ball_anchor_query(c, 3, j, 3);
        if (v != SemiDec::Yes) continue;
        ++yes;
        // sampled curve and noise points inside the probe must land in J_j
        for (int s = 0; s <= 64; ++s) {
            Point p = f.at(rat(s, 8));
            if (dist2(p, c) <= rat(9)) CHECK(point_in_J(p, j));
        }
        for (int s = 0; s < 8; ++s) {
            Point p(noisy.noise[0].center[0] + rat(s % 3 - 1, 3),
                    noisy.noise[0].center[1] + rat(s / 3 - 1, 3));
            if (dist2(p, noisy.noise[0].center) <= rat(1, 4) &&
                dist2(p, c) <= rat(9))
                CHECK(point_in_J(p, j));
        }
    }
    CHECK(yes >= 1);  // the check is not vacuous

    // probes inside F behave as for R union F, not R alone
    BallIndex probe = ball_index(pt(0, 3), rat(1, 4));
    SetCode coverF = SetCode(
        std::vector<Nat>{ball_index(pt(0, 3), rat(1)).index});
    SemiDec got = SemiDec::Unknown;
    for (unsigned fuel : {2u, 5u, 8u})
        if ((got = covers(S, probe, coverF, fuel)) == SemiDec::Yes) break;
    CHECK(got == SemiDec::Yes);
    SetCode missF = SetCode(
        std::vector<Nat>{ball_index(pt(9, 9), rat(1)).index});
    CHECK(covers(S, probe, missF, 8) == SemiDec::Unknown);
}

TEST_CASE("fixture_cover_enum feeds from_semicompact") {
    Fixture circle = fixture_from_json(kCircle);
    auto cov = fixture_cover_enum(circle, 0, 4);
    // every cov(k) covers the circle and is centered on it
    for (unsigned long k : {0ul, 2ul, 5ul}) {
        std::vector<Ball> balls = member_balls(cov(Nat(k)));
        CHECK(exact_cover_check(circle, pt(0, 0), rat(2), balls));
        for (const Ball& b : balls) CHECK(exact_point_on(circle, b.center));
    }
    PresentedSet S = from_semicompact(cov);
    BallIndex far = ball_index(pt(5, 5), rat(1));
    CHECK(covers(S, far, SetCode(std::vector<Nat>{Nat(0)}), 1) == SemiDec::Yes);
    SemiDec got = SemiDec::Unknown;
    BallIndex east = ball_index(pt(1, 0), rat(1, 4));
    SetCode je(std::vector<Nat>{ball_index(pt(1, 0), rat(1, 2)).index});
    for (unsigned fuel : {2u, 4u, 6u})
        if ((got = covers(S, east, je, fuel)) == SemiDec::Yes) break;
    CHECK(got == SemiDec::Yes);
}
