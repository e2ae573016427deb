#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccb/enumerate.hpp"
#include "ccb/fixture.hpp"

using namespace ccb;

namespace {

const char* kRay = R"({
  "name": "axis_ray", "kind": "polyline-ray",
  "components": [{"type": "polyline", "mode": "ray",
                  "vertices": [["0","0"]], "tail": ["1","0"]}]
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

const char* kCircleRay = R"({
  "name": "circle_ray", "kind": "circle-plus-ray",
  "components": [{"type": "circle", "center": ["0","0"], "radius": "1"},
                 {"type": "polyline", "mode": "ray",
                  "vertices": [["10","0"]], "tail": ["1","0"]}]
})";

const char* kSegment3 = R"({
  "name": "seg3", "kind": "polyline-segment",
  "components": [{"type": "polyline", "mode": "segment",
                  "vertices": [["0","0"], ["3","0"]]}]
})";

const char* kSpiralRay = R"({
  "name": "spiral_ray", "kind": "spiral-ray",
  "components": [{"type": "polyline", "mode": "ray", "margin": "1/4096",
                  "vertices": [["0","0"], ["1","0"], ["3/2","1/2"],
                               ["3/2","3/2"], ["1","2"], ["0","2"]],
                  "tail": ["-1","1"]}]
})";

Point pt(long x, long y) { return Point(rat(x), rat(y)); }

std::vector<Ball> balls_of(const std::vector<SetCode>& links) {
    std::vector<Ball> out;
    for (const SetCode& l : links)
        for (const Ball& b : member_balls(l)) out.push_back(b);
    return out;
}

}  // namespace

TEST_CASE("draw produces certified covers") {
    Fixture ray = fixture_from_json(kRay);
    PresentedSet S = fixture_presentation(ray);
    ComputablePointSeq ep = constant_point(pt(0, 0));

    CertifiedCover c = draw_ray(S, ep, 4, 5);
    CHECK(c.a == pt(0, 0));
    CHECK(c.links == c.witness.links);
    for (const SetCode& l : c.links) CHECK(fdiam_lt(l, pow2(-5)));
    for (const Ball& b : balls_of(c.links))
        CHECK(exact_intersects(ray, b.center, b.radius, false, -1, false));
    CHECK(exact_cover_check(ray, c.a, rat(4), balls_of(c.links)));

    Fixture line = fixture_from_json(kLineHint);
    PresentedSet SL = fixture_presentation(line);
    CertifiedCover cl = draw_line(SL, *line.hint, 4, 3);
    for (const SetCode& l : cl.links) CHECK(fdiam_lt(l, pow2(-(3 + 2 + 3))));
    CHECK(exact_cover_check(line, cl.a, rat(4), balls_of(cl.links)));
}

TEST_CASE("draw on the enclosure spiral fixture") {
    Fixture fx = fixture_from_json(kSpiralRay);
    PresentedSet S = fixture_presentation(fx);
    CertifiedCover c = draw_ray(S, constant_point(pt(0, 0)), 2, 3);
    CHECK(c.links.size() > 10);
    for (const SetCode& l : c.links) CHECK(fdiam_lt(l, pow2(-3)));
    // enclosure cover check is conservative but must still pass
    CHECK(exact_cover_check(fx, c.a, rat(2), balls_of(c.links)));
}

TEST_CASE("intersect stream is sound, deterministic, and finds the witness") {
    Fixture fx = fixture_from_json(kRay);
    PresentedSet S = fixture_presentation(fx);
    ComputablePointSeq ep = constant_point(pt(0, 0));

    IntersectStream s1 = intersect_stream_ray(S, ep);
    std::vector<Nat> got;
    Nat want = ball_index(pt(1, 0), rat(1)).index;  // index 1, slack 1
    bool found = false;
    for (int pulls = 0; pulls < 60; ++pulls) {
        std::optional<BallIndex> i = s1.next(6);
        if (!i) break;
        got.push_back(i->index);
        if (i->index == want) found = true;
        Ball b = decode_ball(*i);
        CHECK(exact_intersects(fx, b.center, b.radius, false, -1, false));
    }
    CHECK(found);
    CHECK(got.size() >= 10);
    // no duplicates
    std::set<Nat> uniq(got.begin(), got.end());
    CHECK(uniq.size() == got.size());

    // a fresh stream replays the same prefix
    IntersectStream s2 = intersect_stream_ray(S, ep);
    for (std::size_t i = 0; i < got.size() && i < 50; ++i) {
        std::optional<BallIndex> b = s2.next(6);
        REQUIRE(b.has_value());
        CHECK(b->index == got[i]);
    }
}

TEST_CASE("compact component cover of the circle beside a ray") {
    Fixture fx = fixture_from_json(kCircleRay);
    PresentedSet M = fixture_presentation(fx);
    auto proc = compact_component_cover(M, {ball_index(pt(0, 0), rat(2))});

    SetCode covering = fixture_cover_enum(fx, 0)(Nat(3));
    CHECK(proc(covering, 4) == SemiDec::Yes);
    CHECK(proc(covering, 8) == SemiDec::Yes);  // fuel monotone

    // balls hugging only the right half of the circle miss an arc
    std::vector<Nat> half;
    for (long i = -2; i <= 2; ++i)
        half.push_back(
            ball_index(Point(rat(1), rat(i, 2)), rat(3, 4)).index);
    SetCode missing{half};
    CHECK(proc(missing, 4) == SemiDec::Unknown);
    CHECK(proc(missing, 10) == SemiDec::Unknown);
}

TEST_CASE("boundary points are recovered to the requested precision") {
    Fixture ray = fixture_from_json(kRay);
    PresentedSet M = fixture_presentation(ray);
    PresentedSet bd = finite_point_presentation({pt(0, 0)});
    Point p = boundary_point(M, bd, ball_index(pt(0, 0), rat(1)), 6);
    CHECK(dist2(p, pt(0, 0)) < pow2(-12));

    Fixture seg = fixture_from_json(kSegment3);
    PresentedSet MS = fixture_presentation(seg);
    PresentedSet bds = finite_point_presentation({pt(0, 0), pt(3, 0)});
    Point q = boundary_point(MS, bds, ball_index(pt(3, 0), rat(1)), 4);
    CHECK(dist2(q, pt(3, 0)) < pow2(-8));
    Point q8 = boundary_point(MS, bds, ball_index(pt(3, 0), rat(1)), 8);
    CHECK(dist2(q8, pt(3, 0)) < pow2(-16));
}

TEST_CASE("cover CSV round trip and SVG rendering") {
    Fixture fx = fixture_from_json(kRay);
    PresentedSet S = fixture_presentation(fx);
    CertifiedCover c = draw_ray(S, constant_point(pt(0, 0)), 2, 2);

    std::string csv = cover_to_csv(c);
    CertifiedCover back = cover_from_csv(csv);
    CHECK(back.a == c.a);
    CHECK(back.n == c.n);
    CHECK(back.k == c.k);
    REQUIRE(back.links.size() == c.links.size());
    for (std::size_t i = 0; i < c.links.size(); ++i)
        CHECK(back.links[i].entry_set() == c.links[i].entry_set());
    CHECK(cover_to_csv(back) == csv);

    std::string svg = cover_to_svg(c, &fx);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("circle") != std::string::npos);
}
