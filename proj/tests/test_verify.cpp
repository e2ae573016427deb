#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccb/verify.hpp"

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

Point pt(long x, long y) { return Point(rat(x), rat(y)); }

}  // namespace

TEST_CASE("verify_cover passes genuine covers and reports exact data") {
    Fixture ray = fixture_from_json(kRay);
    PresentedSet S = fixture_presentation(ray);
    CertifiedCover c = draw_ray(S, constant_point(pt(0, 0)), 2, 2);

    Verdict v = verify_cover(c, ray);
    CHECK(v.passed());
    CHECK(v.check == "cover");
    CHECK(v.fixture == "axis_ray");
    CHECK(v.n == 2);
    CHECK(v.k == 2);
    std::string line = verdict_json(v);
    CHECK(line.find("\"result\":\"pass\"") != std::string::npos);
    CHECK(line.find('\n') == std::string::npos);

    Fixture lf = fixture_from_json(kLineHint);
    PresentedSet SL = fixture_presentation(lf);
    CertifiedCover cl = draw_line(SL, *lf.hint, 2, 2);
    CHECK(verify_cover(cl, lf).passed());

    SUBCASE("tampered line ordering is caught by the replay") {
        CertifiedCover bad = cl;
        bad.witness.e = bad.witness.q;
        Verdict w = verify_cover(bad, lf);
        CHECK(w.result == "fail");
        CHECK(w.reason == "window ordering violated");
    }
}

TEST_CASE("verify_cover detects injected faults") {
    Fixture ray = fixture_from_json(kRay);
    PresentedSet S = fixture_presentation(ray);
    CertifiedCover c = draw_ray(S, constant_point(pt(0, 0)), 2, 2);
    REQUIRE(c.links.size() >= 3);
    std::size_t mid = c.links.size() / 2;

    Verdict t = verify_cover(translate_link(c, mid, pt(100, 100)), ray);
    CHECK(t.result == "fail");
    CHECK(t.counterexample.has_value());

    Verdict d = verify_cover(drop_link(c, mid), ray);
    CHECK(d.result == "fail");
    CHECK(d.reason == "uncovered curve point inside the anchor ball");
}

TEST_CASE("slack witness lists are exactly the slack-intersecting indices") {
    Fixture ray = fixture_from_json(kRay);
    std::vector<BallIndex> wl = slack_witness_list(ray, 300);
    CHECK(!wl.empty());
    std::set<Nat> in;
    for (const BallIndex& i : wl) {
        in.insert(i.index);
        Ball b = decode_ball(i);
        CHECK(b.radius > rat(1, 8));
        CHECK(exact_intersects(ray, b.center, b.radius - rat(1, 8), false, -1,
                               false));
    }
    CHECK(in.count(ball_index(pt(1, 0), rat(1)).index));
    // complement: every skipped index genuinely lacks the slack
    for (unsigned long i = 0; i < 300; ++i) {
        if (in.count(Nat(i))) continue;
        Ball b = decode_ball(BallIndex(Nat(i)));
        Rat r = b.radius - rat(1, 8);
        CHECK((r <= 0 || !exact_intersects(ray, b.center, r, false, -1, false)));
    }
}

TEST_CASE("verify_stream checks soundness and completeness") {
    Fixture ray = fixture_from_json(kRay);
    PresentedSet S = fixture_presentation(ray);

    IntersectStream st = intersect_stream_ray(S, constant_point(pt(0, 0)));
    std::vector<BallIndex> emissions;
    while (std::optional<BallIndex> i = st.next(40)) emissions.push_back(*i);

    std::vector<BallIndex> wl = slack_witness_list(ray, 300);
    Verdict ok = verify_stream(emissions, ray, wl, 40);
    INFO(ok.reason);
    CHECK(ok.passed());
    CHECK(ok.budget == 40);

    std::vector<BallIndex> bad = emissions;
    bad.push_back(ball_index(pt(500, 500), rat(1)));
    Verdict uns = verify_stream(bad, ray, wl, 40);
    CHECK(uns.result == "fail");
    CHECK(uns.reason == "emission does not meet the fixture");

    Verdict inc = verify_stream({}, ray, wl, 0);
    CHECK(inc.result == "fail");
    CHECK(inc.reason == "witness index not emitted within budget");
}
