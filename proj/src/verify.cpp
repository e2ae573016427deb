#include "ccb/verify.hpp"

#include <json.hpp>
#include <set>

namespace ccb {

using nlohmann::json;

namespace {

// Open balls geometrically disjoint: d(c1,c2) >= r1+r2.
bool balls_apart(const Ball& x, const Ball& y) {
    Rat s = x.radius + y.radius;
    return dist2(x.center, y.center) >= s * s;
}

// closure(ball) inside closed B(a,R): d(c,a) + r <= R.
bool ball_in_closed(const Ball& b, const Point& a, const Rat& R) {
    Rat t = R - b.radius;
    return t >= 0 && dist2(b.center, a) <= t * t;
}

// sqrt(max pairwise d^2) + 2 max r < bound, from plain rational
// arithmetic only.
bool diam_below(const std::vector<Ball>& balls, const Rat& bound) {
    Rat max_r = 0, max_d2 = 0;
    for (std::size_t v = 0; v < balls.size(); ++v) {
        if (balls[v].radius > max_r) max_r = balls[v].radius;
        for (std::size_t w = v + 1; w < balls.size(); ++w) {
            Rat d2 = dist2(balls[v].center, balls[w].center);
            if (d2 > max_d2) max_d2 = d2;
        }
    }
    Rat t = bound - 2 * max_r;
    return t > 0 && max_d2 < t * t;
}

bool undecided_at_cap(const std::runtime_error& e) {
    return std::string(e.what()) == "undecided at cap";
}

Verdict fail(Verdict v, std::string reason, std::optional<Ball> cex) {
    v.result = "fail";
    v.reason = std::move(reason);
    v.counterexample = std::move(cex);
    return v;
}

}  // namespace

std::string verdict_json(const Verdict& v) {
    json o;
    o["check"] = v.check;
    o["fixture"] = v.fixture;
    o["n"] = v.n;
    o["k"] = v.k;
    o["budget"] = v.budget;
    o["result"] = v.result;
    o["reason"] = v.reason;
    if (v.counterexample) {
        json c;
        json center = json::array();
        for (std::size_t d = 0; d < v.counterexample->center.dim(); ++d)
            center.push_back(rat_str(v.counterexample->center[d]));
        c["center"] = center;
        c["radius"] = rat_str(v.counterexample->radius);
        o["counterexample"] = c;
    }
    return o.dump();
}

Verdict verify_cover(const CertifiedCover& c, const Fixture& fx) {
    Verdict v;
    v.check = "cover";
    v.fixture = fx.name;
    v.n = c.n;
    v.k = c.k;
    v.result = "pass";
    if (c.links.empty()) return fail(v, "empty cover", std::nullopt);

    bool line = c.witness.line;
    if (line && !fx.hint)
        return fail(v, "line cover but fixture has no anchor hint",
                    std::nullopt);
    Rat mesh = line ? pow2(-(long)(c.k + fx.hint->k0 + 3)) : pow2(-(long)c.k);

    bool undecided = false;
    std::vector<std::vector<Ball>> mem;
    mem.reserve(c.links.size());
    for (const SetCode& l : c.links) mem.push_back(member_balls(l));

    for (const auto& balls : mem)
        if (!diam_below(balls, mesh))
            return fail(v, "link diameter not below the mesh bound",
                        balls.front());

    for (const auto& balls : mem) {
        bool met = false, thrown = false;
        for (const Ball& m : balls) {
            try {
                if (exact_intersects(fx, m.center, m.radius, false, -1,
                                     false)) {
                    met = true;
                    break;
                }
            } catch (const std::runtime_error& e) {
                if (!undecided_at_cap(e)) throw;
                thrown = true;
            }
        }
        if (!met) {
            if (!thrown)
                return fail(v, "link does not meet the curve", balls.front());
            undecided = true;
        }
    }

    std::vector<Ball> all;
    for (const auto& balls : mem)
        all.insert(all.end(), balls.begin(), balls.end());
    Point cex = c.a;
    try {
        if (!exact_cover_check(fx, c.a, Rat((long)c.n), all, -1, &cex))
            return fail(v, "uncovered curve point inside the anchor ball",
                        Ball{cex, 0});
    } catch (const std::runtime_error& e) {
        if (!undecided_at_cap(e)) throw;
        undecided = true;
    }

    // Replay the search conclusions ball-by-ball when the full chain is
    // available (in-memory covers; CSV round trips carry only the links).
    const Witness& w = c.witness;
    if (!w.chain.links.empty()) {
        Rat m_r((long)w.m);
        if (line) {
            if (!(w.p < w.e && w.e < w.q && w.q < w.chain.bar()))
                return fail(v, "window ordering violated", std::nullopt);
            const AnchorHint& h = *fx.hint;
            for (std::size_t i = w.p; i <= w.q; ++i)
                for (const Ball& b : member_balls(w.chain.links[i]))
                    if (!ball_in_closed(b, h.a, m_r))
                        return fail(v, "link escapes the closed anchor ball",
                                    b);
            for (std::size_t i = w.e; i < w.chain.bar(); ++i)
                for (const Ball& b : member_balls(w.chain.links[i]))
                    if (!balls_apart(b, h.A))
                        return fail(v, "upper half-chain meets anchor ball A",
                                    b);
            for (std::size_t i = 0; i < w.e; ++i)
                for (const Ball& b : member_balls(w.chain.links[i]))
                    if (!balls_apart(b, h.B))
                        return fail(v, "lower half-chain meets anchor ball B",
                                    b);
            for (const Ball& b : member_balls(w.u))
                if (!balls_apart(b, h.C))
                    return fail(v, "residue code meets anchor ball C", b);
        } else {
            if (!(w.p < w.chain.bar()))
                return fail(v, "window ordering violated", std::nullopt);
            Point ep = fx.ray_endpoint();
            bool has = false;
            for (const Ball& b : member_balls(w.chain.links[0]))
                if (dist2(ep, b.center) < b.radius * b.radius) has = true;
            if (!has)
                return fail(v, "first link misses the ray endpoint",
                            std::nullopt);
            for (std::size_t i = 0; i <= w.p; ++i)
                for (const Ball& b : member_balls(w.chain.links[i]))
                    if (!ball_in_closed(b, c.a, m_r))
                        return fail(v, "link escapes the closed anchor ball",
                                    b);
        }
    }

    if (undecided) v.result = "undecided-at-cap";
    return v;
}

Verdict verify_stream(const std::vector<BallIndex>& emissions,
                      const Fixture& fx,
                      const std::vector<BallIndex>& witness_list,
                      unsigned long budget) {
    Verdict v;
    v.check = "stream";
    v.fixture = fx.name;
    v.budget = budget;
    v.result = "pass";

    bool undecided = false;
    std::set<Nat> seen;
    for (const BallIndex& i : emissions) {
        seen.insert(i.index);
        Ball b = decode_ball(i);
        try {
            if (!exact_intersects(fx, b.center, b.radius, false, -1, true))
                return fail(v, "emission does not meet the fixture", b);
        } catch (const std::runtime_error& e) {
            if (!undecided_at_cap(e)) throw;
            undecided = true;
        }
    }
    for (const BallIndex& wanted : witness_list)
        if (!seen.count(wanted.index))
            return fail(v, "witness index not emitted within budget",
                        decode_ball(wanted));

    if (undecided) v.result = "undecided-at-cap";
    return v;
}

std::vector<BallIndex> slack_witness_list(const Fixture& fx,
                                          unsigned long limit,
                                          const Rat& slack) {
    std::vector<BallIndex> out;
    for (unsigned long i = 0; i < limit; ++i) {
        BallIndex bi{Nat(i)};
        Ball b = decode_ball(bi);
        Rat r = b.radius - slack;
        if (r <= 0) continue;
        try {
            if (exact_intersects(fx, b.center, r, false, -1, false))
                out.push_back(bi);
        } catch (const std::runtime_error& e) {
            if (!undecided_at_cap(e)) throw;  // enclosure margin: skip
        }
    }
    return out;
}

CertifiedCover translate_link(CertifiedCover c, std::size_t link,
                              const Point& offset) {
    std::vector<Nat> shifted;
    for (const Ball& b : member_balls(c.links.at(link))) {
        std::vector<Rat> cs;
        for (std::size_t d = 0; d < b.center.dim(); ++d)
            cs.push_back(b.center[d] + offset[d]);
        shifted.push_back(ball_index(Point(cs), b.radius).index);
    }
    SetCode moved(encode_finite_set(shifted).entries());
    c.links.at(link) = moved;
    if (link < c.witness.links.size()) c.witness.links[link] = moved;
    return c;
}

CertifiedCover drop_link(CertifiedCover c, std::size_t link) {
    c.links.erase(c.links.begin() + (long)link);
    if (link < c.witness.links.size())
        c.witness.links.erase(c.witness.links.begin() + (long)link);
    return c;
}

}  // namespace ccb
