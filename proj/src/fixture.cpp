#include "ccb/fixture.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace ccb {

using nlohmann::json;

namespace {

Rat floor_div(const Rat& s) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return Rat(q);
}

std::vector<CurvePiece> compile_component(const Component& c,
                                          std::size_t index) {
    std::vector<CurvePiece> out;
    if (c.type == Component::Type::circle) {
        if (c.margin != 0)
            throw std::invalid_argument("margins are for polylines only");
        out = circle_pieces(c.center, c.radius);
    } else {
        if (c.vertices.empty())
            throw std::invalid_argument("polyline needs vertices");
        if (c.mode == Component::Mode::line) {
            if (!c.head) throw std::invalid_argument("line needs a head direction");
            out.push_back(make_ray_tail(c.vertices.front(), *c.head));
        }
        for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
            out.push_back(make_seg(c.vertices[i], c.vertices[i + 1]));
        if (c.mode == Component::Mode::ray || c.mode == Component::Mode::line) {
            if (!c.tail) throw std::invalid_argument("ray needs a tail direction");
            out.push_back(make_ray_tail(c.vertices.back(), *c.tail));
        }
        if (out.empty())
            throw std::invalid_argument("segment polyline needs >= 2 vertices");
    }
    for (CurvePiece& pc : out) {
        pc.margin = c.margin;
        pc.component = index;
    }
    return out;
}

void validate_noise(const Fixture& fx) {
    for (const NoiseBall& nb : fx.noise)
        for (const CurvePiece& pc : fx.pieces)
            if (piece_meets_ball(pc, nb.center, nb.radius + pc.margin, true))
                throw std::invalid_argument("noise ball touches the curve");
}

void validate_hint(const Fixture& fx) {
    const AnchorHint& h = *fx.hint;
    if (fx.primary().type != Component::Type::polyline ||
        fx.primary().mode != Component::Mode::line)
        throw std::invalid_argument("anchor hint requires a line component");
    ComponentParam f = component_param(fx, 0);
    Rat eps = pow2(-(long)h.k0);
    if (!(h.A.radius < eps / 4) || !(h.B.radius < eps / 4) ||
        !(h.C.radius < eps / 4))
        throw std::invalid_argument("anchor radii too large");
    Point f0 = f.at(rat(0)), fneg = f.at(-h.delta), fpos = f.at(h.delta);
    if (!DistanceExpr{dist2(h.a, f0), Rat(0)}.lt(rat(1)))
        throw std::invalid_argument("anchor point too far from f(0)");
    auto contains = [](const Ball& b, const Point& p) {
        return dist2(b.center, p) < b.radius * b.radius;
    };
    if (!contains(h.A, fneg) || !contains(h.B, fpos) || !contains(h.C, f0))
        throw std::invalid_argument("anchor balls miss their curve points");
    // 2^-k0 < d(I_A, f([0,inf))) and mirrored for I_B
    for (const CurvePiece& pc : f.fwd)
        if (!piece_dist_gt(pc, h.A.center, eps + h.A.radius))
            throw std::invalid_argument("I_A too close to the forward half");
    if (!piece_dist_gt(*f.back, h.B.center, eps + h.B.radius))
        throw std::invalid_argument("I_B too close to the backward half");
    for (const NoiseBall& nb : fx.noise)
        if (!dist_expr(h.C.center, nb.center)
                 .gt(eps + h.C.radius + nb.radius))
            throw std::invalid_argument("I_C too close to the noise set");
    // f([-delta,delta]) inside B(a,1)
    for (auto& [pc, lo, hi] : f.portions(-h.delta, h.delta)) {
        CoverQuery q;
        q.piece = pc;
        q.lo = lo;
        q.hi = hi;
        q.covers = {pc->ball_quad(h.a, rat(1))};
        if (uncovered_param(q))
            throw std::invalid_argument("f([-delta,delta]) escapes B(a,1)");
    }
}

}  // namespace

Point Fixture::ray_endpoint() const {
    const Component& c = primary();
    if (c.type != Component::Type::polyline)
        throw std::logic_error("no endpoint: primary component not a polyline");
    return c.vertices.front();
}

// --- JSON ---------------------------------------------------------------

namespace {

json point_json(const Point& p) {
    json a = json::array();
    for (const Rat& c : p.coords) a.push_back(rat_str(c));
    return a;
}

Point point_from(const json& a) {
    std::vector<Rat> coords;
    for (const auto& s : a) coords.push_back(rat_parse(s.get<std::string>()));
    return Point(std::move(coords));
}

json ball_json(const Ball& b) {
    return json{{"center", point_json(b.center)}, {"radius", rat_str(b.radius)}};
}

Ball ball_from(const json& j) {
    return Ball{point_from(j.at("center")),
                rat_parse(j.at("radius").get<std::string>())};
}

}  // namespace

std::string fixture_to_json(const Fixture& fx) {
    json root;
    root["name"] = fx.name;
    root["kind"] = fx.kind;
    json comps = json::array();
    for (const Component& c : fx.components) {
        json jc;
        if (c.type == Component::Type::circle) {
            jc["type"] = "circle";
            jc["center"] = point_json(c.center);
            jc["radius"] = rat_str(c.radius);
        } else {
            jc["type"] = "polyline";
            switch (c.mode) {
                case Component::Mode::ray: jc["mode"] = "ray"; break;
                case Component::Mode::line: jc["mode"] = "line"; break;
                default: jc["mode"] = "segment"; break;
            }
            json vs = json::array();
            for (const Point& v : c.vertices) vs.push_back(point_json(v));
            jc["vertices"] = vs;
            if (c.head) jc["head"] = point_json(*c.head);
            if (c.tail) jc["tail"] = point_json(*c.tail);
            if (c.margin != 0) jc["margin"] = rat_str(c.margin);
        }
        comps.push_back(jc);
    }
    root["components"] = comps;
    if (!fx.noise.empty()) {
        json ns = json::array();
        for (const NoiseBall& nb : fx.noise)
            ns.push_back(ball_json(Ball{nb.center, nb.radius}));
        root["noise"] = ns;
    }
    if (fx.hint) {
        const AnchorHint& h = *fx.hint;
        root["hint"] = json{{"a", point_json(h.a)},
                            {"delta", rat_str(h.delta)},
                            {"k0", h.k0},
                            {"A", ball_json(h.A)},
                            {"B", ball_json(h.B)},
                            {"C", ball_json(h.C)}};
    }
    return root.dump(2) + "\n";
}

Fixture fixture_from_json(const std::string& text) {
    json root = json::parse(text);
    Fixture fx;
    fx.name = root.value("name", "");
    fx.kind = root.value("kind", "");
    for (const json& jc : root.at("components")) {
        Component c;
        std::string type = jc.at("type").get<std::string>();
        if (type == "circle") {
            c.type = Component::Type::circle;
            c.mode = Component::Mode::closed;
            c.center = point_from(jc.at("center"));
            c.radius = rat_parse(jc.at("radius").get<std::string>());
            if (c.radius <= 0)
                throw std::invalid_argument("nonpositive radius");
        } else if (type == "polyline") {
            c.type = Component::Type::polyline;
            std::string mode = jc.value("mode", "segment");
            if (mode == "ray")
                c.mode = Component::Mode::ray;
            else if (mode == "line")
                c.mode = Component::Mode::line;
            else if (mode == "segment")
                c.mode = Component::Mode::segment;
            else
                throw std::invalid_argument("unknown polyline mode: " + mode);
            for (const json& v : jc.at("vertices"))
                c.vertices.push_back(point_from(v));
            if (jc.contains("head")) c.head = point_from(jc.at("head"));
            if (jc.contains("tail")) c.tail = point_from(jc.at("tail"));
            if (jc.contains("margin"))
                c.margin = rat_parse(jc.at("margin").get<std::string>());
            if (c.margin < 0) throw std::invalid_argument("negative margin");
        } else {
            throw std::invalid_argument("unknown component type: " + type);
        }
        fx.components.push_back(std::move(c));
    }
    if (fx.components.empty()) throw std::invalid_argument("no components");
    if (root.contains("noise"))
        for (const json& jn : root.at("noise")) {
            Ball b = ball_from(jn);
            if (b.radius <= 0)
                throw std::invalid_argument("nonpositive radius");
            fx.noise.push_back(NoiseBall{b.center, b.radius});
        }
    if (root.contains("hint")) {
        const json& jh = root.at("hint");
        AnchorHint h;
        h.a = point_from(jh.at("a"));
        h.delta = rat_parse(jh.at("delta").get<std::string>());
        h.k0 = jh.at("k0").get<unsigned>();
        h.A = ball_from(jh.at("A"));
        h.B = ball_from(jh.at("B"));
        h.C = ball_from(jh.at("C"));
        if (h.delta <= 0) throw std::invalid_argument("nonpositive delta");
        fx.hint = std::move(h);
    }
    for (std::size_t i = 0; i < fx.components.size(); ++i)
        for (CurvePiece& pc : compile_component(fx.components[i], i))
            fx.pieces.push_back(std::move(pc));
    validate_noise(fx);
    if (fx.hint) validate_hint(fx);
    return fx;
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fixture_from_json(ss.str());
}

// --- Exact decisions ----------------------------------------------------

bool exact_intersects(const Fixture& fx, const Point& c, const Rat& r,
                      bool closed, long component, bool include_noise) {
    if (r <= 0) throw std::invalid_argument("nonpositive radius");
    bool undecided = false;
    for (const CurvePiece& pc : fx.pieces) {
        if (component >= 0 && pc.component != (std::size_t)component) continue;
        if (pc.margin == 0) {
            if (piece_meets_ball(pc, c, r, closed)) return true;
            continue;
        }
        if (!piece_meets_ball(pc, c, r + pc.margin, closed)) continue;  // clear
        if (r > pc.margin && piece_meets_ball(pc, c, r - pc.margin, closed))
            return true;
        undecided = true;
    }
    if (include_noise)
        for (const NoiseBall& nb : fx.noise) {
            int s = dist_expr(c, nb.center).cmp(r + nb.radius);
            if (closed ? s <= 0 : s < 0) return true;
        }
    if (undecided) throw std::runtime_error("undecided at cap");
    return false;
}

bool exact_point_on(const Fixture& fx, const Point& x, bool include_noise) {
    for (const CurvePiece& pc : fx.pieces)
        if (pc.param_of(x)) return true;
    if (include_noise)
        for (const NoiseBall& nb : fx.noise)
            if (dist2(x, nb.center) <= nb.radius * nb.radius) return true;
    return false;
}

namespace {

// Rational point on the piece near an algebraic parameter.
Point approx_on_piece(const CurvePiece& pc, const AlgNum& t) {
    Rat r = t.lower(20);
    if (r < pc.lo) r = pc.lo;
    if (pc.hi && r > *pc.hi) r = *pc.hi;
    return pc.at(r);
}

}  // namespace

bool exact_cover_check(const Fixture& fx, const Point& a, const Rat& n,
                       const std::vector<Ball>& balls, long component,
                       Point* counterexample) {
    bool undecided = false;
    for (const CurvePiece& pc : fx.pieces) {
        if (component >= 0 && pc.component != (std::size_t)component) continue;
        CoverQuery q;
        q.piece = &pc;
        q.constraint = pc.ball_quad(a, n + pc.margin);
        for (const Ball& b : balls)
            if (b.radius > pc.margin)
                q.covers.push_back(pc.ball_quad(b.center, b.radius - pc.margin));
        std::optional<AlgNum> bad = uncovered_param(q);
        if (!bad) continue;
        if (pc.margin == 0) {
            if (counterexample) *counterexample = approx_on_piece(pc, *bad);
            return false;
        }
        // enclosure piece: genuinely uncovered, or just inside the margin?
        CoverQuery opt;
        opt.piece = &pc;
        if (n > pc.margin) {
            opt.constraint = pc.ball_quad(a, n - pc.margin);
            for (const Ball& b : balls)
                opt.covers.push_back(pc.ball_quad(b.center, b.radius + pc.margin));
            std::optional<AlgNum> worse = uncovered_param(opt);
            if (worse) {
                if (counterexample) *counterexample = approx_on_piece(pc, *worse);
                return false;
            }
        }
        undecided = true;
    }
    if (undecided) throw std::runtime_error("undecided at cap");
    return true;
}

PresentedSet fixture_presentation(const Fixture& fx) {
    auto decide = [fx](const Point& c, const Rat& r, const SetCode& j,
                       unsigned fuel) {
        std::vector<Ball> members = member_balls(j);
        for (const CurvePiece& pc : fx.pieces) {
            CoverQuery q;
            q.piece = &pc;
            q.constraint = pc.ball_quad(c, r + pc.margin);
            for (const Ball& m : members)
                if (m.radius > pc.margin)
                    q.covers.push_back(
                        pc.ball_quad(m.center, m.radius - pc.margin));
            if (uncovered_param(q)) return SemiDec::Unknown;
        }
        for (const NoiseBall& nb : fx.noise) {
            std::vector<Ball> musts = {Ball{c, r}, Ball{nb.center, nb.radius}};
            if (boxes_in_code(musts, j, fuel) != SemiDec::Yes)
                return SemiDec::Unknown;
        }
        return SemiDec::Yes;
    };
    PresentedSet out;
    out.covers_query = [decide](const BallIndex& i, const SetCode& j,
                                unsigned fuel) {
        Ball bi = decode_ball(i);
        return decide(bi.center, bi.radius, j, fuel);
    };
    out.ball_anchor_query = [decide](const Point& a, unsigned long n,
                                     const SetCode& j, unsigned fuel) {
        return decide(a, Rat(n), j, fuel);
    };
    return out;
}

// --- Parameterization ---------------------------------------------------

ComponentParam component_param(const Fixture& fx, std::size_t comp) {
    if (comp >= fx.components.size())
        throw std::invalid_argument("no such component");
    const Component& c = fx.components[comp];
    ComponentParam f;
    f.margin = c.margin;
    if (c.type == Component::Type::circle) {
        // quadrant arcs reordered into a contiguous counterclockwise loop:
        // I forward, II and III reversed, IV forward
        std::vector<CurvePiece> qs = circle_pieces(c.center, c.radius);
        f.circular = true;
        f.fwd = {qs[0], qs[2], qs[3], qs[1]};
        f.dir = {1, -1, -1, 1};
        return f;
    }
    if (c.mode == Component::Mode::line)
        f.back = make_ray_tail(c.vertices.front(), *c.head);
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
        f.fwd.push_back(make_seg(c.vertices[i], c.vertices[i + 1]));
    if (c.mode == Component::Mode::ray || c.mode == Component::Mode::line)
        f.fwd.push_back(make_ray_tail(c.vertices.back(), *c.tail));
    return f;
}

Point ComponentParam::at(const Rat& s) const {
    if (!circular && s < 0) {
        if (!back) throw std::invalid_argument("parameter before the start");
        return back->at(Rat(-s));
    }
    Rat m((unsigned long)fwd.size());
    Rat sv = s;
    if (circular) sv -= m * floor_div(sv / m);
    Rat fi = floor_div(sv);
    if (fi > m - 1) fi = m - 1;
    std::size_t i = fi.get_num().get_ui();
    const CurvePiece& pc = fwd[i];
    int d = dir.empty() ? 1 : dir[i];
    Rat frac = sv - fi;
    Rat local;
    if (pc.unbounded())
        local = pc.lo + frac;
    else if (d > 0)
        local = pc.lo + frac * (*pc.hi - pc.lo);
    else
        local = *pc.hi - frac * (*pc.hi - pc.lo);
    if (!pc.unbounded() && (local > *pc.hi || local < pc.lo))
        throw std::invalid_argument("parameter past the end");
    return pc.at(local);
}

std::vector<std::tuple<const CurvePiece*, Rat, Rat>> ComponentParam::portions(
    const Rat& s0, const Rat& s1) const {
    if (s0 > s1) throw std::invalid_argument("empty/invalid segment");
    Rat m((unsigned long)fwd.size());
    if (!circular && fwd.back().hi && s1 > m)
        throw std::invalid_argument("parameter past the end");
    std::vector<std::tuple<const CurvePiece*, Rat, Rat>> out;
    Rat cur = s0;
    if (!circular && cur < 0) {
        if (!back) throw std::invalid_argument("parameter before the start");
        Rat stop = s1 < 0 ? s1 : Rat(0);
        out.emplace_back(&*back, Rat(-stop), Rat(-cur));  // reversed direction
        cur = stop;
    }
    while (cur < s1) {
        Rat wrapped = cur;
        if (circular) wrapped -= m * floor_div(wrapped / m);
        Rat fi = floor_div(wrapped);
        if (fi > m - 1) fi = m - 1;
        std::size_t i = fi.get_num().get_ui();
        const CurvePiece& pc = fwd[i];
        Rat anchor = cur - (wrapped - fi);  // global s where the piece starts
        Rat next = pc.unbounded() ? s1 : Rat(anchor + 1);
        if (next > s1) next = s1;
        int d = dir.empty() ? 1 : dir[i];
        Rat llo, lhi;
        if (pc.unbounded()) {
            llo = pc.lo + (cur - anchor);
            lhi = pc.lo + (next - anchor);
        } else if (d > 0) {
            Rat scale = *pc.hi - pc.lo;
            llo = pc.lo + (cur - anchor) * scale;
            lhi = pc.lo + (next - anchor) * scale;
        } else {
            Rat scale = *pc.hi - pc.lo;
            llo = *pc.hi - (next - anchor) * scale;
            lhi = *pc.hi - (cur - anchor) * scale;
        }
        out.emplace_back(&pc, llo, lhi);
        cur = next;
    }
    return out;
}

Rat ComponentParam::diam_upper(const Rat& s0, const Rat& s1) const {
    Rat total = 0;
    for (auto& [pc, lo, hi] : portions(s0, s1)) {
        Point a = pc->at(lo), b = pc->at(hi);
        total += sqrt_upper(dist2(a, b), 20);
    }
    return total;
}

// --- chain_for_arc ------------------------------------------------------

namespace {

// Exact min squared distance between two rational segments.
Rat seg_seg_dist2(const Point& a0, const Point& a1, const Point& b0,
                  const Point& b1) {
    auto pt_seg = [](const Point& p, const Point& q0, const Point& q1) {
        Point d = q1 - q0;
        Rat dd = dot(d, d);
        Rat t = dd == 0 ? Rat(0) : Rat(dot(p - q0, d) / dd);
        if (t < 0) t = 0;
        if (t > 1) t = 1;
        return dist2(p, lerp(q0, q1, t));
    };
    auto cross = [](const Point& u, const Point& v) {
        return Rat(u[0] * v[1] - u[1] * v[0]);
    };
    // proper intersection?
    Point r = a1 - a0, s = b1 - b0;
    Rat den = cross(r, s);
    if (den != 0) {
        Rat t = cross(b0 - a0, s) / den;
        Rat u = cross(b0 - a0, r) / den;
        if (t >= 0 && t <= 1 && u >= 0 && u <= 1) return Rat(0);
    }
    Rat best = pt_seg(a0, b0, b1);
    for (const Rat& d : {pt_seg(a1, b0, b1), pt_seg(b0, a0, a1),
                         pt_seg(b1, a0, a1)})
        if (d < best) best = d;
    return best;
}

// Exact min squared distance between portions of the SAME component
// (segment endpoints, or same-circle arcs where endpoint pairs realize it).
Rat portion_dist2(const ComponentParam& f, const Rat& a0, const Rat& a1,
                  const Rat& b0, const Rat& b1) {
    Rat best = -1;
    for (auto& [pa, alo, ahi] : f.portions(a0, a1))
        for (auto& [pb, blo, bhi] : f.portions(b0, b1)) {
            Rat d;
            if (pa->kind == CurvePiece::Kind::seg &&
                pb->kind == CurvePiece::Kind::seg) {
                d = seg_seg_dist2(pa->at(alo), pa->at(ahi), pb->at(blo),
                                  pb->at(bhi));
            } else if (pa->kind == CurvePiece::Kind::arc &&
                       pb->kind == CurvePiece::Kind::arc) {
                // same circle: chord distance is monotone in angular
                // separation, so an endpoint pair realizes the minimum
                Point e1[2] = {pa->at(alo), pa->at(ahi)};
                Point e2[2] = {pb->at(blo), pb->at(bhi)};
                d = dist2(e1[0], e2[0]);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        Rat v = dist2(e1[x], e2[y]);
                        if (v < d) d = v;
                    }
            } else {
                throw std::logic_error("mixed-kind portions in one component");
            }
            if (best < 0 || d < best) best = d;
        }
    return best;
}

}  // namespace

FormalChain chain_for_arc(const ComponentParam& f, const Rat& s0,
                          const Rat& s1, const Rat& epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (!(s0 < s1)) throw std::invalid_argument("empty/invalid segment");

    // subdivide until every subarc has diameter <= eps/4
    unsigned long n = 1;
    for (;; n *= 2) {
        if (n > (1ul << 20)) throw std::runtime_error("search budget exhausted");
        bool ok = true;
        for (unsigned long i = 0; i < n && ok; ++i) {
            Rat a = s0 + (s1 - s0) * rat(i, n);
            Rat b = s0 + (s1 - s0) * rat(i + 1, n);
            if (f.diam_upper(a, b) > epsilon / 4) ok = false;
        }
        if (ok) break;
    }
    auto div = [&](unsigned long i) { return Rat(s0 + (s1 - s0) * rat(i, n)); };

    // separation of non-adjacent subarcs
    Rat rho = epsilon / 9;
    if (n > 2) {
        Rat d2min = -1;
        for (unsigned long i = 0; i + 2 < n; ++i)
            for (unsigned long j = i + 2; j < n; ++j) {
                Rat d = portion_dist2(f, div(i), div(i + 1), div(j), div(j + 1));
                if (d2min < 0 || d < d2min) d2min = d;
            }
        if (d2min == 0) throw std::invalid_argument("arc self-approaches");
        Rat dlow;
        for (unsigned prec = 20; (dlow = sqrt_lower(d2min, prec)) == 0;)
            prec *= 2;
        if (dlow / 4 < rho) rho = dlow / 4;
    }

    // per-subarc link: balls of radius rho centered on the subarc
    std::vector<SetCode> links;
    for (unsigned long i = 0; i < n; ++i) {
        Rat a = div(i), b = div(i + 1);
        for (unsigned long m = 2;; m *= 2) {
            if (m > (1ul << 20))
                throw std::runtime_error("search budget exhausted");
            std::vector<Ball> balls;
            for (unsigned long t = 0; t <= m; ++t)
                balls.push_back(Ball{f.at(a + (b - a) * rat(t, m)), rho});
            bool covered = true;
            for (auto& [pc, lo, hi] : f.portions(a, b)) {
                CoverQuery q;
                q.piece = pc;
                q.lo = lo;
                q.hi = hi;
                for (const Ball& bl : balls)
                    q.covers.push_back(pc->ball_quad(bl.center, bl.radius));
                if (uncovered_param(q)) {
                    covered = false;
                    break;
                }
            }
            if (!covered) continue;
            std::vector<Nat> idx;
            for (const Ball& bl : balls)
                idx.push_back(ball_index(bl.center, bl.radius).index);
            links.push_back(encode_finite_set(idx));
            break;
        }
    }

    FormalChain h{links};
    if (!is_formal_chain(h) || !fmesh_lt(h, epsilon))
        throw std::logic_error("chain construction failed verification");
    return h;
}

std::function<SetCode(const Nat&)> fixture_cover_enum(const Fixture& fx,
                                                      std::size_t comp,
                                                      unsigned cap) {
    const Component& c = fx.components.at(comp);
    if (c.margin != 0)
        throw std::invalid_argument("cover enumerator needs an exact component");
    if (c.type == Component::Type::polyline &&
        c.mode != Component::Mode::segment)
        throw std::invalid_argument("cover enumerator needs a compact component");
    ComponentParam f = component_param(fx, comp);
    Rat span((unsigned long)f.fwd.size());
    auto make_cover = [f, span](unsigned s) {
        Rat r = pow2(-(long)s);
        for (unsigned long m = 4;; m *= 2) {
            if (m > (1ul << 22))
                throw std::runtime_error("search budget exhausted");
            std::vector<Ball> balls;
            for (unsigned long t = 0; t < m; ++t)
                balls.push_back(Ball{f.at(span * rat(t, m)), r});
            balls.push_back(Ball{f.at(span), r});
            bool covered = true;
            for (auto& [pc, lo, hi] : f.portions(Rat(0), span)) {
                CoverQuery q;
                q.piece = pc;
                q.lo = lo;
                q.hi = hi;
                for (const Ball& bl : balls)
                    q.covers.push_back(pc->ball_quad(bl.center, bl.radius));
                if (uncovered_param(q)) {
                    covered = false;
                    break;
                }
            }
            if (!covered) continue;
            std::vector<Nat> idx;
            for (const Ball& bl : balls)
                idx.push_back(ball_index(bl.center, bl.radius).index);
            return encode_finite_set(idx);
        }
    };
    auto cache = std::make_shared<std::map<unsigned, SetCode>>();
    return [make_cover, cache, cap](const Nat& k) {
        unsigned s = cap;
        if (k.fits_ulong_p() && k.get_ui() < cap) s = (unsigned)k.get_ui();
        auto it = cache->find(s);
        if (it != cache->end()) return it->second;
        SetCode code = make_cover(s);
        cache->emplace(s, code);
        return code;
    };
}

}  // namespace ccb
