#include "ccb/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccb {

Point CurvePiece::at(const Rat& t) const {
    if (kind == Kind::seg) return lerp(p0, p1, t);
    Rat u = 1 + t * t;
    Rat x = sx * R * (1 - t * t) / u;
    Rat y = 2 * R * t / u;
    return Point(center[0] + x, center[1] + y);
}

Quad CurvePiece::ball_quad(const Point& c, const Rat& r) const {
    if (kind == Kind::seg) {
        Point d = p1 - p0;
        Point e = p0 - c;
        return Quad{dot(d, d), 2 * dot(e, d), Rat(dot(e, e) - r * r)};
    }
    Point e = center - c;
    Rat base = dot(e, e) + R * R - r * r;
    Rat ax = 2 * R * e[0] * sx;
    return Quad{base - ax, 4 * R * e[1], base + ax};
}

std::optional<Rat> CurvePiece::param_of(const Point& x) const {
    if (kind == Kind::seg) {
        Point d = p1 - p0;
        Rat dd = dot(d, d);
        if (dd == 0) return std::nullopt;
        Rat t = dot(x - p0, d) / dd;
        if (!(at(t) == x)) return std::nullopt;
        if (t < lo || (hi && t > *hi)) return std::nullopt;
        return t;
    }
    Point e = x - center;
    if (dot(e, e) != R * R) return std::nullopt;
    Rat den = R + sx * e[0];
    if (den <= 0) return std::nullopt;  // at/behind the chart pole
    Rat t = e[1] / den;
    if (t < lo || (hi && t > *hi)) return std::nullopt;
    return t;
}

bool CurvePiece::param_in_range(const AlgNum& t) const {
    if (t.cmp(lo) < 0) return false;
    return !hi || t.cmp(*hi) <= 0;
}

CurvePiece make_seg(Point a, Point b) {
    if (a == b) throw std::invalid_argument("degenerate segment");
    CurvePiece pc;
    pc.kind = CurvePiece::Kind::seg;
    pc.p0 = std::move(a);
    pc.p1 = std::move(b);
    pc.lo = 0;
    pc.hi = Rat(1);
    return pc;
}

CurvePiece make_ray_tail(Point from, Point dir) {
    if (dot(dir, dir) == 0) throw std::invalid_argument("zero direction");
    CurvePiece pc;
    pc.kind = CurvePiece::Kind::seg;
    pc.p1 = from + dir;
    pc.p0 = std::move(from);
    pc.lo = 0;
    return pc;
}

CurvePiece make_arc(Point center, Rat R, int sx, Rat t0, Rat t1) {
    if (R <= 0) throw std::invalid_argument("nonpositive radius");
    if (!(t0 < t1) || t0 < -1 || t1 > 1)
        throw std::invalid_argument("arc chart range must be within [-1,1]");
    CurvePiece pc;
    pc.kind = CurvePiece::Kind::arc;
    pc.center = std::move(center);
    pc.R = std::move(R);
    pc.sx = sx;
    pc.lo = std::move(t0);
    pc.hi = std::move(t1);
    return pc;
}

std::vector<CurvePiece> circle_pieces(const Point& center, const Rat& R) {
    return {make_arc(center, R, 1, Rat(0), Rat(1)),
            make_arc(center, R, 1, Rat(-1), Rat(0)),
            make_arc(center, R, -1, Rat(0), Rat(1)),
            make_arc(center, R, -1, Rat(-1), Rat(0))};
}

bool quad_negative_somewhere(const Quad& q, const CurvePiece& pc, bool strict) {
    auto hit = [&](int s) { return strict ? s < 0 : s <= 0; };
    if (hit(q.sign_at(pc.lo))) return true;
    if (pc.hi) {
        if (hit(q.sign_at(*pc.hi))) return true;
    } else {
        // behavior toward +infinity
        if (q.A < 0) return true;
        if (q.A == 0 && q.B < 0) return true;
    }
    if (q.A > 0) {
        Rat tv = -q.B / (2 * q.A);
        if (tv > pc.lo && (!pc.hi || tv < *pc.hi) && hit(q.sign_at(tv)))
            return true;
    }
    return false;
}

bool quad_positive_everywhere(const Quad& q, const CurvePiece& pc) {
    return !quad_negative_somewhere(q, pc, false);
}

bool piece_meets_ball(const CurvePiece& pc, const Point& c, const Rat& r,
                      bool closed) {
    return quad_negative_somewhere(pc.ball_quad(c, r), pc, !closed);
}

bool piece_dist_gt(const CurvePiece& pc, const Point& c, const Rat& bound) {
    if (bound < 0) throw std::invalid_argument("negative distance bound");
    return quad_positive_everywhere(pc.ball_quad(c, bound), pc);
}

namespace {

// Sweep for the case where every quad opens upward (A > 0): each cover's
// negativity set is one open interval, so sorting by left endpoint and
// extending a reach pointer decides coverage in near-linear time. Returns
// the infimum of the uncovered set, which the reach pointer lands on.
std::optional<AlgNum> uncovered_sweep(const CoverQuery& q, const Rat& elo,
                                      const std::optional<Rat>& ehi) {
    AlgNum cur(elo);
    std::optional<AlgNum> cend;
    if (ehi) cend = AlgNum(*ehi);
    if (q.constraint) {
        std::vector<AlgNum> r = q.constraint->roots();
        if (r.empty()) return std::nullopt;  // constraint nowhere <= 0
        if (r.size() == 1) {
            // single touch point: uncovered iff in range and in no cover
            if (r[0].cmp(elo) < 0) return std::nullopt;
            if (ehi && r[0].cmp(*ehi) > 0) return std::nullopt;
            for (const Quad& cov : q.covers)
                if (cov.sign_at(r[0]) < 0) return std::nullopt;
            return r[0];
        }
        if (cur.cmp(r[0]) < 0) cur = r[0];
        if (!cend || r[1].cmp(*cend) < 0) cend = r[1];
    }
    if (cend && cend->cmp(cur) < 0) return std::nullopt;

    struct Iv {
        AlgNum lo, hi;
    };
    std::vector<Iv> ivs;
    ivs.reserve(q.covers.size());
    for (const Quad& cov : q.covers) {
        std::vector<AlgNum> r = cov.roots();
        if (r.size() == 2) ivs.push_back(Iv{std::move(r[0]), std::move(r[1])});
    }
    std::sort(ivs.begin(), ivs.end(),
              [](const Iv& x, const Iv& y) { return x.lo.cmp(y.lo) < 0; });
    for (const Iv& iv : ivs) {
        if (cend && cur.cmp(*cend) > 0) return std::nullopt;
        if (iv.lo.cmp(cur) >= 0) break;  // gap: nothing reaches past cur
        if (cur.cmp(iv.hi) < 0) cur = iv.hi;
    }
    // cur is not interior to any interval, hence uncovered
    if (cend && cur.cmp(*cend) > 0) return std::nullopt;
    return cur;
}

}  // namespace

std::optional<AlgNum> uncovered_param(const CoverQuery& q) {
    const CurvePiece& pc = *q.piece;
    Rat elo = pc.lo;
    if (q.lo && *q.lo > elo) elo = *q.lo;
    std::optional<Rat> ehi = pc.hi;
    if (q.hi && (!ehi || *q.hi < *ehi)) ehi = *q.hi;
    if (ehi && *ehi < elo) return std::nullopt;

    bool all_up = !q.constraint || q.constraint->A > 0;
    for (const Quad& cov : q.covers)
        if (cov.A <= 0) {
            all_up = false;
            break;
        }
    if (all_up) return uncovered_sweep(q, elo, ehi);

    // The uncovered set, if nonempty, contains its infimum, which is the
    // range start or a root of the constraint or of some cover quad.
    std::vector<AlgNum> cands;
    cands.emplace_back(elo);
    if (ehi) cands.emplace_back(*ehi);
    if (q.constraint)
        for (AlgNum& r : q.constraint->roots()) cands.push_back(std::move(r));
    for (const Quad& cov : q.covers)
        for (AlgNum& r : cov.roots()) cands.push_back(std::move(r));

    for (const AlgNum& c : cands) {
        if (c.cmp(elo) < 0) continue;
        if (ehi && c.cmp(*ehi) > 0) continue;
        if (q.constraint && q.constraint->sign_at(c) > 0) continue;
        bool covered = false;
        for (const Quad& cov : q.covers)
            if (cov.sign_at(c) < 0) {
                covered = true;
                break;
            }
        if (!covered) return c;
    }
    return std::nullopt;
}

Box bounding_box(const Point& c, const Rat& r) {
    Box b;
    for (std::size_t i = 0; i < c.dim(); ++i) {
        b.lo.push_back(c[i] - r);
        b.hi.push_back(c[i] + r);
    }
    return b;
}

std::vector<Box> split_box(const Box& b) {
    std::size_t n = b.dim();
    std::vector<Box> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Box c = b;
        for (std::size_t i = 0; i < n; ++i) {
            Rat mid = (b.lo[i] + b.hi[i]) / 2;
            if (mask & (std::size_t(1) << i))
                c.lo[i] = mid;
            else
                c.hi[i] = mid;
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool box_meets_closed_ball(const Box& b, const Point& c, const Rat& r) {
    Rat s = 0;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        Rat d = 0;
        if (c[i] < b.lo[i])
            d = b.lo[i] - c[i];
        else if (c[i] > b.hi[i])
            d = c[i] - b.hi[i];
        s += d * d;
    }
    return s <= r * r;
}

bool box_inside_open_ball(const Box& b, const Point& c, const Rat& r) {
    Rat s = 0;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        Rat dl = abs(Rat(b.lo[i] - c[i])), dh = abs(Rat(b.hi[i] - c[i]));
        Rat d = dl > dh ? dl : dh;
        s += d * d;
    }
    return s < r * r;
}

}  // namespace ccb
