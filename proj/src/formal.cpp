#include "ccb/formal.hpp"

#include <map>
#include <stdexcept>

namespace ccb {

int radical_sign(const Rat& a, const Rat& b, const Rat& d) {
    if (d < 0) throw std::invalid_argument("negative radicand");
    int sa = sgn(a);
    if (b == 0 || d == 0) return sa;
    int sb = sgn(b);
    if (sa == 0) return sb;
    if (sa > 0 && sb > 0) return 1;
    if (sa < 0 && sb < 0) return -1;
    // Opposite signs: compare a^2 vs b^2 d; the larger magnitude wins.
    Rat lhs = a * a, rhs = b * b * d;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}

int radical_sign2(const Rat& a, const Rat& b, const Rat& u, const Rat& c,
                  const Rat& v) {
    if (c == 0 || v == 0) return radical_sign(a, b, u);
    if (b == 0 || u == 0) return radical_sign(a, c, v);
    // L = a + b sqrt(u), R = -c sqrt(v); sign(L - R') where R' = -R... we
    // want sign(L + c sqrt(v)). Compare L against -c sqrt(v).
    int sL = radical_sign(a, b, u);
    int sR = -sgn(c);  // sign of -c sqrt(v)
    if (sL == 0) return sgn(c);
    if (sR <= 0 && sL > 0) return 1;
    if (sR >= 0 && sL < 0) return -1;
    // Both sides share a strict sign; compare squares.
    // L^2 = a^2 + b^2 u + 2ab sqrt(u); (c sqrt(v))^2 = c^2 v.
    int cmp_sq = radical_sign(a * a + b * b * u - c * c * v, 2 * a * b, u);
    if (cmp_sq == 0) return 0;
    // If both positive: L vs -c sqrt(v) (= |R|): larger square wins.
    if (sL > 0) return cmp_sq;  // sL>0, sR>0 here
    return -cmp_sq;             // sL<0, sR<0: more negative loses
}

bool fdiam_lt(const SetCode& j, const Rat& t) {
    std::vector<Ball> balls = member_balls(j);
    Rat max_d2 = 0;
    Rat max_r = 0;
    for (std::size_t v = 0; v < balls.size(); ++v) {
        if (balls[v].radius > max_r) max_r = balls[v].radius;
        for (std::size_t w = v + 1; w < balls.size(); ++w) {
            Rat d2 = dist2(balls[v].center, balls[w].center);
            if (d2 > max_d2) max_d2 = d2;
        }
    }
    return DistanceExpr{max_d2, 2 * max_r}.lt(t);
}

Rat fdiam_upper(const SetCode& j, unsigned prec) {
    std::vector<Ball> balls = member_balls(j);
    Rat max_d2 = 0;
    Rat max_r = 0;
    for (std::size_t v = 0; v < balls.size(); ++v) {
        if (balls[v].radius > max_r) max_r = balls[v].radius;
        for (std::size_t w = v + 1; w < balls.size(); ++w) {
            Rat d2 = dist2(balls[v].center, balls[w].center);
            if (d2 > max_d2) max_d2 = d2;
        }
    }
    return sqrt_upper(max_d2, prec) + 2 * max_r;
}

bool formally_disjoint(const Ball& a, const Ball& b) {
    return dist_expr(a.center, b.center).gt(a.radius + b.radius);
}

bool formally_disjoint(const Ball& a, const SetCode& j) {
    for (const Ball& b : member_balls(j))
        if (!formally_disjoint(a, b)) return false;
    return true;
}

bool formally_disjoint(const SetCode& a, const SetCode& b) {
    std::vector<Ball> bs = member_balls(b);
    for (const Ball& x : member_balls(a))
        for (const Ball& y : bs)
            if (!formally_disjoint(x, y)) return false;
    return true;
}

bool formally_contained(const Ball& ball, const Point& a, const Rat& m) {
    return DistanceExpr{dist2(ball.center, a), ball.radius}.lt(m);
}

bool formally_contained(const SetCode& j, const Point& a, const Rat& m) {
    if (m <= 0) throw std::invalid_argument("nonpositive radius");
    for (const Ball& b : member_balls(j))
        if (!formally_contained(b, a, m)) return false;
    return true;
}

FormalChain::FormalChain(const SetCode& l) {
    links.reserve(l.length());
    for (const Nat& e : l.entries()) links.emplace_back(e);
}

SetCode FormalChain::as_code() const {
    std::vector<Nat> entries;
    entries.reserve(links.size());
    for (const SetCode& link : links) entries.push_back(link.code());
    return SetCode(std::move(entries));
}

SetCode FormalChain::union_range(std::size_t p, std::size_t q) const {
    if (p > q || q > bar()) throw std::invalid_argument("empty/invalid segment");
    std::vector<Nat> members;
    for (std::size_t i = p; i <= q; ++i)
        for (const Nat& e : links[i].entry_set()) members.push_back(e);
    return encode_finite_set(members);
}

namespace {

// Axis-aligned bounds plus max radius per link; lets non-adjacent pairs
// that are far apart be dismissed with one rational comparison.
struct LinkBounds {
    std::vector<Rat> lo, hi;
    Rat max_r;
};

LinkBounds link_bounds(const SetCode& link) {
    LinkBounds b;
    b.max_r = 0;
    bool first = true;
    for (const Ball& ball : member_balls(link)) {
        if (ball.radius > b.max_r) b.max_r = ball.radius;
        if (first) {
            b.lo = b.hi = ball.center.coords;
            first = false;
        } else {
            for (std::size_t c = 0; c < b.lo.size(); ++c) {
                if (ball.center[c] < b.lo[c]) b.lo[c] = ball.center[c];
                if (ball.center[c] > b.hi[c]) b.hi[c] = ball.center[c];
            }
        }
    }
    return b;
}

// True when the boxes are so far apart that every member pair is
// certainly formally disjoint (box gap > r_a + r_b in some axis).
bool boxes_clearly_apart(const LinkBounds& a, const LinkBounds& b) {
    Rat rr = a.max_r + b.max_r;
    for (std::size_t c = 0; c < a.lo.size(); ++c) {
        if (a.hi[c] + rr < b.lo[c]) return true;
        if (b.hi[c] + rr < a.lo[c]) return true;
    }
    return false;
}

}  // namespace

bool is_formal_chain(const FormalChain& h) {
    if (h.size() <= 2) return true;
    std::vector<LinkBounds> bounds;
    bounds.reserve(h.size());
    for (const SetCode& link : h.links) bounds.push_back(link_bounds(link));

    // Bucket the radius-inflated boxes on a grid whose pitch is the
    // largest box span: two links separated in some axis are formally
    // disjoint outright (the boxes_clearly_apart criterion), and any two
    // overlapping boxes share a grid cell, so co-bucketed pairs are the
    // only ones that need a look. Long chains of small links drop from
    // quadratic to near-linear; one oversized link only degrades back
    // toward the all-pairs scan.
    std::size_t dim = bounds[0].lo.size();
    Rat pitch = 0;
    for (const LinkBounds& b : bounds)
        for (std::size_t c = 0; c < dim; ++c) {
            Rat span = b.hi[c] - b.lo[c] + 2 * b.max_r;
            if (span > pitch) pitch = span;
        }
    if (pitch == 0) pitch = 1;

    auto cell_floor = [&](const Rat& x) {
        Rat q = x / pitch;
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return f;
    };
    std::map<std::vector<mpz_class>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < h.size(); ++i) {
        std::vector<mpz_class> c0(dim), c1(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            c0[c] = cell_floor(bounds[i].lo[c] - bounds[i].max_r);
            c1[c] = cell_floor(bounds[i].hi[c] + bounds[i].max_r);
        }
        std::vector<mpz_class> cell = c0;
        while (true) {
            std::vector<std::size_t>& v = buckets[cell];
            for (std::size_t j : v) {
                if (j + 1 >= i) continue;  // adjacent or duplicate insert
                if (boxes_clearly_apart(bounds[i], bounds[j])) continue;
                if (!formally_disjoint(h.links[i], h.links[j])) return false;
            }
            if (v.empty() || v.back() != i) v.push_back(i);
            std::size_t c = 0;
            while (c < dim && cell[c] == c1[c]) cell[c] = c0[c], ++c;
            if (c == dim) break;
            ++cell[c];
        }
    }
    return true;
}

bool is_formal_chain(const SetCode& l) { return is_formal_chain(FormalChain(l)); }

bool fmesh_lt(const FormalChain& h, const Rat& t) {
    for (const SetCode& link : h.links)
        if (!fdiam_lt(link, t)) return false;
    return true;
}

bool fmesh_lt(const SetCode& l, const Rat& t) { return fmesh_lt(FormalChain(l), t); }

bool formally_disjoint(const SetCode& j, const FormalChain& h) {
    for (const SetCode& link : h.links)
        if (!formally_disjoint(j, link)) return false;
    return true;
}

bool formally_disjoint(const Ball& b, const FormalChain& h, std::size_t p,
                       std::size_t q) {
    if (p > q || q > h.bar()) throw std::invalid_argument("empty/invalid segment");
    for (std::size_t i = p; i <= q; ++i)
        if (!formally_disjoint(b, h.links[i])) return false;
    return true;
}

bool chain_formally_contained(const FormalChain& h, std::size_t p,
                              std::size_t q, const Point& a, const Rat& m) {
    if (p > q || q > h.bar()) throw std::invalid_argument("empty/invalid segment");
    for (std::size_t i = p; i <= q; ++i)
        if (!formally_contained(h.links[i], a, m)) return false;
    return true;
}

}  // namespace ccb
