#include "ccb/chain.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace ccb {

namespace {

// --- shared tuple pieces ------------------------------------------------

SetCode union_with(const SetCode& a, const SetCode& b) {
    std::vector<Nat> entries = a.entries();
    for (const Nat& e : b.entries()) entries.push_back(e);
    return SetCode(std::move(entries));
}

bool links_contained(const FormalChain& h, std::size_t i, const Point& a,
                     const Rat& m) {
    return formally_contained(h.links[i], a, m);
}

// --- dyadic grid plumbing -----------------------------------------------

struct Cell {
    long x = 0, y = 0;

    bool operator<(const Cell& o) const {
        return x != o.x ? x < o.x : y < o.y;
    }
    bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
};

// Fixed neighbor order keeps the BFS deterministic.
constexpr int kNbr[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                            {0, 1},   {1, -1}, {1, 0},  {1, 1}};

long floor_long(const Rat& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!z.fits_slong_p()) throw std::runtime_error("grid coordinate overflow");
    return z.get_si();
}

long round_long(const Rat& q) { return floor_long(q + rat(1, 2)); }

struct Grid {
    Rat c;    // step
    Rat rho;  // cell-ball radius, 7c/8
    const PresentedSet* S = nullptr;
    SetCode far_code{std::vector<Nat>{Nat(0)}};
    Ball far_ball;
    unsigned fuel = 0;
    Point a;
    Rat bound;  // L-inf bound on |center - a|
    mutable std::map<Cell, bool> alive_cache;

    Grid(const PresentedSet& pres, const Point& anchor, const Rat& step,
         const Rat& bnd, unsigned f)
        : c(step), rho(7 * step / 8), S(&pres), fuel(f), a(anchor), bound(bnd) {
        far_ball = Ball{Point(Rat(floor_long(a[0]) + floor_long(bnd) + 10),
                              a[1]),
                        rat(1)};
        far_code =
            SetCode(std::vector<Nat>{ball_index(far_ball.center, far_ball.radius).index});
    }

    Point center(const Cell& g) const { return Point(g.x * c, g.y * c); }

    bool in_bounds(const Cell& g) const {
        Point p = center(g);
        return abs(Rat(p[0] - a[0])) <= bound && abs(Rat(p[1] - a[1])) <= bound;
    }

    // Not certified disjoint from S at this fuel (constructed far witness).
    bool alive(const Cell& g) const {
        auto it = alive_cache.find(g);
        if (it != alive_cache.end()) return it->second;
        BallIndex i = ball_index(center(g), rho);
        bool a_ = S->covers_query(i, far_code, fuel) != SemiDec::Yes;
        alive_cache.emplace(g, a_);
        return a_;
    }

    Cell snap(const Point& p) const {
        return Cell{round_long(p[0] / c), round_long(p[1] / c)};
    }
};

// BFS levels over alive cells from a seed; each level sorted for
// determinism. Returns the depth map through `depth`.
std::vector<std::vector<Cell>> bfs_levels(const Grid& grid, const Cell& seed,
                                          std::map<Cell, long>& depth) {
    std::vector<std::vector<Cell>> levels;
    depth.clear();
    if (!grid.in_bounds(seed) || !grid.alive(seed)) return levels;
    std::vector<Cell> frontier{seed};
    depth[seed] = 0;
    while (!frontier.empty()) {
        levels.push_back(frontier);
        std::vector<Cell> next;
        for (const Cell& g : frontier)
            for (auto& d : kNbr) {
                Cell h{g.x + d[0], g.y + d[1]};
                if (depth.count(h) || !grid.in_bounds(h) || !grid.alive(h))
                    continue;
                depth[h] = (long)levels.size();
                next.push_back(h);
            }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return levels;
}

SetCode level_code(const Grid& grid, const std::vector<Cell>& level) {
    std::vector<Nat> idx;
    idx.reserve(level.size());
    for (const Cell& g : level)
        idx.push_back(ball_index(grid.center(g), grid.rho).index);
    return encode_finite_set(idx);
}

// Axis-aligned bounds of a link's member balls, for cheap disjointness
// prefiltering while building u.
struct LinkBox {
    Rat xlo, xhi, ylo, yhi;
};

LinkBox link_box(const SetCode& link) {
    std::vector<Ball> balls = member_balls(link);
    LinkBox b{balls[0].center[0], balls[0].center[0], balls[0].center[1],
              balls[0].center[1]};
    Rat r = 0;
    for (const Ball& bl : balls) {
        b.xlo = std::min(b.xlo, bl.center[0]);
        b.xhi = std::max(b.xhi, bl.center[0]);
        b.ylo = std::min(b.ylo, bl.center[1]);
        b.yhi = std::max(b.yhi, bl.center[1]);
        r = std::max(r, bl.radius);
    }
    b.xlo -= r;
    b.xhi += r;
    b.ylo -= r;
    b.yhi += r;
    return b;
}

bool box_clear_of_ball(const LinkBox& b, const Point& c, const Rat& r) {
    Rat dx = c[0] < b.xlo ? Rat(b.xlo - c[0])
                          : (c[0] > b.xhi ? Rat(c[0] - b.xhi) : Rat(0));
    Rat dy = c[1] < b.ylo ? Rat(b.ylo - c[1])
                          : (c[1] > b.yhi ? Rat(c[1] - b.yhi) : Rat(0));
    return dx * dx + dy * dy > r * r;
}

bool ball_disjoint_from_link(const Ball& b, const SetCode& link) {
    return formally_disjoint(b, link);
}

// Coarse dyadic cover of whatever the oracle keeps alive away from the
// chain: these cells absorb the noise part F. Falls back to a far
// singleton when nothing is left over.
SetCode propose_u(const PresentedSet& S, const Point& a, unsigned long m,
                  const FormalChain& chain, const std::vector<Ball>& exclude,
                  unsigned fuel) {
    Rat cu = rat(1, 4);
    Grid coarse(S, a, cu, Rat((long)m + 1), fuel);
    std::vector<LinkBox> boxes;
    boxes.reserve(chain.size());
    for (const SetCode& link : chain.links) boxes.push_back(link_box(link));

    long xlo = floor_long((a[0] - coarse.bound) / cu);
    long xhi = floor_long((a[0] + coarse.bound) / cu) + 1;
    long ylo = floor_long((a[1] - coarse.bound) / cu);
    long yhi = floor_long((a[1] + coarse.bound) / cu) + 1;
    std::vector<Nat> kept;
    for (long x = xlo; x <= xhi; ++x)
        for (long y = ylo; y <= yhi; ++y) {
            Cell g{x, y};
            if (!coarse.in_bounds(g) || !coarse.alive(g)) continue;
            Ball b{coarse.center(g), coarse.rho};
            bool clear = true;
            for (const Ball& ex : exclude)
                if (!formally_disjoint(b, ex)) {
                    clear = false;
                    break;
                }
            for (std::size_t i = 0; clear && i < chain.size(); ++i) {
                if (box_clear_of_ball(boxes[i], b.center, b.radius)) continue;
                if (!ball_disjoint_from_link(b, chain.links[i])) clear = false;
            }
            if (clear) kept.push_back(ball_index(b.center, b.radius).index);
        }
    if (kept.empty())
        kept.push_back(
            ball_index(coarse.far_ball.center, coarse.far_ball.radius).index);
    return SetCode(encode_finite_set(kept).entries());
}

}  // namespace

// --- certification ------------------------------------------------------

SemiDec ray_certify(const RayTuple& t, const PresentedSet& S,
                    const ComputablePointSeq& endpoint, const Point& a,
                    unsigned fuel) {
    const FormalChain& h = t.chain;
    if (h.size() < 2) return SemiDec::Unknown;
    if (!(t.p < h.bar()) || t.m < 1) return SemiDec::Unknown;          // (7)
    if (!fmesh_lt(h, pow2(-(long)t.k))) return SemiDec::Unknown;       // (8)
    if (!chain_formally_contained(h, 0, t.p, a, Rat((long)t.m)))
        return SemiDec::Unknown;                                       // (6)
    if (!is_formal_chain(h)) return SemiDec::Unknown;                  // (1)
    if (!formally_disjoint(t.u, h)) return SemiDec::Unknown;           // (2)
    if (point_in_code(endpoint, h.links[0], fuel) != SemiDec::Yes)
        return SemiDec::Unknown;                                       // (3)
    // u entries first: boxes over F-regions hit their member immediately
    SetCode low = union_with(t.u, h.union_range(0, t.p));
    if (S.ball_anchor_query(a, t.n, low, fuel) != SemiDec::Yes)
        return SemiDec::Unknown;                                       // (4)
    SetCode full = union_with(t.u, h.union_range(0, h.bar()));
    if (S.ball_anchor_query(a, t.m, full, fuel) != SemiDec::Yes)
        return SemiDec::Unknown;                                       // (5)
    return SemiDec::Yes;
}

SemiDec line_certify(const LineTuple& t, const PresentedSet& S,
                     const AnchorHint& hint, unsigned fuel) {
    const FormalChain& h = t.chain;
    if (h.size() < 2) return SemiDec::Unknown;
    if (!(t.p < t.e && t.e < t.q && t.q < h.bar()) || t.m < 1)
        return SemiDec::Unknown;                                       // (6)
    Rat mesh = pow2(-(long)(t.k + hint.k0 + 3));
    if (!fmesh_lt(h, mesh)) return SemiDec::Unknown;                   // (7)
    if (!chain_formally_contained(h, t.p, t.q, hint.a, Rat((long)t.m)))
        return SemiDec::Unknown;                                       // (5)
    if (!formally_disjoint(hint.A, h, t.e, h.bar())) return SemiDec::Unknown;
    if (!formally_disjoint(hint.B, h, 0, t.e)) return SemiDec::Unknown;
    if (!formally_disjoint(hint.C, t.u))
        return SemiDec::Unknown;                                       // (10)
    if (!is_formal_chain(h)) return SemiDec::Unknown;                  // (1)
    if (!formally_disjoint(t.u, h)) return SemiDec::Unknown;           // (2)
    SetCode mid = union_with(t.u, h.union_range(t.p, t.q));
    if (S.ball_anchor_query(hint.a, t.n, mid, fuel) != SemiDec::Yes)
        return SemiDec::Unknown;                                       // (3)
    SetCode full = union_with(t.u, h.union_range(0, h.bar()));
    if (S.ball_anchor_query(hint.a, t.m, full, fuel) != SemiDec::Yes)
        return SemiDec::Unknown;                                       // (4)
    return SemiDec::Yes;
}

Point anchor_from_endpoint(const ComputablePointSeq& endpoint) {
    Point p = endpoint.approx(2);
    Rat q = rat(1, 4);
    return Point(round_long(p[0] / q) * q, round_long(p[1] / q) * q);
}

// --- candidate generation -----------------------------------------------

std::vector<RayTuple> propose_ray_candidates(const PresentedSet& S,
                                             const ComputablePointSeq& endpoint,
                                             const Point& a, unsigned long n,
                                             unsigned long k,
                                             unsigned long stage,
                                             unsigned fuel) {
    long s = (long)(k + 3 + stage);
    unsigned long m = n + 2;
    Grid grid(S, a, pow2(-s), Rat((long)m + 1), fuel);
    Cell seed = grid.snap(endpoint.approx((unsigned)s + 4));
    std::map<Cell, long> depth;
    std::vector<std::vector<Cell>> levels = bfs_levels(grid, seed, depth);
    if (levels.size() < 3) return {};

    std::vector<SetCode> links;
    links.reserve(levels.size());
    for (const auto& lv : levels) links.push_back(level_code(grid, lv));
    FormalChain h{std::move(links)};

    // p: last prefix link still formally inside B(a,m)
    Rat mr((long)m);
    if (!links_contained(h, 0, a, mr)) return {};
    std::size_t p = 0;
    while (p + 1 < h.size() && links_contained(h, p + 1, a, mr)) ++p;
    if (p + 1 >= h.size()) return {};  // chain never leaves B(a,m)

    SetCode u = propose_u(S, a, m, h, {}, fuel);
    RayTuple t;
    t.n = n;
    t.k = k;
    t.m = m;
    t.p = p;
    t.chain = std::move(h);
    t.u = std::move(u);
    return {std::move(t)};
}

std::vector<LineTuple> propose_line_candidates(const PresentedSet& S,
                                               const AnchorHint& hint,
                                               unsigned long n, unsigned long k,
                                               unsigned long stage,
                                               unsigned fuel) {
    long s = (long)(k + hint.k0 + 4 + stage);
    unsigned long m = n + 2;
    Grid grid(S, hint.a, pow2(-s), Rat((long)m + 1), fuel);

    // seed: lexicographically first alive cell near I_C (which holds f(0))
    Cell c0 = grid.snap(hint.C.center);
    long r = floor_long(hint.C.radius / grid.c) + 2;
    std::optional<Cell> seed;
    for (long x = c0.x - r; x <= c0.x + r && !seed; ++x)
        for (long y = c0.y - r; y <= c0.y + r; ++y) {
            Cell g{x, y};
            if (grid.in_bounds(g) && grid.alive(g)) {
                seed = g;
                break;
            }
        }
    if (!seed) return {};

    // Double BFS finds the two chain ends; each gives one orientation.
    std::map<Cell, long> depth1;
    std::vector<std::vector<Cell>> lv1 = bfs_levels(grid, *seed, depth1);
    if (lv1.size() < 3) return {};
    Cell end1 = lv1.back().front();
    std::map<Cell, long> depth2;
    std::vector<std::vector<Cell>> lv2 = bfs_levels(grid, end1, depth2);
    Cell end2 = lv2.back().front();
    std::vector<Cell> starts{end1};
    if (!(end2 == end1)) starts.push_back(end2);

    std::vector<LineTuple> out;
    for (const Cell& start : starts) {
        std::map<Cell, long> depth;
        std::vector<std::vector<Cell>> levels = bfs_levels(grid, start, depth);
        if (levels.size() < 4 || !depth.count(*seed)) continue;
        std::size_t e = (std::size_t)depth[*seed];

        std::vector<SetCode> links;
        links.reserve(levels.size());
        for (const auto& lv : levels) links.push_back(level_code(grid, lv));
        FormalChain h{std::move(links)};

        Rat mr((long)m);
        if (e >= h.size() || !links_contained(h, e, hint.a, mr)) continue;
        std::size_t p = e, q = e;
        while (p > 0 && links_contained(h, p - 1, hint.a, mr)) --p;
        while (q + 1 < h.size() && links_contained(h, q + 1, hint.a, mr)) ++q;
        if (!(p < e && e < q && q < h.bar())) continue;

        SetCode u = propose_u(S, hint.a, m, h, {hint.C}, fuel);
        LineTuple t;
        t.n = n;
        t.k = k;
        t.m = m;
        t.p = p;
        t.q = q;
        t.e = e;
        t.chain = std::move(h);
        t.u = std::move(u);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<RayTuple> naive_ray_candidates(unsigned long n, unsigned long k,
                                           unsigned long stage) {
    std::vector<RayTuple> out;
    for (unsigned long m = 0; m <= stage; ++m)
        for (unsigned long l = 0; l <= stage; ++l)
            for (unsigned long p = 0; p <= stage; ++p)
                for (unsigned long u = 0; u <= stage; ++u) {
                    RayTuple t;
                    t.n = n;
                    t.k = k;
                    t.m = m;
                    t.p = p;
                    t.chain = FormalChain(SetCode(Nat(l)));
                    t.u = SetCode(Nat(u));
                    out.push_back(std::move(t));
                }
    return out;
}

// --- the dovetailed search ----------------------------------------------

namespace {

unsigned fuel_for(unsigned long scale, unsigned long fuel_step) {
    return (unsigned)(scale + 4 + 2 * fuel_step);
}

template <typename Eval>
Witness dovetail(unsigned long step_cap, unsigned workers, Eval eval) {
    if (workers == 0) workers = 1;
    for (unsigned long t0 = 0; t0 < step_cap; t0 += workers) {
        unsigned long batch = std::min<unsigned long>(workers, step_cap - t0);
        std::vector<std::optional<Witness>> results(batch);
        if (batch == 1) {
            results[0] = eval(t0);
        } else {
            std::vector<std::thread> threads;
            for (unsigned long i = 0; i < batch; ++i)
                threads.emplace_back(
                    [&, i] { results[i] = eval(t0 + i); });
            for (auto& th : threads) th.join();
        }
        for (unsigned long i = 0; i < batch; ++i)
            if (results[i]) return std::move(*results[i]);
    }
    throw std::runtime_error("search budget exhausted");
}

}  // namespace

Witness ray_search(const PresentedSet& S, const ComputablePointSeq& endpoint,
                   unsigned long n, unsigned long k, const SearchConfig& cfg) {
    Point a = anchor_from_endpoint(endpoint);
    auto eval = [&](unsigned long t) -> std::optional<Witness> {
        auto [stage_z, fuel_z] = unpair(Nat(t));
        unsigned long stage = stage_z.get_ui(), fs = fuel_z.get_ui();
        unsigned fuel = fuel_for(k + 3 + stage, fs);
        std::vector<RayTuple> cands =
            cfg.naive ? naive_ray_candidates(n, k, stage)
                      : propose_ray_candidates(S, endpoint, a, n, k, stage,
                                               fuel);
        for (RayTuple& c : cands)
            if (ray_certify(c, S, endpoint, a, fuel) == SemiDec::Yes) {
                Witness w;
                w.line = false;
                w.n = n;
                w.k = k;
                w.m = c.m;
                w.p = c.p;
                w.chain = std::move(c.chain);
                w.u = std::move(c.u);
                w.fuel = fuel;
                w.stage = stage;
                w.links.assign(w.chain.links.begin(),
                               w.chain.links.begin() + (long)(w.p + 1));
                return w;
            }
        return std::nullopt;
    };
    return dovetail(cfg.step_cap, cfg.workers, eval);
}

Witness line_search(const PresentedSet& S, const AnchorHint& hint,
                    unsigned long n, unsigned long k, const SearchConfig& cfg) {
    auto eval = [&](unsigned long t) -> std::optional<Witness> {
        auto [stage_z, fuel_z] = unpair(Nat(t));
        unsigned long stage = stage_z.get_ui(), fs = fuel_z.get_ui();
        unsigned fuel = fuel_for(k + hint.k0 + 4 + stage, fs);
        std::vector<LineTuple> cands =
            propose_line_candidates(S, hint, n, k, stage, fuel);
        for (LineTuple& c : cands)
            if (line_certify(c, S, hint, fuel) == SemiDec::Yes) {
                Witness w;
                w.line = true;
                w.n = n;
                w.k = k;
                w.m = c.m;
                w.p = c.p;
                w.q = c.q;
                w.e = c.e;
                w.chain = std::move(c.chain);
                w.u = std::move(c.u);
                w.fuel = fuel;
                w.stage = stage;
                w.links.assign(w.chain.links.begin() + (long)w.p,
                               w.chain.links.begin() + (long)(w.q + 1));
                return w;
            }
        return std::nullopt;
    };
    return dovetail(cfg.step_cap, cfg.workers, eval);
}

}  // namespace ccb
