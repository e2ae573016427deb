#include "ccb/presentations.hpp"

#include <stdexcept>

namespace ccb {

SemiDec intersect_empty(const PresentedSet& S, const BallIndex& i,
                        unsigned fuel) {
    Ball bi = decode_ball(i);
    for (unsigned long jc = 0; jc <= fuel; ++jc) {
        SetCode j((Nat(jc)));
        if (!formally_disjoint(bi, j)) continue;
        if (covers(S, i, j, fuel) == SemiDec::Yes) return SemiDec::Yes;
    }
    return SemiDec::Unknown;
}

namespace {

bool boxes_rec(const Box& box, const std::vector<Ball>& musts,
               const std::vector<Ball>& members, unsigned depth) {
    for (const Ball& m : musts)
        if (!box_meets_closed_ball(box, m.center, m.radius)) return true;
    for (const Ball& b : members)
        if (box_inside_open_ball(box, b.center, b.radius)) return true;
    if (depth == 0) return false;
    for (const Box& child : split_box(box))
        if (!boxes_rec(child, musts, members, depth - 1)) return false;
    return true;
}

}  // namespace

SemiDec boxes_in_code(const std::vector<Ball>& musts, const SetCode& j,
                      unsigned fuel) {
    if (musts.empty()) throw std::invalid_argument("no region to cover");
    Box root = bounding_box(musts[0].center, musts[0].radius);
    std::vector<Ball> members = member_balls(j);
    return boxes_rec(root, musts, members, fuel) ? SemiDec::Yes
                                                 : SemiDec::Unknown;
}

SemiDec closed_ball_in_code(const BallIndex& i, const SetCode& j,
                            unsigned fuel) {
    return boxes_in_code({decode_ball(i)}, j, fuel);
}

PresentedSet from_coce(CoCePresentation P) {
    auto augmented = [P](const SetCode& j, unsigned fuel) {
        std::vector<Nat> entries = j.entries();
        for (unsigned k = 0; k < fuel; ++k)
            entries.push_back(P.complement_enum(Nat(k)).index);
        return SetCode(std::move(entries));
    };
    PresentedSet out;
    out.covers_query = [augmented](const BallIndex& i, const SetCode& j,
                                   unsigned fuel) {
        return closed_ball_in_code(i, augmented(j, fuel), fuel);
    };
    out.ball_anchor_query = [augmented](const Point& a, unsigned long n,
                                        const SetCode& j, unsigned fuel) {
        return boxes_in_code({Ball{a, Rat(n)}}, augmented(j, fuel), fuel);
    };
    return out;
}

PresentedSet from_semicompact(std::function<SetCode(const Nat&)> cov,
                              bool nonempty) {
    // Prop.-style witness split: every member of a covering code is either
    // formally clear of the probe region or provably inside J_j.
    auto decide = [cov](const Point& probe_c, const Rat& probe_r,
                        const SetCode& j, unsigned fuel) {
        for (unsigned k = 0; k <= fuel; ++k) {
            SetCode c = cov(Nat(k));
            bool all_ok = true;
            for (const Ball& m : member_balls(c)) {
                bool clear =
                    dist_expr(m.center, probe_c).gt(m.radius + probe_r);
                if (clear) continue;
                Ball closed_m{m.center, m.radius};
                if (boxes_in_code({closed_m}, j, fuel) != SemiDec::Yes) {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok) return SemiDec::Yes;
        }
        return SemiDec::Unknown;
    };
    PresentedSet out;
    out.nonempty_hint = nonempty;
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

SemiDec point_in_code(const ComputablePointSeq& x, const SetCode& j,
                      unsigned fuel) {
    std::vector<Ball> members = member_balls(j);
    for (unsigned s = 0; s <= fuel; ++s) {
        Point p = x.approx(s);
        for (const Ball& b : members)
            if (DistanceExpr{dist2(p, b.center), pow2(-(long)s)}.lt(b.radius))
                return SemiDec::Yes;
    }
    return SemiDec::Unknown;
}

BallIndex ComplementEnum::next() {
    for (;;) {
        auto [u, f] = unpair(t_);
        t_ += 1;
        if (!f.fits_ulong_p()) continue;
        if (emitted_.count(u)) continue;
        if (intersect_empty(S_, BallIndex(u),
                            static_cast<unsigned>(f.get_ui())) ==
            SemiDec::Yes) {
            emitted_.insert(u);
            return BallIndex(u);
        }
    }
}

namespace {

// Multiples of g in [lo, hi], ascending.
std::vector<Rat> grid_1d(const Rat& lo, const Rat& hi, const Rat& g) {
    mpz_class i0, i1;
    Rat a = lo / g, b = hi / g;
    mpz_cdiv_q(i0.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(i1.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    std::vector<Rat> out;
    for (mpz_class i = i0; i <= i1; ++i) out.push_back(Rat(i) * g);
    return out;
}

}  // namespace

PresentedSet finite_point_presentation(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    auto decide = [pts](const Point& c, const Rat& r, const SetCode& j) {
        for (const Point& x : pts) {
            if (dist2(x, c) > r * r) continue;  // outside the closed probe
            bool in = false;
            for (const Ball& m : member_balls(j))
                if (dist2(x, m.center) < m.radius * m.radius) {
                    in = true;
                    break;
                }
            if (!in) return SemiDec::Unknown;
        }
        return SemiDec::Yes;
    };
    PresentedSet out;
    out.covers_query = [decide](const BallIndex& i, const SetCode& j,
                                unsigned) {
        Ball b = decode_ball(i);
        return decide(b.center, b.radius, j);
    };
    out.ball_anchor_query = [decide](const Point& a, unsigned long n,
                                     const SetCode& j, unsigned) {
        return decide(a, Rat(n), j);
    };
    return out;
}

Point point_from_singleton(const PresentedSet& S, const Point& a,
                           unsigned long n, unsigned k) {
    if (a.dim() != ambient_dim())
        throw std::invalid_argument("anchor dimension mismatch");
    // Coarse-to-fine localization: at each scale find one grid ball that
    // provably swallows S inside the anchor, then recenter on it.
    Point c = a;
    Rat region = Rat(n);
    for (unsigned step = 0;; ++step) {
        Rat rho = pow2(-(long)(step + 2));
        Rat g = rho / 2;
        std::optional<Point> found;
        for (unsigned fuel = step + 4; !found; fuel *= 2) {
            std::vector<std::vector<Rat>> axes;
            for (std::size_t d = 0; d < a.dim(); ++d)
                axes.push_back(grid_1d(c[d] - region - rho, c[d] + region + rho, g));
            // canonical row-major scan
            std::vector<std::size_t> idx(a.dim(), 0);
            for (;;) {
                std::vector<Rat> coords;
                for (std::size_t d = 0; d < a.dim(); ++d)
                    coords.push_back(axes[d][idx[d]]);
                Point cand(coords);
                SetCode j(std::vector<Nat>{ball_index(cand, rho).index});
                if (S.ball_anchor_query(a, n, j, fuel) == SemiDec::Yes) {
                    found = cand;
                    break;
                }
                std::size_t d = a.dim();
                while (d-- > 0) {
                    if (++idx[d] < axes[d].size()) break;
                    idx[d] = 0;
                    if (d == 0) goto scan_done;
                }
            }
        scan_done:;
            if (fuel > (1u << 20)) throw std::runtime_error("search budget exhausted");
        }
        c = *found;
        region = rho;
        if (step + 2 >= k + 2) return c;
    }
}

}  // namespace ccb
