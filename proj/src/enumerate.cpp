#include "ccb/enumerate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ccb {

CertifiedCover draw_ray(const PresentedSet& S,
                        const ComputablePointSeq& endpoint, unsigned long n,
                        unsigned long k, const SearchConfig& cfg) {
    CertifiedCover c;
    c.a = anchor_from_endpoint(endpoint);
    c.n = n;
    c.k = k;
    c.witness = ray_search(S, endpoint, n, k, cfg);
    c.links = c.witness.links;
    return c;
}

CertifiedCover draw_line(const PresentedSet& S, const AnchorHint& hint,
                         unsigned long n, unsigned long k,
                         const SearchConfig& cfg) {
    CertifiedCover c;
    c.a = hint.a;
    c.n = n;
    c.k = k;
    c.witness = line_search(S, hint, n, k, cfg);
    c.links = c.witness.links;
    return c;
}

// --- the emission stream ------------------------------------------------

struct IntersectStream::Digest {
    struct Link {
        std::vector<Ball> balls;
        Rat xmin, xmax, ymin, ymax;  // member center bounds
    };
    std::vector<Link> links;  // sorted by xmin
    Rat span;                 // widest link x-extent
    std::vector<Rat> blo, bhi;  // bounding box of all member centers

    explicit Digest(const std::vector<SetCode>& codes) {
        links.reserve(codes.size());
        for (const SetCode& code : codes) {
            Link l;
            l.balls = member_balls(code);
            l.xmin = l.xmax = l.balls[0].center[0];
            l.ymin = l.ymax =
                l.balls[0].center.dim() > 1 ? l.balls[0].center[1] : Rat(0);
            for (const Ball& b : l.balls) {
                if (b.center[0] < l.xmin) l.xmin = b.center[0];
                if (b.center[0] > l.xmax) l.xmax = b.center[0];
                if (b.center.dim() > 1) {
                    if (b.center[1] < l.ymin) l.ymin = b.center[1];
                    if (b.center[1] > l.ymax) l.ymax = b.center[1];
                }
            }
            links.push_back(std::move(l));
        }
        std::sort(links.begin(), links.end(),
                  [](const Link& a, const Link& b) { return a.xmin < b.xmin; });
        span = 0;
        for (const Link& l : links) {
            Rat w = l.xmax - l.xmin;
            if (w > span) span = w;
            for (const Ball& b : l.balls)
                for (std::size_t d = 0; d < b.center.dim(); ++d) {
                    if (blo.size() <= d) {
                        blo.push_back(b.center[d]);
                        bhi.push_back(b.center[d]);
                    }
                    if (b.center[d] < blo[d]) blo[d] = b.center[d];
                    if (b.center[d] > bhi[d]) bhi[d] = b.center[d];
                }
        }
    }

    // Some link formally contained in the open ball I?
    bool feeds(const Ball& I) const {
        // a contained link has all member centers within I's radius
        Rat rr = I.radius * I.radius, d2 = 0;
        for (std::size_t d = 0; d < blo.size() && d < I.center.dim(); ++d) {
            Rat g = 0;
            if (I.center[d] < blo[d])
                g = blo[d] - I.center[d];
            else if (I.center[d] > bhi[d])
                g = I.center[d] - bhi[d];
            d2 += g * g;
        }
        if (d2 >= rr) return false;
        Rat wlo = I.center[0] - I.radius - span;
        Rat whi = I.center[0] + I.radius;
        auto it = std::lower_bound(
            links.begin(), links.end(), wlo,
            [](const Link& l, const Rat& v) { return l.xmin < v; });
        for (; it != links.end() && it->xmin <= whi; ++it) {
            if (I.center.dim() > 1) {
                if (it->ymin - I.center[1] >= I.radius) continue;
                if (I.center[1] - it->ymax >= I.radius) continue;
            }
            bool inside = true;
            for (const Ball& b : it->balls)
                if (!formally_contained(b, I.center, I.radius)) {
                    inside = false;
                    break;
                }
            if (inside) return true;
        }
        return false;
    }
};

IntersectStream::IntersectStream(SearchFn search, std::size_t chunk)
    : search_(std::move(search)), chunk_(chunk) {}

IntersectStream::IntersectStream(IntersectStream&&) noexcept = default;
IntersectStream& IntersectStream::operator=(IntersectStream&&) noexcept =
    default;
IntersectStream::~IntersectStream() = default;

void IntersectStream::run_round() {
    unsigned long r = round_++;
    auto [nz, kz] = unpair(Nat(r));
    unsigned long n = nz.get_ui(), k = kz.get_ui();

    std::vector<Pending> fresh;
    fresh.reserve(chunk_);
    for (std::size_t i = chunk_ * r; i < chunk_ * (r + 1); ++i)
        fresh.push_back(Pending{Nat(i), decode_ball(BallIndex(Nat(i)))});

    std::set<Nat> hits;
    for (const Digest& d : digests_)
        for (const Pending& p : fresh)
            if (d.feeds(p.ball)) hits.insert(p.index);

    std::optional<Witness> w;
    try {
        w = search_(n, k);
    } catch (const std::runtime_error&) {
        // round's search budget spent; later rounds still make progress
    }
    if (w) {
        digests_.emplace_back(w->links);
        const Digest& d = digests_.back();
        for (const Pending& p : pending_)
            if (!emitted_.count(p.index) && d.feeds(p.ball))
                hits.insert(p.index);
        for (const Pending& p : fresh)
            if (d.feeds(p.ball)) hits.insert(p.index);
    }

    for (Pending& p : fresh) pending_.push_back(std::move(p));
    for (const Nat& i : hits)
        if (emitted_.insert(i).second) queue_.push_back(BallIndex(i));
}

std::optional<BallIndex> IntersectStream::next(unsigned long round_cap) {
    while (queue_pos_ == queue_.size() && round_ < round_cap) run_round();
    if (queue_pos_ == queue_.size()) return std::nullopt;
    return queue_[queue_pos_++];
}

IntersectStream intersect_stream_ray(const PresentedSet& S,
                                     const ComputablePointSeq& endpoint,
                                     const SearchConfig& cfg) {
    return IntersectStream([S, endpoint, cfg](unsigned long n,
                                              unsigned long k) {
        return ray_search(S, endpoint, n, k, cfg);
    });
}

IntersectStream intersect_stream_line(const PresentedSet& S,
                                      const AnchorHint& hint,
                                      const SearchConfig& cfg) {
    return IntersectStream([S, hint, cfg](unsigned long n, unsigned long k) {
        return line_search(S, hint, n, k, cfg);
    });
}

// --- the section-7 reductions -------------------------------------------

std::function<SemiDec(const SetCode&, unsigned)> compact_component_cover(
    const PresentedSet& M, const std::vector<BallIndex>& isolating) {
    if (isolating.empty())
        throw std::invalid_argument("no isolating balls");
    return [M, isolating](const SetCode& j, unsigned fuel) {
        for (const BallIndex& i : isolating)
            if (M.covers_query(i, j, fuel) != SemiDec::Yes)
                return SemiDec::Unknown;
        return SemiDec::Yes;
    };
}

Point boundary_point(const PresentedSet& M, const PresentedSet& boundary,
                     const BallIndex& isolating, unsigned k) {
    (void)M;  // the isolating ball already pins the component; only the
              // boundary presentation carries the point
    auto proc = compact_component_cover(boundary, {isolating});
    PresentedSet K;
    K.covers_query = [proc](const BallIndex&, const SetCode& j,
                            unsigned fuel) { return proc(j, fuel); };
    K.ball_anchor_query = [proc](const Point&, unsigned long,
                                 const SetCode& j,
                                 unsigned fuel) { return proc(j, fuel); };
    Ball iso = decode_ball(isolating);
    unsigned long n = 1;
    while (Rat((long)n) < iso.radius) ++n;
    return point_from_singleton(K, iso.center, n, k);
}

// --- serialization ------------------------------------------------------

std::string cover_to_csv(const CertifiedCover& c) {
    std::ostringstream out;
    out << "# mode=" << (c.witness.line ? "line" : "ray") << "\n";
    out << "# anchor=";
    for (std::size_t d = 0; d < c.a.dim(); ++d)
        out << (d ? ";" : "") << rat_str(c.a[d]);
    out << "\n# n=" << c.n << "\n# k=" << c.k << "\n";
    out << "link_ordinal,ball_index,center,radius\n";
    for (std::size_t l = 0; l < c.links.size(); ++l)
        for (const Nat& e : c.links[l].entry_set()) {
            Ball b = decode_ball(BallIndex(e));
            out << l << "," << nat_str(e) << ",";
            for (std::size_t d = 0; d < b.center.dim(); ++d)
                out << (d ? ";" : "") << rat_str(b.center[d]);
            out << "," << rat_str(b.radius) << "\n";
        }
    return out.str();
}

CertifiedCover cover_from_csv(const std::string& text) {
    CertifiedCover c;
    std::istringstream in(text);
    std::string line;
    std::map<unsigned long, std::vector<Nat>> by_link;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(2, eq - 2);
            std::string val = line.substr(eq + 1);
            if (key == "mode")
                c.witness.line = (val == "line");
            else if (key == "anchor") {
                std::vector<Rat> coords;
                std::istringstream vs(val);
                std::string part;
                while (std::getline(vs, part, ';'))
                    coords.push_back(rat_parse(part));
                c.a = Point(std::move(coords));
            } else if (key == "n")
                c.n = std::stoul(val);
            else if (key == "k")
                c.k = std::stoul(val);
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header row
            continue;
        }
        std::istringstream fs(line);
        std::string ord, idx, center, radius;
        if (!std::getline(fs, ord, ',') || !std::getline(fs, idx, ',') ||
            !std::getline(fs, center, ',') || !std::getline(fs, radius))
            throw std::invalid_argument("malformed cover row: " + line);
        Nat e = nat_parse(idx);
        Ball b = decode_ball(BallIndex(e));
        std::vector<Rat> coords;
        std::istringstream cs(center);
        std::string part;
        while (std::getline(cs, part, ';')) coords.push_back(rat_parse(part));
        if (!(Point(coords) == b.center) || rat_parse(radius) != b.radius)
            throw std::invalid_argument("cover row disagrees with index: " +
                                        line);
        by_link[std::stoul(ord)].push_back(e);
    }
    for (auto& [ord, entries] : by_link) {
        if (ord != c.links.size())
            throw std::invalid_argument("non-contiguous link ordinals");
        c.links.push_back(SetCode(std::move(entries)));
    }
    if (c.links.empty()) throw std::invalid_argument("empty cover");
    c.witness.links = c.links;
    c.witness.n = c.n;
    c.witness.k = c.k;
    return c;
}

namespace {

double dbl(const Rat& q) { return q.get_d(); }

}  // namespace

std::string cover_to_svg(const CertifiedCover& c, const Fixture* fx) {
    double xlo = 1e9, xhi = -1e9, ylo = 1e9, yhi = -1e9;
    std::vector<Ball> balls;
    for (const SetCode& l : c.links)
        for (const Ball& b : member_balls(l)) balls.push_back(b);
    for (const Ball& b : balls) {
        xlo = std::min(xlo, dbl(b.center[0] - b.radius));
        xhi = std::max(xhi, dbl(b.center[0] + b.radius));
        ylo = std::min(ylo, dbl(b.center[1] - b.radius));
        yhi = std::max(yhi, dbl(b.center[1] + b.radius));
    }
    double pad = 0.05 * std::max(xhi - xlo, yhi - ylo) + 0.01;
    xlo -= pad, xhi += pad, ylo -= pad, yhi += pad;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xlo
        << " " << ylo << " " << (xhi - xlo) << " " << (yhi - ylo)
        << "\">\n<g transform=\"scale(1,-1) translate(0," << -(ylo + yhi)
        << ")\">\n";
    double stroke = (xhi - xlo) / 400.0;
    for (const Ball& b : balls)
        out << "<circle cx=\"" << dbl(b.center[0]) << "\" cy=\""
            << dbl(b.center[1]) << "\" r=\"" << dbl(b.radius)
            << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\""
            << stroke << "\"/>\n";
    if (fx) {
        for (const Component& comp : fx->components) {
            if (comp.type == Component::Type::circle) {
                out << "<circle cx=\"" << dbl(comp.center[0]) << "\" cy=\""
                    << dbl(comp.center[1]) << "\" r=\"" << dbl(comp.radius)
                    << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
                    << stroke << "\"/>\n";
                continue;
            }
            out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\""
                << stroke << "\" points=\"";
            if (comp.head)
                out << dbl(comp.vertices.front()[0] + 100 * (*comp.head)[0])
                    << "," << dbl(comp.vertices.front()[1] +
                                  100 * (*comp.head)[1])
                    << " ";
            for (const Point& v : comp.vertices)
                out << dbl(v[0]) << "," << dbl(v[1]) << " ";
            if (comp.tail)
                out << dbl(comp.vertices.back()[0] + 100 * (*comp.tail)[0])
                    << "," << dbl(comp.vertices.back()[1] +
                                  100 * (*comp.tail)[1]);
            out << "\"/>\n";
        }
        for (const NoiseBall& nb : fx->noise)
            out << "<circle cx=\"" << dbl(nb.center[0]) << "\" cy=\""
                << dbl(nb.center[1]) << "\" r=\"" << dbl(nb.radius)
                << "\" fill=\"none\" stroke=\"firebrick\" stroke-width=\""
                << stroke << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace ccb
