#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ccb/verify.hpp"

using namespace ccb;

namespace {

constexpr int kExitFail = 1;      // a verification check failed
constexpr int kExitBudget = 2;    // search/round budget exhausted
constexpr int kExitBadInput = 3;  // arguments, files, parse errors

Point parse_anchor(const std::string& s) {
    std::vector<Rat> coords;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos);
        coords.push_back(rat_parse(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Point(coords);
}

// Accepts "40", "10^6", and unit suffixes like "10^6-steps".
unsigned long parse_budget(const std::string& s) {
    std::size_t pos = 0;
    auto digits = [&]() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) throw std::invalid_argument("bad budget: " + s);
        return std::stoul(s.substr(start, pos - start));
    };
    unsigned long base = digits();
    if (pos < s.size() && s[pos] == '^') {
        ++pos;
        unsigned long e = digits();
        unsigned long out = 1;
        while (e--) out *= base;
        base = out;
    }
    return base;
}

bool fixture_is_line(const Fixture& fx) {
    return fx.primary().mode == Component::Mode::line;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << text;
}

struct Common {
    std::string fixture_path, mode, anchor;
    unsigned long n = 1, k = 1, workers = 1, step_cap = 64;

    void add_to(CLI::App* cmd, bool with_nk) {
        cmd->add_option("--fixture", fixture_path, "fixture JSON path")
            ->required();
        cmd->add_option("--mode", mode, "ray or line (default: from fixture)");
        cmd->add_option("--anchor", anchor,
                        "ray endpoint as rational coordinates p/q,p/q");
        if (with_nk) {
            cmd->add_option("--n", n, "anchor ball radius");
            cmd->add_option("--k", k, "mesh exponent: links finer than 2^-k");
        }
        cmd->add_option("--workers", workers, "search worker threads");
        cmd->add_option("--step-cap", step_cap, "dovetail step cap");
    }

    Fixture load() const { return load_fixture(fixture_path); }

    bool line_mode(const Fixture& fx) const {
        if (mode == "ray") return false;
        if (mode == "line") return true;
        if (mode.empty()) return fixture_is_line(fx);
        throw std::invalid_argument("bad mode: " + mode);
    }

    SearchConfig config() const {
        SearchConfig cfg;
        cfg.workers = (unsigned)workers;
        cfg.step_cap = step_cap;
        return cfg;
    }

    ComputablePointSeq endpoint(const Fixture& fx) const {
        return constant_point(anchor.empty() ? fx.ray_endpoint()
                                             : parse_anchor(anchor));
    }
};

int cmd_draw(const Common& c, const std::string& out, const std::string& svg) {
    Fixture fx = c.load();
    PresentedSet S = fixture_presentation(fx);
    CertifiedCover cover;
    if (c.line_mode(fx)) {
        if (!fx.hint)
            throw std::invalid_argument("line draw needs a fixture hint");
        cover = draw_line(S, *fx.hint, c.n, c.k, c.config());
    } else {
        cover = draw_ray(S, c.endpoint(fx), c.n, c.k, c.config());
    }
    write_out(out, cover_to_csv(cover));
    if (!svg.empty()) write_out(svg, cover_to_svg(cover, &fx));
    return 0;
}

int cmd_enumerate(const Common& c, unsigned long limit,
                  const std::string& budget, const std::string& out) {
    Fixture fx = c.load();
    PresentedSet S = fixture_presentation(fx);
    unsigned long rounds = parse_budget(budget);
    IntersectStream st =
        c.line_mode(fx)
            ? intersect_stream_line(S, *fx.hint, c.config())
            : intersect_stream_ray(S, c.endpoint(fx), c.config());
    std::string text = "ball_index,center,radius\n";
    unsigned long got = 0;
    while (got < limit) {
        std::optional<BallIndex> i = st.next(rounds);
        if (!i) break;
        Ball b = decode_ball(*i);
        text += i->index.get_str() + "," + rat_str(b.center[0]) + ";" +
                rat_str(b.center[1]) + "," + rat_str(b.radius) + "\n";
        ++got;
    }
    write_out(out, text);
    return got < limit ? kExitBudget : 0;
}

int cmd_verify(const Common& c, const std::string& cover_path,
               const std::string& out) {
    Fixture fx = c.load();
    std::ifstream f(cover_path);
    if (!f) throw std::invalid_argument("cannot read " + cover_path);
    std::string csv((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
    Verdict v = verify_cover(cover_from_csv(csv), fx);
    write_out(out, verdict_json(v) + "\n");
    if (v.result == "fail") return kExitFail;
    if (v.result == "undecided-at-cap") return kExitBudget;
    return 0;
}

int cmd_chain(const Common& c) {
    Fixture fx = c.load();
    PresentedSet S = fixture_presentation(fx);
    Witness w;
    if (c.line_mode(fx)) {
        if (!fx.hint)
            throw std::invalid_argument("line search needs a fixture hint");
        w = line_search(S, *fx.hint, c.n, c.k, c.config());
    } else {
        w = ray_search(S, c.endpoint(fx), c.n, c.k, c.config());
    }
    std::cout << "mode=" << (w.line ? "line" : "ray") << " n=" << w.n
              << " k=" << w.k << " m=" << w.m << " stage=" << w.stage
              << " fuel=" << w.fuel << " chain=" << w.chain.bar()
              << " p=" << w.p;
    if (w.line) std::cout << " e=" << w.e << " q=" << w.q;
    std::cout << " links=" << w.links.size() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certified covers of rays and lines in the plane"};
    app.require_subcommand(1);

    Common cd, ce, cv, cc;
    std::string out, svg, cover_path, vout, eout, budget = "64";
    unsigned long limit = 50;

    CLI::App* draw = app.add_subcommand("draw", "draw a certified cover");
    cd.add_to(draw, true);
    draw->add_option("--out", out, "cover CSV path (default stdout)");
    draw->add_option("--svg", svg, "also render an SVG");

    CLI::App* en = app.add_subcommand("enumerate",
                                      "stream balls meeting the set");
    ce.add_to(en, false);
    en->add_option("--limit", limit, "emissions to print");
    en->add_option("--budget", budget, "round budget (e.g. 40 or 10^2)");
    en->add_option("--out", eout, "output CSV path (default stdout)");

    CLI::App* ver = app.add_subcommand("verify", "re-check a cover exactly");
    cv.add_to(ver, false);
    ver->add_option("--cover", cover_path, "cover CSV to verify")->required();
    ver->add_option("--out", vout, "verdict JSONL path (default stdout)");

    CLI::App* ch = app.add_subcommand("chain", "run the raw witness search");
    cc.add_to(ch, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitBadInput;
    }

    try {
        if (draw->parsed()) return cmd_draw(cd, out, svg);
        if (en->parsed()) return cmd_enumerate(ce, limit, budget, eout);
        if (ver->parsed()) return cmd_verify(cv, cover_path, vout);
        return cmd_chain(cc);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()) == "search budget exhausted"
                   ? kExitBudget
                   : kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
