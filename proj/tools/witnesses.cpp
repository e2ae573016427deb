// Offline corpus generator: exhaustively scans the first N canonical ball
// indices of a fixture for the slack-intersection witness list, then runs
// the enumeration stream until the list is fully emitted, reporting the
// round budget to publish. Usage: witnesses <fixture.json> [limit]
#include <fstream>
#include <iostream>

#include "ccb/verify.hpp"

using namespace ccb;

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: witnesses <fixture.json> [limit]\n";
        return 3;
    }
    unsigned long limit = argc > 2 ? std::stoul(argv[2]) : 5000;
    Fixture fx = load_fixture(argv[1]);
    std::vector<BallIndex> wl = slack_witness_list(fx, limit);
    std::cerr << fx.name << ": " << wl.size() << " witnesses under " << limit
              << "\n";

    std::ofstream f(fx.name + ".witnesses");
    for (const BallIndex& i : wl) f << i.index.get_str() << "\n";

    PresentedSet S = fixture_presentation(fx);
    bool line = fx.primary().mode == Component::Mode::line;
    IntersectStream st = line
                             ? intersect_stream_line(S, *fx.hint)
                             : intersect_stream_ray(
                                   S, constant_point(fx.ray_endpoint()));
    std::set<Nat> need;
    for (const BallIndex& i : wl) need.insert(i.index);
    unsigned long cap = 200;
    while (!need.empty()) {
        std::optional<BallIndex> i = st.next(cap);
        if (!i) {
            std::cerr << "cap " << cap << " exhausted, " << need.size()
                      << " missing, first: "
                      << need.begin()->get_str() << "\n";
            return 2;
        }
        need.erase(i->index);
    }
    std::cerr << "complete after " << st.rounds_run() << " rounds\n";
    return 0;
}
