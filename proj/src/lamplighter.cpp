#include "arboreal/lamplighter.hpp"

#include <deque>
#include <limits>

namespace arboreal {

LamplighterSpace::LamplighterSpace(int N) : n_(N) {
    if (N < 1 || N > 64) throw input_error("lamplighter cycle size must be in [1, 64]");
}

void LamplighterSpace::validate(const LampState& s) const {
    if (s.pos < 0 || s.pos >= n_) throw input_error("lamplighter position out of range");
    if (n_ < 64 && (s.lamps >> n_) != 0) throw input_error("lamp mask exceeds cycle size");
}

int LamplighterSpace::walk_cost(int from, int to, std::uint64_t must_visit) const {
    if (n_ == 1) return 0;
    int best = std::numeric_limits<int>::max();
    for (int dir : {+1, -1}) {
        // Prefix masks of directed arcs anchored at `from` and at `to`.
        std::vector<std::uint64_t> from_arc(n_ + 1), to_arc(n_ + 1);
        int x = from, y = to;
        from_arc[0] = 1ULL << from;
        to_arc[0] = 1ULL << to;
        for (int i = 1; i <= n_; ++i) {
            x = (x + dir + n_) % n_;
            y = (y + dir + n_) % n_;
            from_arc[i] = from_arc[i - 1] | (1ULL << x);
            to_arc[i] = to_arc[i - 1] | (1ULL << y);
        }
        // First leg: a steps along dir; second leg: back along -dir to `to`.
        for (int a = 0; a <= n_; ++a) {
            int u = (from + dir * a % n_ + n_) % n_;
            int b = ((u - to) * dir % n_ + n_) % n_;
            std::uint64_t visited = from_arc[a] | to_arc[b];
            if ((must_visit & ~visited) == 0) {
                best = std::min(best, a + b);
            }
        }
    }
    return best;
}

int LamplighterSpace::distance(const LampState& s1, const LampState& s2) const {
    validate(s1);
    validate(s2);
    std::uint64_t diff = s1.lamps ^ s2.lamps;
    int toggles = __builtin_popcountll(diff);
    return toggles + walk_cost(s1.pos, s2.pos, diff);
}

int LamplighterSpace::bfs_distance(const LampState& s1, const LampState& s2) const {
    if (n_ > 16) throw resource_error("bfs oracle supports N <= 16");
    validate(s1);
    validate(s2);
    auto encode = [&](const LampState& s) {
        return static_cast<std::size_t>(s.lamps) * n_ + static_cast<std::size_t>(s.pos);
    };
    std::vector<int> dist(static_cast<std::size_t>(1ULL << n_) * n_, -1);
    std::deque<LampState> queue{s1};
    dist[encode(s1)] = 0;
    while (!queue.empty()) {
        LampState s = queue.front();
        queue.pop_front();
        int d = dist[encode(s)];
        if (s == s2) return d;
        LampState moves[3] = {
            {s.lamps, (s.pos + 1) % n_},
            {s.lamps, (s.pos + n_ - 1) % n_},
            {s.lamps ^ (1ULL << s.pos), s.pos},
        };
        for (const LampState& t : moves) {
            if (dist[encode(t)] == -1) {
                dist[encode(t)] = d + 1;
                queue.push_back(t);
            }
        }
    }
    throw input_error("state unreachable in lamplighter BFS");
}

}  // namespace arboreal
