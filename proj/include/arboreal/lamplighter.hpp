#pragma once

#include <cstdint>
#include <vector>

#include "arboreal/common.hpp"

namespace arboreal {

// State of the lamplighter over the N-cycle: lamp configuration as a bitmask
// over Z_N plus the walker position.
struct LampState {
    std::uint64_t lamps = 0;
    int pos = 0;

    bool operator==(const LampState& o) const { return lamps == o.lamps && pos == o.pos; }
};

class LamplighterSpace {
public:
    explicit LamplighterSpace(int N);

    int N() const { return n_; }
    void validate(const LampState& s) const;

    // Word metric in the move/toggle generators. The walk component is the
    // shortest cycle walk from s1.pos visiting every differing lamp and
    // ending at s2.pos; an optimal walk on a cycle reverses at most once, so
    // the candidate routes can be enumerated directly.
    int distance(const LampState& s1, const LampState& s2) const;

    // Exact BFS distance over the full Cayley graph, N <= 16.
    int bfs_distance(const LampState& s1, const LampState& s2) const;

private:
    int walk_cost(int from, int to, std::uint64_t must_visit) const;

    int n_;
};

}  // namespace arboreal
