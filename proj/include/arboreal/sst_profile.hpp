#pragma once

#include <vector>

#include "arboreal/generators.hpp"

namespace arboreal {

// Evaluators that exploit spherical symmetry: on an SST every vertex at a
// given depth is equivalent, so per-vertex dynamic programs and the downward
// random walk collapse to per-level recurrences. They make the doubly
// exponential instances (deep Cantor trees, very tall binary trees)
// computable; each one is cross-checked against the explicit-tree
// implementation on small instances in the test suite.

// Branch-point structure of the (unique) root-leaf path: gaps between
// consecutive branch points, with root and leaf as endpoints.
std::vector<double> sst_branch_gaps(const DegreeSequence& seq);

struct SstWeakCheck {
    bool ok = false;
    double fraction = 0.0;  // weight of qualifying gaps / height
};

// Degree-2 (eps, delta)-weak test of every root-leaf path (all identical).
SstWeakCheck sst_weak_prototype_check(const DegreeSequence& seq, double eps, double delta);

struct SstBinaryProfile {
    int k_lower = 0;
    double best_scale = 0.0;  // window lower endpoint L attaining k_lower
};

// Certified lower bound on the largest k with c_T(B_k) < c, via the
// per-level path-image DP over a sqrt(c)-geometric scale grid.
SstBinaryProfile sst_binary_profile(const DegreeSequence& seq, double c);

// Per-level DP values for one window [L, U]: d[level] = max k such that a
// path-image copy of B_k rooted at that level fits below it.
std::vector<int> sst_window_dp(const DegreeSequence& seq, double L, double U);

struct SstConvexity {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double pi_lower = 0.0;
};

// Exact fork-coupling functional of the downward random walk on an SST
// (uniform child, leaves absorbing), horizon 2^m.
SstConvexity sst_downward_convexity_exact(const DegreeSequence& seq, double p, int m);

// Degree sequence of normalize_height applied to an SST: pad the leaf level
// to the next power of two with unit edges.
DegreeSequence sst_normalized_sequence(const DegreeSequence& seq);

}  // namespace arboreal
