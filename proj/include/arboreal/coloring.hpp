#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/tree.hpp"

namespace arboreal {

// Edge coloring indexed by the edge's lower endpoint (child vertex); the
// root slot is unused and holds -1.
using EdgeColoring = std::vector<int>;

EdgeColoring coloring_from_map(const WeightedRootedTree& tree,
                               const std::map<std::string, int>& colors);
std::map<std::string, int> coloring_to_map(const WeightedRootedTree& tree,
                                           const EdgeColoring& coloring);

// Every edge gets its own color.
EdgeColoring distinct_coloring(const WeightedRootedTree& tree);
// Each vertex continues its color into the lexicographically first child.
EdgeColoring first_child_coloring(const WeightedRootedTree& tree);

struct MonotoneCheck {
    bool ok = true;
    int bad_color = 0;
};

// A coloring is monotone when every color class is a contiguous segment of
// one root-leaf path.
MonotoneCheck check_monotone(const WeightedRootedTree& tree, const EdgeColoring& coloring);

struct ColoringQuality {
    double goodness = 1.0;      // largest eps with the coloring eps-good
    double strong_delta = 1.0;  // largest delta with the coloring delta-strong
    std::pair<std::string, std::string> worst_pair_good;
    std::pair<std::string, std::string> worst_pair_strong;
    bool sampled = false;  // true when pair minima were subsampled (n > 3000)
    long long pairs_examined = 0;
};

ColoringQuality quality(const WeightedRootedTree& tree, const EdgeColoring& coloring);

struct StrongCheck {
    bool ok = true;
    double min_covered_fraction = 1.0;  // min over pairs of covered/eps target
    std::pair<std::string, std::string> worst_pair;
};

// (eps, delta)-strong: classes of length >= delta*d(u,v) cover >= eps*d(u,v).
StrongCheck eps_delta_strong_check(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                   double eps, double delta);

struct ScaledBinaryWitness {
    int k = -1;
    double L = 0.0, U = 0.0;
    // Complete-binary-tree labels ("b", "b0", "b01", ...) to tree vertex ids.
    std::map<std::string, std::string> node_map;
    std::optional<std::string> anchor;  // image of the extra M_k root, if constrained
};

// Per-vertex DP: d[v] = max k such that a path-image copy of B_k rooted at v
// fits below it, every witness edge a vertex-to-descendant path of length in
// [L, U] and sibling branches in distinct children subtrees.
std::vector<int> window_dp(const WeightedRootedTree& tree, double L, double U);

// Largest k over the whole tree, with an explicit witness.
ScaledBinaryWitness scaled_binary_subtree(const WeightedRootedTree& tree, double L, double U);

// M_k variant: the copy must hang below `anchor` through `child`, with the
// incoming segment landing in the window. Returns the largest such k, or -1.
int mu_value(const WeightedRootedTree& tree, const std::vector<int>& dp, int anchor, int child,
             double L, double U);

// Witness-backed check that the induced map of B_k has distortion <= bound.
bool witness_distortion_ok(const WeightedRootedTree& tree, const ScaledBinaryWitness& witness,
                           double bound, double* measured = nullptr);

struct BinaryProfile {
    int k_lower = 0;
    double best_scale = 0.0;
    ScaledBinaryWitness witness;
};

// Certified lower bound on B_T(c) = max{k : c_T(B_k) < c} over a sqrt(c)-
// geometric scale grid.
BinaryProfile binary_profile(const WeightedRootedTree& tree, double c);

struct ScaleColoring {
    EdgeColoring coloring;
    std::vector<int> g;  // per-vertex scale; INT_MAX at the root
    double c = 0.0;
    int j_min = 0, j_max = 0;
};

// The scale-selector coloring: breadth-first, g(v) maximal subject to the
// breakpoint rule d(u,v) >= 4^min(g(u),j), and the child whose subtree
// admits the largest M_k copy at scale g(v) continues the parent color.
ScaleColoring construct_scale_coloring(const WeightedRootedTree& tree, double c);

// Breakpoints strictly between u and v (u an ancestor of v) along P(u,v).
std::vector<int> path_breakpoints(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                  int u, int v);

struct ClaimGCheck {
    bool hypothesis = false;
    bool ok = false;
    int count = 0;
    double span = 0.0;
    int required = 0;
    std::vector<int> chosen;  // indices into the breakpoint sequence
    std::string why;
};

// Checks the breakpoint-subsequence guarantee of the scale selector on a
// monotone path: given breakpoints with gaps <= 4^j and span >= 30c/(c-1)*4^j,
// a subsequence with g = j, gaps in [9*4^j/(c-1), 9c*4^j/(c-1)] and count
// >= (c-1)/(20c*4^j)*span must exist. Follows the constructive argument.
ClaimGCheck claim_g_check(const WeightedRootedTree& tree, const std::vector<int>& g,
                          const std::vector<int>& breakpoints, double c, int j);

bool is_regular(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                std::string* why = nullptr);

// Split classes until every class satisfies len(e_{i+1}) <= 2 * sum_{j<=i}.
EdgeColoring regularize_coloring(const WeightedRootedTree& tree, const EdgeColoring& coloring);

struct ReasonableColoring {
    std::map<std::string, int> palette;  // child-id -> palette color
    double K = 0.0;
    int palette_size = 0;
    double audit_delta = 0.0;
    bool audit_ok = false;
    std::pair<std::string, std::string> audit_worst_pair;
};

// Segment-graph greedy coloring over the color classes of a regular eps-good
// coloring; output is a finite-palette (not necessarily monotone) coloring
// audited to be eps/4-reasonable.
ReasonableColoring reasonable_coloring(const WeightedRootedTree& tree,
                                       const EdgeColoring& coloring, double eps,
                                       std::optional<double> K_override = std::nullopt);

struct ReasonableCheck {
    bool ok = true;
    double min_margin = 1.0;  // min over pairs of (best coordinate gap)/(delta*d)
    std::pair<std::string, std::string> worst_pair;
};

// delta-reasonable: for every pair some color's length difference between the
// two lca legs is >= delta*d(u,v).
ReasonableCheck check_reasonable(const WeightedRootedTree& tree,
                                 const std::map<std::string, int>& palette, double delta);

}  // namespace arboreal
