#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/common.hpp"
#include "arboreal/lamplighter.hpp"
#include "arboreal/rng.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

// Generic chain state: a 64-bit word plus a small integer, enough for tree
// vertices (index) and lamplighter states (mask, position).
struct ChainState {
    std::uint64_t a = 0;
    std::int32_t b = 0;
    bool operator==(const ChainState& o) const { return a == o.a && b == o.b; }
};

// Fork convention when the fork time t - 2^k is negative. The definition
// reading restarts an independent copy of the whole chain (fresh initial
// sample); the shifted-sequence reading shares the realized initial state.
enum class ForkMode { Definition, SharedStart };

struct ChainSpec {
    // Generative interface; always present.
    std::function<ChainState(RngStream&)> sample_initial;
    std::function<ChainState(const ChainState&, RngStream&)> sample_step;
    std::function<double(const ChainState&, const ChainState&)> distance;

    // Explicit finite-state description, when available.
    bool has_explicit = false;
    std::vector<std::string> states;
    std::vector<std::vector<double>> kernel;  // row-stochastic
    std::vector<double> initial;
    // Pairwise distances between mapped states, d(f(i), f(j)).
    std::function<double(int, int)> state_distance;
};

struct ConvexityEstimate {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;     // lhs / rhs
    double pi_lower = 0.0;  // ratio^{1/p}
    double p = 2.0;
    int m = 0;
    std::string method;  // "exact" | "mc"
    long long samples = 0;
    std::uint64_t seed = 0;
    double stderr_ratio = 0.0;  // mc only, delta-method
    bool degenerate = false;    // rhs == 0
};

// Monte Carlo evaluation of both sides of the fork-coupling inequality.
// Deterministic given the seed: every fork draws from a counter-based
// stream keyed by (seed, sample, k, t).
ConvexityEstimate estimate_convexity_mc(const ChainSpec& chain, double p, int m,
                                        long long samples, std::uint64_t seed,
                                        ForkMode mode = ForkMode::Definition);

// Exact evaluation for explicit chains by propagating the pair distribution
// of two independent continuations.
ConvexityEstimate compute_convexity_exact(const ChainSpec& chain, double p, int m,
                                          ForkMode mode = ForkMode::Definition);

// Downward random walk: uniform child, leaves absorbing, identity map into
// the tree metric.
ChainSpec downward_walk_chain(const WeightedRootedTree& tree);

// Walker advances deterministically around the cycle; the lamp at the new
// position is flipped with probability 1/2. Starts at (all off, 0).
ChainSpec lamplighter_chain(int N);

// Explicit chain from a descriptor: states mapped to coordinate vectors,
// distances Euclidean.
ChainSpec explicit_chain(std::vector<std::string> states, std::vector<std::vector<double>> kernel,
                         std::vector<double> initial, std::vector<std::vector<double>> coords);

struct DyadicIdentity {
    double lhs = 0.0;      // sum of squared increments
    double rhs_id = 0.0;   // endpoint term plus second-difference terms
    double residual = 0.0; // lhs - rhs_id, ~0
    bool shifted_lhs_bound_ok = true;  // averaged-shift inequality holds
};

// Both sides of the martingale-difference identity for 2^m + 1 points in
// l_2, plus the shift-averaged inequality that removes the dyadic bias.
DyadicIdentity dyadic_identity_residual(const std::vector<std::vector<double>>& points);

// est.pi_lower / target_pi; with target the Markov 2-convexity constant of
// the target space (4 for L_2), this lower-bounds the distortion.
double distortion_lower_bound(const ConvexityEstimate& est, double target_pi = 4.0);

struct WalkSpeed {
    double speed = 0.0;
    double stderr_mean = 0.0;
    long long steps = 0;
    long long samples = 0;
};

struct WalkerSpec {
    std::function<ChainState(RngStream&)> sample_initial;
    std::function<ChainState(const ChainState&, RngStream&)> sample_step;
    std::function<double(const ChainState&, const ChainState&)> distance;
};

// Monte Carlo estimate of E d(X_0, X_T) / T.
WalkSpeed walk_speed(const WalkerSpec& walker, long long steps, long long samples,
                     std::uint64_t seed);

// Named walkers for the speed estimator.
WalkerSpec cycle_walker(int N);
WalkerSpec three_regular_tree_walker();
WalkerSpec downward_tree_walker(const WeightedRootedTree& tree);
WalkerSpec lamplighter_walker(int N);

}  // namespace arboreal
