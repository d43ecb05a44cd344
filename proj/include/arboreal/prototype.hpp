#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/coloring.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

// Path metric induced on a descending vertex subsequence: gaps are the tree
// distances between consecutive vertices.
struct InducedPath {
    std::vector<std::string> vertices;
    std::vector<double> gaps;

    double length() const {
        double s = 0.0;
        for (double g : gaps) s += g;
        return s;
    }
};

struct WeakCheck {
    bool ok = false;
    double fraction = 0.0;  // weight of gaps <= delta * length, over length
};

// (eps, delta)-weak: gaps of size <= delta*len carry at least an
// eps-fraction of the length.
WeakCheck weak_path_check(const InducedPath& path, double eps, double delta);

// Induced path on u, the branch points strictly between, and v.
InducedPath branch_point_path(const WeightedRootedTree& tree, int u, int v);

struct Degree2WeakCheck {
    bool ok = false;
    double fraction = 0.0;
    InducedPath path;
};

Degree2WeakCheck degree2_weak_check(const WeightedRootedTree& tree, const std::string& u,
                                    const std::string& v, double eps, double delta);

struct PathAudit {
    std::string leaf;
    bool ok = false;
    double fraction = 0.0;
    InducedPath path;
};

struct PrototypeWitness {
    // Subtree as (root, edges within the host tree); equal to the host tree
    // when verifying it directly.
    std::string root;
    std::vector<WeightedRootedTree::Edge> edges;
    double eps = 0.0, delta = 0.0, R = 1.0;
    double height_ratio = 1.0;
    std::vector<PathAudit> per_path_audits;
};

struct PrototypeVerification {
    bool ok = false;
    std::optional<PrototypeWitness> witness;
    std::string failure;  // names the violating vertex or path
};

// Weak prototype: branching <= 2 everywhere, every root-leaf path degree-2
// (eps, delta)-weak, height ratio at most R.
PrototypeVerification verify_weak_prototype(const WeightedRootedTree& tree, double eps,
                                            double delta, double R);

struct ClusterInterval {
    int first_gap = 0;  // inclusive gap index
    int last_gap = 0;   // inclusive
    double length = 0.0;
};

struct ClusterDecomposition {
    std::vector<ClusterInterval> maximal_clusters;   // maximal runs of short gaps
    std::vector<ClusterInterval> disjoint_clusters;  // chunks of the long ones
    double covered_fraction = 0.0;  // weight of long maximal clusters / length
    double tau = 0.0;
};

// Maximal delta-clusters and the greedy chunking of the long ones into
// pieces with lengths in [tau*delta*d, (2*tau+1)*delta*d], tau = 1/(2-4a).
ClusterDecomposition cluster_decomposition(const InducedPath& path, double delta, double alpha);

// (eps,delta)-strong colorings are delta'-strong for delta' = (delta/4eps)^(3/eps).
double strong_downgrade(double eps, double delta);

struct RhoResult {
    bool exists = false;   // the paper's mu = -1 convention when false
    double value = 0.0;    // largest min root-leaf distance over qualifying subtrees
    // Child sets of the chosen subtree F' keyed by vertex id.
    std::map<std::string, std::vector<std::string>> witness_children;
    bool budget_exhausted = false;
};

// rho(eps, delta, L; Q, F): qualifying subtrees of F (sharing its root)
// branch at most twice, have every branch-point path weak when prefixed by
// Q, and keep x-to-leaf lengths at most 3L. Value is the supremum of the
// minimum root-leaf distance. Exhaustive DFS with a node budget.
RhoResult rho(const WeightedRootedTree& tree, double eps, double delta, double L,
              const InducedPath& Q, const std::string& f_root, long long budget = 1000000);

struct ExtractionParams {
    double delta = 0.25;          // strongness target for the coloring
    double eps0 = 1.0 / 2500.0;   // weakness fraction of extracted paths
    double delta_exp = 1.0 / 2880.0;  // delta_w = delta^{delta_exp}
    double net_factor = 240.0;
    double R_cap = 6800.0;
    double c = 2.0;  // scale base for the claim:g search
    long long rho_budget = 1000000;
};

struct ExtractionResult {
    enum class Kind { StrongCertificate, Witness, Inconclusive } kind = Kind::Inconclusive;
    ColoringQuality certificate;  // when the special coloring is delta-strong
    std::optional<PrototypeWitness> witness;
    // Progress markers for the inconclusive case.
    std::string note;
    InducedPath Q;
    int gluing_depth = 0;
};

// The special-coloring extraction pipeline: build the scale-selector
// coloring with rho-based weights; if it is delta-strong return its quality
// as a certificate, otherwise locate a violating pair, decompose it into
// clusters, select same-scale breakpoints, bucket by upward-net anchors and
// glue a weak prototype, re-validated before return.
ExtractionResult extract_weak_prototype(const WeightedRootedTree& tree,
                                        const ExtractionParams& params);

// ((eps/(2R))/4 * [log2((eps/(2R))/delta) - 4])^(1/p), clamped at zero: the
// walk lower bound for the height-normalized form of an (eps,delta,R)
// prototype.
double prototype_convexity_bound(double eps, double delta, double R, double p);

}  // namespace arboreal
