#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "arboreal/common.hpp"

namespace arboreal {

// Finite rooted tree with positive edge lengths. Vertex ids are opaque
// strings; children are kept sorted lexicographically so every traversal
// order is reproducible. Immutable after construction.
class WeightedRootedTree {
public:
    using Edge = std::tuple<std::string, std::string, double>;  // (parent, child, length)

    WeightedRootedTree(std::string root, const std::vector<Edge>& edges);

    static WeightedRootedTree single_vertex(std::string root) {
        return WeightedRootedTree(std::move(root), {});
    }

    int size() const { return static_cast<int>(ids_.size()); }
    const std::string& root_id() const { return ids_[root_]; }
    int root_index() const { return root_; }

    int index_of(const std::string& id) const;
    bool has_vertex(const std::string& id) const { return index_.count(id) > 0; }
    const std::string& id_of(int idx) const { return ids_[idx]; }
    const std::vector<std::string>& ids() const { return ids_; }

    int parent(int v) const { return parent_[v]; }  // -1 for root
    // Length of the edge from v to its parent.
    double edge_length(int v) const { return edge_len_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    bool is_leaf(int v) const { return children_[v].empty(); }
    int depth(int v) const { return depth_[v]; }
    double dist_to_root(int v) const { return dist_root_[v]; }

    std::vector<int> leaves() const;
    // Vertices ordered by (depth, id): parents always precede children.
    std::vector<int> bfs_order() const;

    double min_edge_length() const { return min_edge_; }
    double max_root_leaf_distance() const;

    int lca(int u, int v) const;
    double distance(int u, int v) const;
    bool is_ancestor(int anc, int v) const;

    // Canonical edge list sorted by (parent id, child id).
    std::vector<Edge> edge_list() const;

    // Structural equality up to vertex renaming, honoring child order by
    // shape only. Used for the small isomorphism checks in tests.
    bool isomorphic_to(const WeightedRootedTree& other) const;

private:
    std::string canonical_shape(int v) const;

    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> parent_;
    std::vector<double> edge_len_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
    std::vector<double> dist_root_;
    int root_ = -1;
    double min_edge_ = 0.0;
};

struct PathQuery {
    std::string lca;
    double distance = 0.0;
    std::vector<std::string> path;  // u ... lca ... v
};

// LCA, distance and the explicit u--v path.
PathQuery query(const WeightedRootedTree& tree, const std::string& u, const std::string& v);

// Upward R-net: along every root path the returned set is R-separated and
// every vertex has a net point within distance < R above it (or itself).
std::set<std::string> upward_r_net(const WeightedRootedTree& tree, double R);

// Exhaustive check of both upward-net conditions; independent of the
// constructive routine above.
bool validate_upward_r_net(const WeightedRootedTree& tree, const std::set<std::string>& net,
                           double R, std::string* why = nullptr);

// Replace every edge of length k*resolution by k edges of length resolution
// through fresh vertices. Fails if some length is not a multiple.
WeightedRootedTree unit_subdivide(const WeightedRootedTree& tree, double resolution);

struct NormalizedTree {
    WeightedRootedTree tree;
    long long height = 0;  // 2^m
    std::map<std::string, double> leaf_pad;
};

// Pad every leaf to root-leaf distance 2^m (m minimal) and unit-subdivide,
// so the result is unweighted with all root-leaf paths of equal length.
// Requires integral edge lengths.
NormalizedTree normalize_height(const WeightedRootedTree& tree);

}  // namespace arboreal
