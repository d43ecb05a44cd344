#include "arboreal/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace arboreal {

WeightedRootedTree::WeightedRootedTree(std::string root, const std::vector<Edge>& edges) {
    std::set<std::string> vertex_ids;
    vertex_ids.insert(root);
    for (const auto& [p, c, len] : edges) {
        vertex_ids.insert(p);
        vertex_ids.insert(c);
        if (!(std::isfinite(len)) || len <= 0.0) {
            throw input_error("edge (" + p + "," + c + ") has non-positive or non-finite length");
        }
    }
    ids_.assign(vertex_ids.begin(), vertex_ids.end());
    index_.reserve(ids_.size());
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) index_[ids_[i]] = i;

    int n = static_cast<int>(ids_.size());
    parent_.assign(n, -1);
    edge_len_.assign(n, 0.0);
    children_.assign(n, {});
    root_ = index_.at(root);

    for (const auto& [p, c, len] : edges) {
        int pi = index_.at(p);
        int ci = index_.at(c);
        if (ci == root_) throw input_error("root vertex " + c + " appears as a child");
        if (parent_[ci] != -1) throw input_error("vertex " + c + " has two parents");
        parent_[ci] = pi;
        edge_len_[ci] = len;
        children_[pi].push_back(ci);
    }
    for (int v = 0; v < n; ++v) {
        if (v != root_ && parent_[v] == -1) {
            throw input_error("vertex " + ids_[v] + " is disconnected from the root");
        }
        std::sort(children_[v].begin(), children_[v].end(),
                  [&](int a, int b) { return ids_[a] < ids_[b]; });
    }

    depth_.assign(n, -1);
    dist_root_.assign(n, 0.0);
    std::deque<int> queue{root_};
    depth_[root_] = 0;
    int seen = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        ++seen;
        for (int c : children_[v]) {
            depth_[c] = depth_[v] + 1;
            dist_root_[c] = dist_root_[v] + edge_len_[c];
            queue.push_back(c);
        }
    }
    if (seen != n) throw input_error("parent map contains a cycle");

    min_edge_ = std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
        if (v != root_) min_edge_ = std::min(min_edge_, edge_len_[v]);
    }
    if (n == 1) min_edge_ = 0.0;
}

int WeightedRootedTree::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw input_error("unknown vertex id: " + id);
    return it->second;
}

std::vector<int> WeightedRootedTree::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v) {
        if (children_[v].empty()) out.push_back(v);
    }
    return out;
}

std::vector<int> WeightedRootedTree::bfs_order() const {
    std::vector<int> order;
    order.reserve(size());
    std::deque<int> queue{root_};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (int c : children_[v]) queue.push_back(c);
    }
    return order;
}

double WeightedRootedTree::max_root_leaf_distance() const {
    double h = 0.0;
    for (int v : leaves()) h = std::max(h, dist_root_[v]);
    return h;
}

int WeightedRootedTree::lca(int u, int v) const {
    while (depth_[u] > depth_[v]) u = parent_[u];
    while (depth_[v] > depth_[u]) v = parent_[v];
    while (u != v) {
        u = parent_[u];
        v = parent_[v];
    }
    return u;
}

double WeightedRootedTree::distance(int u, int v) const {
    int w = lca(u, v);
    return dist_root_[u] + dist_root_[v] - 2.0 * dist_root_[w];
}

bool WeightedRootedTree::is_ancestor(int anc, int v) const {
    while (depth_[v] > depth_[anc]) v = parent_[v];
    return v == anc;
}

std::vector<WeightedRootedTree::Edge> WeightedRootedTree::edge_list() const {
    std::vector<Edge> out;
    for (int v = 0; v < size(); ++v) {
        if (v != root_) out.emplace_back(ids_[parent_[v]], ids_[v], edge_len_[v]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string WeightedRootedTree::canonical_shape(int v) const {
    std::vector<std::string> parts;
    for (int c : children_[v]) {
        std::ostringstream os;
        os << edge_len_[c] << ":" << canonical_shape(c);
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p + ",";
    out += ")";
    return out;
}

bool WeightedRootedTree::isomorphic_to(const WeightedRootedTree& other) const {
    if (size() != other.size()) return false;
    return canonical_shape(root_) == other.canonical_shape(other.root_);
}

PathQuery query(const WeightedRootedTree& tree, const std::string& u, const std::string& v) {
    int ui = tree.index_of(u);
    int vi = tree.index_of(v);
    int w = tree.lca(ui, vi);
    PathQuery out;
    out.lca = tree.id_of(w);
    out.distance = tree.dist_to_root(ui) + tree.dist_to_root(vi) - 2.0 * tree.dist_to_root(w);

    std::vector<std::string> up;
    for (int x = ui; x != w; x = tree.parent(x)) up.push_back(tree.id_of(x));
    up.push_back(tree.id_of(w));
    std::vector<std::string> down;
    for (int x = vi; x != w; x = tree.parent(x)) down.push_back(tree.id_of(x));
    out.path = std::move(up);
    out.path.insert(out.path.end(), down.rbegin(), down.rend());
    return out;
}

std::set<std::string> upward_r_net(const WeightedRootedTree& tree, double R) {
    if (!(R > 0.0)) throw input_error("upward_r_net requires R > 0");
    // Peel leaves in deterministic id order, then decide vertices in reverse
    // removal order against the nearest net ancestor.
    int n = tree.size();
    std::vector<int> live_children(n, 0);
    for (int v = 0; v < n; ++v) live_children[v] = static_cast<int>(tree.children(v).size());

    std::set<std::pair<std::string, int>> frontier;  // current leaves by id
    for (int v = 0; v < n; ++v) {
        if (live_children[v] == 0) frontier.insert({tree.id_of(v), v});
    }
    std::vector<int> removal;
    removal.reserve(n - 1);
    while (static_cast<int>(removal.size()) < n - 1) {
        auto it = frontier.begin();
        int v = it->second;
        frontier.erase(it);
        if (v == tree.root_index()) continue;
        removal.push_back(v);
        int p = tree.parent(v);
        if (--live_children[p] == 0) frontier.insert({tree.id_of(p), p});
    }

    std::vector<bool> in_net(n, false);
    in_net[tree.root_index()] = true;
    for (auto it = removal.rbegin(); it != removal.rend(); ++it) {
        int v = *it;
        // Nearest net point weakly above the parent.
        double d = tree.edge_length(v);
        int x = tree.parent(v);
        while (!in_net[x]) {
            d += tree.edge_length(x);
            x = tree.parent(x);
        }
        if (d >= R) in_net[v] = true;
    }
    std::set<std::string> out;
    for (int v = 0; v < n; ++v) {
        if (in_net[v]) out.insert(tree.id_of(v));
    }
    return out;
}

bool validate_upward_r_net(const WeightedRootedTree& tree, const std::set<std::string>& net,
                           double R, std::string* why) {
    std::vector<bool> in_net(tree.size(), false);
    for (const auto& id : net) in_net[tree.index_of(id)] = true;
    for (int v = 0; v < tree.size(); ++v) {
        if (in_net[v]) {
            double d = 0.0;
            for (int x = v; x != tree.root_index();) {
                d += tree.edge_length(x);
                x = tree.parent(x);
                if (in_net[x] && d < R) {
                    if (why) *why = "net points " + tree.id_of(x) + " and " + tree.id_of(v) +
                                    " are closer than R";
                    return false;
                }
            }
        }
        double d = 0.0;
        bool covered = in_net[v];
        for (int x = v; x != tree.root_index() && !covered;) {
            d += tree.edge_length(x);
            x = tree.parent(x);
            if (in_net[x] && d < R) covered = true;
        }
        if (!covered) {
            if (why) *why = "vertex " + tree.id_of(v) + " has no net point within R above it";
            return false;
        }
    }
    return true;
}

namespace {

std::string fresh_id(const WeightedRootedTree& tree, const std::string& base) {
    std::string id = base;
    while (tree.has_vertex(id)) id = "~" + id;
    return id;
}

}  // namespace

WeightedRootedTree unit_subdivide(const WeightedRootedTree& tree, double resolution) {
    if (!(resolution > 0.0)) throw input_error("unit_subdivide requires resolution > 0");
    std::vector<WeightedRootedTree::Edge> edges;
    for (int v = 0; v < tree.size(); ++v) {
        if (v == tree.root_index()) continue;
        double len = tree.edge_length(v);
        double ratio = len / resolution;
        long long k = std::llround(ratio);
        if (k < 1 || std::fabs(ratio - static_cast<double>(k)) > kRelTol * std::max(1.0, ratio)) {
            throw precondition_error("edge into " + tree.id_of(v) +
                                     " is not an integer multiple of the resolution");
        }
        std::string prev = tree.id_of(tree.parent(v));
        for (long long i = 1; i < k; ++i) {
            std::string mid = fresh_id(tree, tree.id_of(v) + "~" + std::to_string(i));
            edges.emplace_back(prev, mid, resolution);
            prev = mid;
        }
        edges.emplace_back(prev, tree.id_of(v), resolution);
    }
    return WeightedRootedTree(tree.root_id(), edges);
}

NormalizedTree normalize_height(const WeightedRootedTree& tree) {
    if (tree.size() == 0) throw input_error("empty tree");
    for (int v = 0; v < tree.size(); ++v) {
        if (v == tree.root_index()) continue;
        double len = tree.edge_length(v);
        if (std::fabs(len - std::llround(len)) > kRelTol * std::max(1.0, len)) {
            throw precondition_error("normalize_height requires integral edge lengths");
        }
    }
    long long hmax = std::llround(tree.max_root_leaf_distance());
    int m = 0;
    while ((1LL << m) < hmax) ++m;
    long long target = 1LL << m;

    NormalizedTree out{tree, target, {}};
    std::vector<WeightedRootedTree::Edge> edges = tree.edge_list();
    for (int leaf : tree.leaves()) {
        long long pad = target - std::llround(tree.dist_to_root(leaf));
        if (leaf == tree.root_index() && tree.size() == 1) pad = target;
        out.leaf_pad[tree.id_of(leaf)] = static_cast<double>(pad);
        if (pad > 0) {
            std::string pid = fresh_id(tree, tree.id_of(leaf) + "+pad");
            edges.emplace_back(tree.id_of(leaf), pid, static_cast<double>(pad));
        }
    }
    WeightedRootedTree padded(tree.root_id(), edges);
    out.tree = unit_subdivide(padded, 1.0);
    return out;
}

}  // namespace arboreal
