#include "arboreal/coloring.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "arboreal/rng.hpp"

namespace arboreal {

EdgeColoring coloring_from_map(const WeightedRootedTree& tree,
                               const std::map<std::string, int>& colors) {
    EdgeColoring out(tree.size(), -1);
    for (int v = 0; v < tree.size(); ++v) {
        if (v == tree.root_index()) continue;
        auto it = colors.find(tree.id_of(v));
        if (it == colors.end()) throw input_error("uncolored edge into " + tree.id_of(v));
        out[v] = it->second;
    }
    return out;
}

std::map<std::string, int> coloring_to_map(const WeightedRootedTree& tree,
                                           const EdgeColoring& coloring) {
    std::map<std::string, int> out;
    for (int v = 0; v < tree.size(); ++v) {
        if (v != tree.root_index()) out[tree.id_of(v)] = coloring[v];
    }
    return out;
}

EdgeColoring distinct_coloring(const WeightedRootedTree& tree) {
    EdgeColoring out(tree.size(), -1);
    int next = 0;
    for (int v : tree.bfs_order()) {
        if (v != tree.root_index()) out[v] = next++;
    }
    return out;
}

EdgeColoring first_child_coloring(const WeightedRootedTree& tree) {
    EdgeColoring out(tree.size(), -1);
    int next = 0;
    for (int v : tree.bfs_order()) {
        const auto& kids = tree.children(v);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            bool continues = (i == 0) && v != tree.root_index();
            out[kids[i]] = continues ? out[v] : next++;
        }
    }
    return out;
}

namespace {

void require_colored(const WeightedRootedTree& tree, const EdgeColoring& coloring) {
    if (static_cast<int>(coloring.size()) != tree.size()) {
        throw input_error("coloring size does not match the tree");
    }
}

// Color classes as child-vertex lists ordered down the tree.
std::map<int, std::vector<int>> color_classes(const WeightedRootedTree& tree,
                                              const EdgeColoring& coloring) {
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < tree.size(); ++v) {
        if (v != tree.root_index()) classes[coloring[v]].push_back(v);
    }
    for (auto& [c, verts] : classes) {
        std::sort(verts.begin(), verts.end(), [&](int a, int b) {
            return tree.depth(a) < tree.depth(b);
        });
    }
    return classes;
}

// Per-color lengths on P(u,v), sorted by color.
std::vector<std::pair<int, double>> path_color_lengths(const WeightedRootedTree& tree,
                                                       const EdgeColoring& coloring, int u,
                                                       int v) {
    int w = tree.lca(u, v);
    std::vector<std::pair<int, double>> parts;
    for (int x = u; x != w; x = tree.parent(x)) parts.emplace_back(coloring[x], tree.edge_length(x));
    for (int x = v; x != w; x = tree.parent(x)) parts.emplace_back(coloring[x], tree.edge_length(x));
    std::sort(parts.begin(), parts.end());
    std::vector<std::pair<int, double>> merged;
    for (const auto& [c, len] : parts) {
        if (!merged.empty() && merged.back().first == c) {
            merged.back().second += len;
        } else {
            merged.emplace_back(c, len);
        }
    }
    return merged;
}

double tree_diameter(const WeightedRootedTree& tree) {
    // Max over vertices of the two largest descendant heights through
    // distinct children.
    std::vector<double> height(tree.size(), 0.0);
    std::vector<int> order = tree.bfs_order();
    double diam = 0.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        double h1 = 0.0, h2 = 0.0;
        for (int c : tree.children(v)) {
            double h = height[c] + tree.edge_length(c);
            if (h > h1) {
                h2 = h1;
                h1 = h;
            } else if (h > h2) {
                h2 = h;
            }
        }
        height[v] = h1;
        diam = std::max(diam, h1 + h2);
    }
    return diam;
}

}  // namespace

MonotoneCheck check_monotone(const WeightedRootedTree& tree, const EdgeColoring& coloring) {
    require_colored(tree, coloring);
    for (const auto& [c, verts] : color_classes(tree, coloring)) {
        for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
            if (tree.parent(verts[i + 1]) != verts[i]) return {false, c};
        }
    }
    return {true, 0};
}

ColoringQuality quality(const WeightedRootedTree& tree, const EdgeColoring& coloring) {
    if (!check_monotone(tree, coloring).ok) {
        throw precondition_error("quality requires a monotone coloring");
    }
    ColoringQuality out;
    int n = tree.size();
    if (n < 2) return out;

    auto consider = [&](int u, int v) {
        auto lengths = path_color_lengths(tree, coloring, u, v);
        double d = 0.0;
        for (const auto& [c, len] : lengths) d += len;
        if (d <= 0.0) return;
        double max_seg = 0.0;
        for (const auto& [c, len] : lengths) max_seg = std::max(max_seg, len);
        double good = max_seg / d;
        if (good < out.goodness) {
            out.goodness = good;
            out.worst_pair_good = {tree.id_of(u), tree.id_of(v)};
        }
        std::vector<double> ls;
        for (const auto& [c, len] : lengths) ls.push_back(len);
        std::sort(ls.begin(), ls.end(), std::greater<double>());
        double cum = 0.0, threshold = ls.front();
        for (double l : ls) {
            cum += l;
            threshold = l;
            if (cum >= d / 2.0 * (1.0 - kRelTol)) break;
        }
        double strong = threshold / d;
        if (strong < out.strong_delta) {
            out.strong_delta = strong;
            out.worst_pair_strong = {tree.id_of(u), tree.id_of(v)};
        }
        ++out.pairs_examined;
    };

    if (n <= 3000) {
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) consider(u, v);
        }
    } else {
        out.sampled = true;
        RngStream rng(0x71A1u);
        long long budget = 4000000;
        for (long long i = 0; i < budget; ++i) {
            int u = static_cast<int>(rng.next_below(n));
            int v = static_cast<int>(rng.next_below(n));
            if (u != v) consider(u, v);
        }
    }
    return out;
}

StrongCheck eps_delta_strong_check(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                   double eps, double delta) {
    if (!(delta > 0.0) || !(delta <= eps) || !(eps <= 1.0)) {
        throw input_error("eps_delta_strong_check requires 0 < delta <= eps <= 1");
    }
    if (!check_monotone(tree, coloring).ok) {
        throw precondition_error("eps_delta_strong_check requires a monotone coloring");
    }
    StrongCheck out;
    out.min_covered_fraction = std::numeric_limits<double>::infinity();
    int n = tree.size();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            auto lengths = path_color_lengths(tree, coloring, u, v);
            double d = 0.0;
            for (const auto& [c, len] : lengths) d += len;
            if (d <= 0.0) continue;
            double covered = 0.0;
            for (const auto& [c, len] : lengths) {
                if (len >= delta * d * (1.0 - kRelTol)) covered += len;
            }
            double margin = covered / (eps * d);
            if (margin < out.min_covered_fraction) {
                out.min_covered_fraction = margin;
                out.worst_pair = {tree.id_of(u), tree.id_of(v)};
            }
            if (covered < eps * d * (1.0 - kRelTol)) out.ok = false;
        }
    }
    if (!std::isfinite(out.min_covered_fraction)) out.min_covered_fraction = 1.0;
    return out;
}

namespace {

struct WindowSearch {
    const WeightedRootedTree& tree;
    double lo, hi;

    // Max dp value over descendants w of `start` (inclusive) with
    // d(from, w) in [lo, hi]; base_dist = d(from, start).
    int best(const std::vector<int>& dp, int start, double base_dist) const {
        int out = -1;
        search(dp, start, base_dist, out);
        return out;
    }

    // Lexicographically smallest vertex in the window with dp >= need.
    int pick(const std::vector<int>& dp, int start, double base_dist, int need) const {
        int out = -1;
        pick_rec(dp, start, base_dist, need, out);
        return out;
    }

private:
    void search(const std::vector<int>& dp, int v, double dist, int& out) const {
        if (dist > hi) return;
        if (dist >= lo) out = std::max(out, dp[v]);
        for (int c : tree.children(v)) search(dp, c, dist + tree.edge_length(c), out);
    }
    void pick_rec(const std::vector<int>& dp, int v, double dist, int need, int& out) const {
        if (dist > hi) return;
        if (dist >= lo && dp[v] >= need) {
            if (out == -1 || tree.id_of(v) < tree.id_of(out)) out = v;
        }
        for (int c : tree.children(v)) pick_rec(dp, c, dist + tree.edge_length(c), need, out);
    }
};

}  // namespace

std::vector<int> window_dp(const WeightedRootedTree& tree, double L, double U) {
    if (!(L > 0.0) || L > U) throw input_error("window_dp requires 0 < L <= U");
    WindowSearch win{tree, L * (1.0 - kRelTol), U * (1.0 + kRelTol)};
    std::vector<int> dp(tree.size(), 0);
    std::vector<int> order = tree.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        int b1 = -1, b2 = -1;
        for (int c : tree.children(v)) {
            int b = win.best(dp, c, tree.edge_length(c));
            if (b > b1) {
                b2 = b1;
                b1 = b;
            } else if (b > b2) {
                b2 = b;
            }
        }
        dp[v] = (b2 >= 0) ? b2 + 1 : 0;
    }
    return dp;
}

namespace {

void build_witness(const WeightedRootedTree& tree, const std::vector<int>& dp,
                   const WindowSearch& win, int v, int k, const std::string& label,
                   std::map<std::string, std::string>& node_map) {
    node_map[label] = tree.id_of(v);
    if (k == 0) return;
    int taken = 0;
    for (int c : tree.children(v)) {
        int w = win.pick(dp, c, tree.edge_length(c), k - 1);
        if (w >= 0) {
            build_witness(tree, dp, win, w, k - 1, label + (taken == 0 ? "0" : "1"), node_map);
            if (++taken == 2) break;
        }
    }
    if (taken < 2) throw std::logic_error("witness reconstruction failed");
}

}  // namespace

ScaledBinaryWitness scaled_binary_subtree(const WeightedRootedTree& tree, double L, double U) {
    std::vector<int> dp = window_dp(tree, L, U);
    int best = 0, root = tree.root_index();
    for (int v = 0; v < tree.size(); ++v) {
        if (dp[v] > best || (dp[v] == best && tree.id_of(v) < tree.id_of(root))) {
            best = dp[v];
            root = v;
        }
    }
    ScaledBinaryWitness out;
    out.k = best;
    out.L = L;
    out.U = U;
    WindowSearch win{tree, L * (1.0 - kRelTol), U * (1.0 + kRelTol)};
    build_witness(tree, dp, win, root, best, "b", out.node_map);
    return out;
}

int mu_value(const WeightedRootedTree& tree, const std::vector<int>& dp, int anchor, int child,
             double L, double U) {
    WindowSearch win{tree, L * (1.0 - kRelTol), U * (1.0 + kRelTol)};
    (void)anchor;
    return win.best(dp, child, tree.edge_length(child));
}

bool witness_distortion_ok(const WeightedRootedTree& tree, const ScaledBinaryWitness& witness,
                           double bound, double* measured) {
    std::vector<std::pair<std::string, int>> nodes;  // (label, tree index)
    for (const auto& [label, id] : witness.node_map) nodes.emplace_back(label, tree.index_of(id));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const std::string& a = nodes[i].first;
            const std::string& b = nodes[j].first;
            std::size_t common = 0;
            while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
            double db = static_cast<double>((a.size() - common) + (b.size() - common));
            if (db == 0.0) continue;
            double dt = tree.distance(nodes[i].second, nodes[j].second);
            double ratio = dt / db;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    double dist = nodes.size() <= 1 ? 1.0 : hi / lo;
    if (measured) *measured = dist;
    return dist <= bound * (1.0 + kRelTol);
}

BinaryProfile binary_profile(const WeightedRootedTree& tree, double c) {
    if (!(c > 1.0)) throw input_error("binary_profile requires c > 1");
    BinaryProfile out;
    if (tree.size() < 2) {
        out.witness.k = 0;
        out.witness.node_map["b"] = tree.root_id();
        return out;
    }
    double diam = tree_diameter(tree);
    double step = std::sqrt(c);
    out.best_scale = tree.min_edge_length();
    for (double L = tree.min_edge_length(); L <= diam * (1.0 + kRelTol); L *= step) {
        ScaledBinaryWitness w = scaled_binary_subtree(tree, L, c * L * (1.0 - kRelTol));
        if (w.k > out.k_lower || out.witness.node_map.empty()) {
            out.k_lower = w.k;
            out.best_scale = L;
            out.witness = w;
        }
    }
    return out;
}

ScaleColoring construct_scale_coloring(const WeightedRootedTree& tree, double c) {
    if (!(c > 1.0)) throw input_error("construct_scale_coloring requires c > 1");
    int n = tree.size();
    ScaleColoring out;
    out.c = c;
    out.coloring.assign(n, -1);
    out.g.assign(n, INT_MAX);
    if (n == 1) return out;

    double diam = tree_diameter(tree);
    out.j_min = static_cast<int>(std::floor(std::log(tree.min_edge_length()) / std::log(4.0) + kRelTol));
    out.j_max = static_cast<int>(std::ceil(std::log(diam) / std::log(4.0) - kRelTol)) + 1;

    std::map<int, std::vector<int>> dp_cache;
    auto dp_for = [&](int j) -> const std::vector<int>& {
        auto it = dp_cache.find(j);
        if (it == dp_cache.end()) {
            double base = std::pow(4.0, j);
            it = dp_cache.emplace(j, window_dp(tree, 9.0 * base / (c - 1.0), 9.0 * c * base / (c - 1.0)))
                     .first;
        }
        return it->second;
    };

    // Persistent breakpoint chains: (vertex, next). The root is the base
    // breakpoint of every chain.
    std::vector<std::pair<int, int>> chain_nodes;
    chain_nodes.emplace_back(tree.root_index(), -1);
    std::vector<int> chain_head(n, -1);
    chain_head[tree.root_index()] = 0;

    int next_color = 0;
    for (int v : tree.bfs_order()) {
        if (v != tree.root_index()) {
            int p = tree.parent(v);
            bool p_breaks = (p != tree.root_index()) && (out.coloring[p] != out.coloring[v]);
            if (p_breaks) {
                chain_nodes.emplace_back(p, chain_head[p]);
                chain_head[v] = static_cast<int>(chain_nodes.size()) - 1;
            } else {
                chain_head[v] = chain_head[p];
            }
            int gv = out.j_min;
            for (int j = out.j_max; j >= out.j_min; --j) {
                bool ok = true;
                for (int node = chain_head[v]; node != -1 && ok; node = chain_nodes[node].second) {
                    int u = chain_nodes[node].first;
                    int gu = out.g[u];
                    int eff = std::min(gu, j);
                    double need = std::pow(4.0, eff);
                    double d = tree.dist_to_root(v) - tree.dist_to_root(u);
                    if (d < need * (1.0 - kRelTol)) ok = false;
                }
                if (ok) {
                    gv = j;
                    break;
                }
            }
            out.g[v] = gv;
        }
        const auto& kids = tree.children(v);
        if (kids.empty()) continue;
        if (v == tree.root_index()) {
            for (int z : kids) out.coloring[z] = next_color++;
            continue;
        }
        const std::vector<int>& dp = dp_for(out.g[v]);
        double base = std::pow(4.0, out.g[v]);
        double lo = 9.0 * base / (c - 1.0), hi = 9.0 * c * base / (c - 1.0);
        int arg = kids.front(), best = INT_MIN;
        for (int z : kids) {
            int mu = mu_value(tree, dp, v, z, lo, hi);
            if (mu > best) {
                best = mu;
                arg = z;
            }
        }
        for (int z : kids) {
            out.coloring[z] = (z == arg) ? out.coloring[v] : next_color++;
        }
    }
    return out;
}

std::vector<int> path_breakpoints(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                  int u, int v) {
    if (!tree.is_ancestor(u, v)) throw input_error("path_breakpoints requires u an ancestor of v");
    std::vector<int> down;  // v up to u, exclusive of both
    int below = v;
    for (int x = tree.parent(v); x != u; x = tree.parent(x)) {
        if (coloring[x] != coloring[below]) down.push_back(x);
        below = x;
    }
    std::reverse(down.begin(), down.end());
    return down;
}

ClaimGCheck claim_g_check(const WeightedRootedTree& tree, const std::vector<int>& g,
                          const std::vector<int>& breakpoints, double c, int j) {
    ClaimGCheck out;
    int m = static_cast<int>(breakpoints.size());
    if (m < 2) {
        out.why = "fewer than two breakpoints";
        return out;
    }
    double base = std::pow(4.0, j);
    auto d = [&](int a, int b) {
        return std::fabs(tree.dist_to_root(breakpoints[a]) - tree.dist_to_root(breakpoints[b]));
    };
    for (int i = 1; i < m; ++i) {
        if (d(i - 1, i) > base * (1.0 + kRelTol)) {
            out.why = "a breakpoint gap exceeds 4^j";
            return out;
        }
    }
    out.span = d(0, m - 1);
    if (out.span < 30.0 * c / (c - 1.0) * base * (1.0 - kRelTol)) {
        out.why = "span below 30c/(c-1)*4^j";
        return out;
    }
    out.hypothesis = true;

    double gap_lo = 9.0 / (c - 1.0) * base;
    double gap_hi = 9.0 * c / (c - 1.0) * base;
    auto find_gj_near = [&](int i) {
        for (int t = 0; t < m; ++t) {
            if (g[breakpoints[t]] == j && d(t, i) <= 4.0 * base * (1.0 + kRelTol)) return t;
        }
        return -1;
    };

    int i1 = find_gj_near(0);
    if (i1 < 0) {
        out.why = "no g=j breakpoint within 4^{j+1} of the top";
        return out;
    }
    out.chosen.push_back(i1);
    while (d(out.chosen.back(), m - 1) > gap_hi * (1.0 + kRelTol)) {
        int is = out.chosen.back();
        int t = -1;
        for (int s = is + 1; s < m; ++s) {
            if (d(s, is) >= (4.0 * c + 5.0) / (c - 1.0) * base * (1.0 - kRelTol)) {
                t = s;
                break;
            }
        }
        if (t < 0) {
            out.why = "no pivot breakpoint far enough below";
            return out;
        }
        int next = -1;
        for (int s = is + 1; s < m; ++s) {
            if (g[breakpoints[s]] == j && d(s, t) <= 4.0 * base * (1.0 + kRelTol)) {
                next = s;
                break;
            }
        }
        if (next < 0) {
            out.why = "no g=j breakpoint within 4^{j+1} of the pivot";
            return out;
        }
        double gap = d(next, is);
        if (gap < gap_lo * (1.0 - kRelTol) || gap > gap_hi * (1.0 + kRelTol)) {
            out.why = "selected gap outside [9/(c-1), 9c/(c-1)]*4^j";
            return out;
        }
        out.chosen.push_back(next);
    }
    out.count = static_cast<int>(out.chosen.size());
    out.required = static_cast<int>(std::ceil((c - 1.0) / (20.0 * c * base) * out.span - kRelTol));
    if (out.count < out.required) {
        out.why = "subsequence too short";
        return out;
    }
    out.ok = true;
    return out;
}

bool is_regular(const WeightedRootedTree& tree, const EdgeColoring& coloring, std::string* why) {
    for (const auto& [c, verts] : color_classes(tree, coloring)) {
        double prefix = tree.edge_length(verts.front());
        for (std::size_t i = 1; i < verts.size(); ++i) {
            double len = tree.edge_length(verts[i]);
            if (len > 2.0 * prefix * (1.0 + kRelTol)) {
                if (why) {
                    *why = "class " + std::to_string(c) + " violates regularity at edge into " +
                           tree.id_of(verts[i]);
                }
                return false;
            }
            prefix += len;
        }
    }
    return true;
}

EdgeColoring regularize_coloring(const WeightedRootedTree& tree, const EdgeColoring& coloring) {
    if (!check_monotone(tree, coloring).ok) {
        throw precondition_error("regularize_coloring requires a monotone coloring");
    }
    EdgeColoring out = coloring;
    auto classes = color_classes(tree, out);
    int next_color = 0;
    for (const auto& [c, verts] : classes) next_color = std::max(next_color, c + 1);

    std::deque<int> pending;
    for (const auto& [c, verts] : classes) pending.push_back(c);
    std::map<int, std::vector<int>> live = std::move(classes);
    while (!pending.empty()) {
        int c = pending.front();
        pending.pop_front();
        auto it = live.find(c);
        if (it == live.end()) continue;
        std::vector<int>& verts = it->second;
        bool split = true;
        while (split && verts.size() > 1) {
            split = false;
            double prefix = tree.edge_length(verts.front());
            for (std::size_t i = 1; i < verts.size(); ++i) {
                double len = tree.edge_length(verts[i]);
                if (len > 2.0 * prefix * (1.0 + kRelTol)) {
                    int fresh = next_color++;
                    for (std::size_t t = 0; t < i; ++t) out[verts[t]] = fresh;
                    verts.erase(verts.begin(), verts.begin() + static_cast<long>(i));
                    split = true;
                    break;
                }
                prefix += len;
            }
        }
    }
    return out;
}

namespace {

struct Segment {
    int color = 0;
    std::vector<int> verts;  // child endpoints, ordered down the tree
    int top = 0;             // p(s): vertex of s closest to the root
    double diam = 0.0;
};

}  // namespace

ReasonableColoring reasonable_coloring(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                       double eps, std::optional<double> K_override) {
    std::string why;
    if (!check_monotone(tree, coloring).ok) {
        throw precondition_error("reasonable_coloring requires a monotone coloring");
    }
    if (!is_regular(tree, coloring, &why)) {
        throw precondition_error("reasonable_coloring requires a regular coloring: " + why);
    }
    if (!(eps > 0.0) || eps > 1.0) throw input_error("eps must lie in (0, 1]");

    std::vector<Segment> segs;
    for (const auto& [c, verts] : color_classes(tree, coloring)) {
        Segment s;
        s.color = c;
        s.verts = verts;
        s.top = tree.parent(verts.front());
        for (int v : verts) s.diam += tree.edge_length(v);
        segs.push_back(std::move(s));
    }
    ReasonableColoring out;
    out.K = K_override.value_or(4.0 * std::pow(2.0 / eps, 1.0 + 2.0 / eps));

    // Total order replacing the paper's distinct-diameter perturbation:
    // (diam, color id), descending for the greedy pass.
    std::vector<int> order(segs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (segs[a].diam != segs[b].diam) return segs[a].diam > segs[b].diam;
        return segs[a].color > segs[b].color;
    });

    auto precedes = [&](int a, int b) {  // a strictly below b in the total order
        if (segs[a].diam != segs[b].diam) return segs[a].diam < segs[b].diam;
        return segs[a].color < segs[b].color;
    };
    auto adjacent = [&](int a, int b) {  // directed a -> b, requires precedes(a, b)
        double ball = out.K * segs[a].diam * (1.0 + kRelTol);
        double best = -1.0;
        for (int x : segs[b].verts) {
            if (tree.distance(segs[a].top, x) <= ball) {
                best = std::max(best, tree.dist_to_root(x) - tree.dist_to_root(segs[b].top));
            }
        }
        int btop = segs[b].top;
        if (tree.distance(segs[a].top, btop) <= ball) best = std::max(best, 0.0);
        return best >= segs[a].diam * (1.0 - 1e-12);
    };

    std::vector<std::vector<int>> neighbors(segs.size());
    for (std::size_t a = 0; a < segs.size(); ++a) {
        for (std::size_t b = 0; b < segs.size(); ++b) {
            if (a != b && precedes(static_cast<int>(a), static_cast<int>(b)) &&
                adjacent(static_cast<int>(a), static_cast<int>(b))) {
                neighbors[a].push_back(static_cast<int>(b));
                neighbors[b].push_back(static_cast<int>(a));
            }
        }
    }
    std::vector<int> palette_of(segs.size(), -1);
    int palette_max = 0;
    for (int idx : order) {
        std::vector<bool> used(segs.size() + 1, false);
        for (int nb : neighbors[idx]) {
            if (palette_of[nb] >= 0) used[palette_of[nb]] = true;
        }
        int c = 0;
        while (used[c]) ++c;
        palette_of[idx] = c;
        palette_max = std::max(palette_max, c + 1);
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (int v : segs[i].verts) out.palette[tree.id_of(v)] = palette_of[i];
    }
    out.palette_size = palette_max;
    out.audit_delta = eps / 4.0;
    ReasonableCheck audit = check_reasonable(tree, out.palette, out.audit_delta);
    out.audit_ok = audit.ok;
    out.audit_worst_pair = audit.worst_pair;
    return out;
}

ReasonableCheck check_reasonable(const WeightedRootedTree& tree,
                                 const std::map<std::string, int>& palette, double delta) {
    EdgeColoring coloring = coloring_from_map(tree, palette);
    ReasonableCheck out;
    out.min_margin = std::numeric_limits<double>::infinity();
    int n = tree.size();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int w = tree.lca(u, v);
            std::unordered_map<int, double> diff;
            for (int x = u; x != w; x = tree.parent(x)) diff[coloring[x]] += tree.edge_length(x);
            for (int x = v; x != w; x = tree.parent(x)) diff[coloring[x]] -= tree.edge_length(x);
            double d = tree.distance(u, v);
            if (d <= 0.0) continue;
            double best = 0.0;
            for (const auto& [c, dl] : diff) best = std::max(best, std::fabs(dl));
            double margin = best / (delta * d);
            if (margin < out.min_margin) {
                out.min_margin = margin;
                out.worst_pair = {tree.id_of(u), tree.id_of(v)};
            }
            if (best < delta * d * (1.0 - kRelTol)) out.ok = false;
        }
    }
    if (!std::isfinite(out.min_margin)) out.min_margin = 1.0;
    return out;
}

}  // namespace arboreal
