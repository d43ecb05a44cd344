#include "arboreal/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace arboreal {

double sparse_diff_norm(const SparseVec& a, const SparseVec& b, double p) {
    KahanSum acc;
    auto ia = a.begin();
    auto ib = b.begin();
    auto take = [&](double d) {
        if (d != 0.0) acc.add(p == 2.0 ? d * d : std::pow(std::fabs(d), p));
    };
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            take(ia->second);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            take(-ib->second);
            ++ib;
        } else {
            take(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return std::pow(acc.value(), 1.0 / p);
}

namespace {

DistortionCertificate certify(const PointEmbedding& f, const std::vector<std::string>& points,
                              const std::function<double(std::size_t, std::size_t)>& dist) {
    if (points.size() < 2) throw input_error("distortion requires at least two points");
    DistortionCertificate out;
    out.lip = 0.0;
    out.colip = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto fi = f.coords.find(points[i]);
        if (fi == f.coords.end()) throw input_error("embedding misses point " + points[i]);
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double d = dist(i, j);
            double img = sparse_diff_norm(fi->second, f.coords.at(points[j]), f.p);
            if (d <= 0.0) {
                if (img > 0.0) {
                    out.infinite = true;
                    out.lip = std::numeric_limits<double>::infinity();
                    out.argmax_pair = {points[i], points[j]};
                }
                continue;
            }
            double ratio = img / d;
            if (ratio > out.lip) {
                out.lip = ratio;
                out.argmax_pair = {points[i], points[j]};
            }
            if (ratio < out.colip) {
                out.colip = ratio;
                out.argmin_pair = {points[i], points[j]};
            }
        }
    }
    if (out.colip <= 0.0) {
        out.infinite = true;
        out.distortion = std::numeric_limits<double>::infinity();
    } else {
        out.distortion = out.lip / out.colip;
    }
    return out;
}

}  // namespace

DistortionCertificate distortion(const PointEmbedding& f, const WeightedRootedTree& tree) {
    std::vector<std::string> points = tree.ids();
    return certify(f, points, [&](std::size_t i, std::size_t j) {
        return tree.distance(static_cast<int>(i), static_cast<int>(j));
    });
}

DistortionCertificate distortion_general(
    const PointEmbedding& f, const std::vector<std::string>& points,
    const std::function<double(const std::string&, const std::string&)>& dist) {
    return certify(f, points, [&](std::size_t i, std::size_t j) { return dist(points[i], points[j]); });
}

namespace {

std::string color_key(int c) { return "c" + std::to_string(c); }

}  // namespace

PointEmbedding simple_coloring_embedding(const WeightedRootedTree& tree,
                                         const EdgeColoring& coloring, double p) {
    if (!check_monotone(tree, coloring).ok) {
        throw precondition_error("simple_coloring_embedding requires a monotone coloring");
    }
    if (!(p >= 1.0)) throw input_error("p must be at least 1");
    PointEmbedding out;
    out.p = p;
    for (int v : tree.bfs_order()) {
        SparseVec vec;
        if (v != tree.root_index()) {
            vec = out.coords.at(tree.id_of(tree.parent(v)));
            vec[color_key(coloring[v])] += tree.edge_length(v);
        }
        out.coords[tree.id_of(v)] = std::move(vec);
    }
    return out;
}

namespace {

// Color classes along the root path of each vertex: the run-length encoded
// sequence (k_i, d_i) shared structurally with the parent.
struct PathClasses {
    std::vector<std::vector<std::pair<int, double>>> seq;  // per vertex

    PathClasses(const WeightedRootedTree& tree, const EdgeColoring& coloring) {
        seq.resize(tree.size());
        for (int v : tree.bfs_order()) {
            if (v == tree.root_index()) continue;
            auto s = seq[tree.parent(v)];
            if (!s.empty() && s.back().first == coloring[v]) {
                s.back().second += tree.edge_length(v);
            } else {
                s.emplace_back(coloring[v], tree.edge_length(v));
            }
            seq[v] = std::move(s);
        }
    }
};

std::vector<double> truncated_weights(const std::vector<std::pair<int, double>>& classes,
                                      double delta) {
    std::size_t m = classes.size();
    std::vector<double> s(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double run = 0.0;
        KahanSum acc;
        for (std::size_t j = i; j < m; ++j) {
            run += classes[j].second;
            acc.add(std::max(0.0, classes[j].second - delta / 2.0 * run));
        }
        s[i] = acc.value();
    }
    return s;
}

}  // namespace

PointEmbedding matousek_embedding(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                  double delta, double p) {
    if (!check_monotone(tree, coloring).ok) {
        throw precondition_error("matousek_embedding requires a monotone coloring");
    }
    if (!(delta > 0.0) || delta > 0.5) {
        throw precondition_error("matousek_embedding requires 0 < delta <= 1/2");
    }
    ColoringQuality q = quality(tree, coloring);
    if (delta > q.strong_delta * (1.0 + kRelTol)) {
        throw precondition_error("coloring is not delta-strong at the requested delta");
    }
    PointEmbedding out;
    out.routed_to_p2 = p < 2.0;
    out.p = out.routed_to_p2 ? 2.0 : p;
    double pe = out.p;

    PathClasses pc(tree, coloring);
    for (int v = 0; v < tree.size(); ++v) {
        const auto& classes = pc.seq[v];
        std::vector<double> s = truncated_weights(classes, delta);
        SparseVec vec;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            double coord = std::pow(classes[i].second, 1.0 / pe) * std::pow(s[i], (pe - 1.0) / pe);
            if (coord != 0.0) vec[color_key(classes[i].first)] = coord;
        }
        out.coords[tree.id_of(v)] = std::move(vec);
    }
    return out;
}

MatousekAudit matousek_pointwise_check(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                       double delta, double p) {
    MatousekAudit out;
    PointEmbedding f = matousek_embedding(tree, coloring, delta, p);
    double pe = f.p;
    PathClasses pc(tree, coloring);
    out.worst_truncation_ratio = std::numeric_limits<double>::infinity();
    for (int v = 0; v < tree.size(); ++v) {
        const auto& classes = pc.seq[v];
        std::vector<double> s = truncated_weights(classes, delta);
        double tail = 0.0;
        for (std::size_t i = classes.size(); i-- > 0;) {
            tail += classes[i].second;
            double ratio = s[i] / tail;
            out.worst_truncation_ratio = std::min(out.worst_truncation_ratio, ratio);
            if (ratio < 0.25 * (1.0 - kRelTol)) out.truncation_bound_ok = false;
        }
    }
    if (!std::isfinite(out.worst_truncation_ratio)) out.worst_truncation_ratio = 1.0;
    double bound = std::pow(5.0 * std::log(3.0 / delta), 1.0 / pe);
    for (int v = 0; v < tree.size(); ++v) {
        if (v == tree.root_index()) continue;
        double img = sparse_diff_norm(f.coords.at(tree.id_of(v)),
                                      f.coords.at(tree.id_of(tree.parent(v))), pe);
        double ratio = img / tree.edge_length(v);
        out.worst_edge_ratio = std::max(out.worst_edge_ratio, ratio);
        if (ratio > bound * (1.0 + kRelTol)) out.edge_lipschitz_ok = false;
    }
    return out;
}

PointEmbedding reasonable_embedding(const WeightedRootedTree& tree,
                                    const std::map<std::string, int>& palette, double delta,
                                    double p) {
    ReasonableCheck chk = check_reasonable(tree, palette, delta);
    if (!chk.ok) {
        throw precondition_error("palette coloring is not delta-reasonable at delta between " +
                                 chk.worst_pair.first + " and " + chk.worst_pair.second);
    }
    EdgeColoring coloring = coloring_from_map(tree, palette);
    PointEmbedding out;
    out.p = p;
    for (int v : tree.bfs_order()) {
        SparseVec vec;
        if (v != tree.root_index()) {
            vec = out.coords.at(tree.id_of(tree.parent(v)));
            vec[color_key(coloring[v])] += tree.edge_length(v);
        }
        out.coords[tree.id_of(v)] = std::move(vec);
    }
    return out;
}

std::string subdivision_point_id(const SubdivisionSample& s) {
    std::ostringstream os;
    os << s.edge_child << "@" << s.eta;
    return os.str();
}

namespace {

struct EdgePoint {
    int child;   // edge (parent(child), child); child itself when eta == 1
    double eta;  // from the parent end
};

double edge_point_distance(const WeightedRootedTree& tree, const EdgePoint& a, const EdgePoint& b) {
    if (a.child == b.child) {
        return std::fabs(a.eta - b.eta) * tree.edge_length(a.child);
    }
    double la = tree.edge_length(a.child), lb = tree.edge_length(b.child);
    int pa = tree.parent(a.child), pb = tree.parent(b.child);
    double best = std::numeric_limits<double>::infinity();
    struct End {
        int vertex;
        double cost;
    };
    End ea[2] = {{pa, a.eta * la}, {a.child, (1.0 - a.eta) * la}};
    End eb[2] = {{pb, b.eta * lb}, {b.child, (1.0 - b.eta) * lb}};
    int na = (a.child == tree.root_index()) ? 1 : 2;
    int nb = (b.child == tree.root_index()) ? 1 : 2;
    for (int i = (na == 1 ? 1 : 0); i < 2; ++i) {
        for (int j = (nb == 1 ? 1 : 0); j < 2; ++j) {
            best = std::min(best, ea[i].cost + tree.distance(ea[i].vertex, eb[j].vertex) + eb[j].cost);
        }
    }
    return best;
}

}  // namespace

double subdivision_distance(const WeightedRootedTree& tree, const SubdivisionSample& a,
                            const SubdivisionSample& b) {
    EdgePoint pa{tree.index_of(a.edge_child), a.eta};
    EdgePoint pb{tree.index_of(b.edge_child), b.eta};
    return edge_point_distance(tree, pa, pb);
}

SubdivisionExtension extend_to_subdivision(const WeightedRootedTree& tree, const PointEmbedding& f,
                                           const std::vector<SubdivisionSample>& samples) {
    for (const auto& s : samples) {
        if (s.eta < 0.0 || s.eta > 1.0) throw input_error("eta must lie in [0, 1]");
        if (tree.index_of(s.edge_child) == tree.root_index()) {
            throw input_error("the root has no incoming edge to sample");
        }
    }
    SubdivisionExtension out;
    out.base_cert = distortion(f, tree);
    if (out.base_cert.infinite || out.base_cert.lip <= 0.0) {
        throw precondition_error("base embedding must be bi-Lipschitz on the tree");
    }
    out.input_scale = 1.0 / out.base_cert.lip;

    out.embedding.p = f.p;
    out.embedding.routed_to_p2 = f.routed_to_p2;
    for (const auto& [id, vec] : f.coords) {
        SparseVec scaled;
        for (const auto& [k, x] : vec) scaled[k] = x * out.input_scale;
        out.embedding.coords[id] = std::move(scaled);
    }

    std::vector<EdgePoint> geo;
    out.points = tree.ids();
    for (int v = 0; v < tree.size(); ++v) geo.push_back({v, 1.0});
    for (const auto& s : samples) {
        int child = tree.index_of(s.edge_child);
        int parent = tree.parent(child);
        const SparseVec& fu = out.embedding.coords.at(tree.id_of(parent));
        const SparseVec& fv = out.embedding.coords.at(tree.id_of(child));
        SparseVec g;
        for (const auto& [k, x] : fu) g[k] += (1.0 - s.eta) * x;
        for (const auto& [k, x] : fv) g[k] += s.eta * x;
        g["beta:" + s.edge_child] = s.eta * tree.edge_length(child);
        std::string id = subdivision_point_id(s);
        out.embedding.coords[id] = std::move(g);
        out.points.push_back(id);
        geo.push_back({child, s.eta});
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < out.points.size(); ++i) index[out.points[i]] = i;
    auto dist = [&](const std::string& a, const std::string& b) {
        return edge_point_distance(tree, geo[index.at(a)], geo[index.at(b)]);
    };
    out.extension_cert = distortion_general(out.embedding, out.points, dist);
    return out;
}

LeafPadExtension leaf_pad_embedding(const WeightedRootedTree& tree, const PointEmbedding& f,
                                    const std::map<std::string, double>& pads) {
    std::vector<WeightedRootedTree::Edge> edges = tree.edge_list();
    LeafPadExtension out{f, tree, {}, {}};
    for (const auto& [leaf, pad] : pads) {
        int v = tree.index_of(leaf);
        if (!tree.is_leaf(v)) throw input_error(leaf + " is not a leaf");
        if (pad < 0.0) throw input_error("negative pad length");
        if (pad == 0.0) continue;
        std::string pid = leaf + "+pad";
        edges.emplace_back(leaf, pid, pad);
        SparseVec g = f.coords.at(leaf);
        g["beta:" + pid] = pad;
        out.embedding.coords[pid] = std::move(g);
    }
    out.padded_tree = WeightedRootedTree(tree.root_id(), edges);
    out.base_cert = distortion(f, tree);
    out.extension_cert = distortion(out.embedding, out.padded_tree);
    return out;
}

}  // namespace arboreal
