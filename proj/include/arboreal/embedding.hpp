#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/coloring.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

using SparseVec = std::map<std::string, double>;

double sparse_diff_norm(const SparseVec& a, const SparseVec& b, double p);

struct PointEmbedding {
    double p = 2.0;
    std::map<std::string, SparseVec> coords;
    bool routed_to_p2 = false;  // set when a p<2 request was built with p=2 coordinates
};

struct DistortionCertificate {
    double lip = 0.0;
    double colip = 0.0;  // 1 / ||f^{-1}||_Lip
    double distortion = 1.0;
    std::pair<std::string, std::string> argmax_pair;
    std::pair<std::string, std::string> argmin_pair;
    bool infinite = false;  // duplicate images at positive distance
};

// Exact max/min of ||f(u)-f(v)||_p / d(u,v) over all pairs.
DistortionCertificate distortion(const PointEmbedding& f, const WeightedRootedTree& tree);
DistortionCertificate distortion_general(
    const PointEmbedding& f, const std::vector<std::string>& points,
    const std::function<double(const std::string&, const std::string&)>& dist);

// One coordinate per color; coordinate k of v is the length color k
// contributes to the root path of v.
PointEmbedding simple_coloring_embedding(const WeightedRootedTree& tree,
                                         const EdgeColoring& coloring, double p);

// Truncated-weight embedding from a delta-strong coloring; coordinates
// d_i(v)^{1/p} * s_i(v)^{(p-1)/p} on the color classes of the root path.
// For p < 2 the coordinates are built with p = 2 and the result flagged.
PointEmbedding matousek_embedding(const WeightedRootedTree& tree, const EdgeColoring& coloring,
                                  double delta, double p);

struct MatousekAudit {
    bool truncation_bound_ok = true;  // s_i >= (1/4) sum_{j>=i} d_j at every (v, i)
    bool edge_lipschitz_ok = true;    // per-edge bound [5 log(3/delta)]^{1/p}
    double worst_truncation_ratio = 0.0;
    double worst_edge_ratio = 0.0;
};

MatousekAudit matousek_pointwise_check(const WeightedRootedTree& tree,
                                       const EdgeColoring& coloring, double delta, double p);

// Same coordinate formula over a finite palette (coloring need not be
// monotone); requires the palette to pass check_reasonable at delta.
PointEmbedding reasonable_embedding(const WeightedRootedTree& tree,
                                    const std::map<std::string, int>& palette, double delta,
                                    double p);

struct SubdivisionSample {
    std::string edge_child;  // edge identified by its lower endpoint
    double eta = 0.5;        // position in [0,1] measured from the parent
};

std::string subdivision_point_id(const SubdivisionSample& s);

// R-tree distance between edge points; vertices are (v, eta=1).
double subdivision_distance(const WeightedRootedTree& tree, const SubdivisionSample& a,
                            const SubdivisionSample& b);

struct SubdivisionExtension {
    PointEmbedding embedding;             // original vertices plus sample points
    std::vector<std::string> points;      // all point ids covered
    double input_scale = 1.0;             // factor applied to f to normalize ||f||_Lip = 1
    DistortionCertificate base_cert;      // distortion of f on the tree
    DistortionCertificate extension_cert; // distortion over vertices + samples
};

// g(u,v,eta) = (1-eta) f(u) + eta f(v) + eta d(u,v) beta_uv with fresh
// per-edge directions beta_uv, applied to f rescaled to unit Lipschitz
// constant. Certified against the R-tree metric on the sampled points.
SubdivisionExtension extend_to_subdivision(const WeightedRootedTree& tree, const PointEmbedding& f,
                                           const std::vector<SubdivisionSample>& samples);

struct LeafPadExtension {
    PointEmbedding embedding;
    WeightedRootedTree padded_tree;
    DistortionCertificate base_cert;
    DistortionCertificate extension_cert;
};

// f(pad(l)) = f(l) + pad * beta_l with fresh directions.
LeafPadExtension leaf_pad_embedding(const WeightedRootedTree& tree, const PointEmbedding& f,
                                    const std::map<std::string, double>& pads);

}  // namespace arboreal
