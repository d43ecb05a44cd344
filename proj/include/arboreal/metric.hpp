#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/common.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

// Finite metric space given by an explicit symmetric matrix. Validated on
// construction: zero diagonal, symmetry, triangle inequality (1e-9 relative).
class FiniteMetric {
public:
    FiniteMetric(std::vector<std::string> points, std::vector<std::vector<double>> dist);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    double dist(int i, int j) const { return dist_[i][j]; }
    const std::vector<std::vector<double>>& matrix() const { return dist_; }

private:
    std::vector<std::string> points_;
    std::vector<std::vector<double>> dist_;
};

FiniteMetric tree_metric(const WeightedRootedTree& tree);

struct FourPointResult {
    bool is_tree_metric = true;
    std::optional<std::array<std::string, 4>> witness;
};

// Four point condition: among the three pairings of every quadruple the two
// largest sums coincide.
FourPointResult four_point_check(const FiniteMetric& metric);

struct DoublingResult {
    int lambda = 1;
    // True when the greedy upper bound was matched by an exhaustive cover
    // search on every ball (exact value), false when some ball was too large
    // and only the greedy upper bound is reported.
    bool certified = true;
};

// Least lambda such that every ball of radius r is covered by lambda balls
// of radius r/2, r ranging over all pairwise distances.
DoublingResult doubling_constant(const FiniteMetric& metric);

}  // namespace arboreal
