#include "arboreal/metric.hpp"

#include <algorithm>
#include <cmath>

namespace arboreal {

FiniteMetric::FiniteMetric(std::vector<std::string> points, std::vector<std::vector<double>> dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
    int n = static_cast<int>(points_.size());
    if (static_cast<int>(dist_.size()) != n) throw input_error("distance matrix size mismatch");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(dist_[i].size()) != n) throw input_error("distance matrix not square");
        if (std::fabs(dist_[i][i]) > kRelTol) throw input_error("nonzero diagonal entry");
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(dist_[i][j]) || dist_[i][j] < 0.0) {
                throw input_error("invalid distance entry");
            }
            if (!approx_eq(dist_[i][j], dist_[j][i])) throw input_error("asymmetric distances");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double slack = dist_[i][k] + dist_[k][j] - dist_[i][j];
                if (slack < -kRelTol * std::max(1.0, dist_[i][j])) {
                    throw input_error("triangle inequality violated at (" + points_[i] + "," +
                                      points_[j] + "," + points_[k] + ")");
                }
            }
        }
    }
}

FiniteMetric tree_metric(const WeightedRootedTree& tree) {
    int n = tree.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = tree.distance(i, j);
        }
    }
    return FiniteMetric(tree.ids(), std::move(d));
}

FourPointResult four_point_check(const FiniteMetric& m) {
    int n = m.size();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                for (int e = c + 1; e < n; ++e) {
                    std::array<double, 3> s = {m.dist(a, b) + m.dist(c, e),
                                               m.dist(a, c) + m.dist(b, e),
                                               m.dist(a, e) + m.dist(b, c)};
                    std::sort(s.begin(), s.end());
                    if (!approx_eq(s[1], s[2])) {
                        return {false,
                                std::array<std::string, 4>{m.points()[a], m.points()[b],
                                                           m.points()[c], m.points()[e]}};
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

namespace {

// Exact minimum set cover over a ball of at most 12 points (bitmask DP).
int exact_cover(const std::vector<std::uint32_t>& sets, std::uint32_t universe) {
    std::vector<int> dp(universe + 1, 1 << 29);
    dp[0] = 0;
    for (std::uint32_t mask = 0; mask <= universe; ++mask) {
        if (dp[mask] >= (1 << 29)) continue;
        if (mask == universe) break;
        for (std::uint32_t s : sets) {
            std::uint32_t next = (mask | s) & universe;
            if (dp[next] > dp[mask] + 1) dp[next] = dp[mask] + 1;
        }
    }
    return dp[universe];
}

}  // namespace

DoublingResult doubling_constant(const FiniteMetric& m) {
    int n = m.size();
    if (n > 2000) throw resource_error("doubling_constant supports at most 2000 points");
    DoublingResult out;
    out.lambda = 1;
    out.certified = true;
    for (int x = 0; x < n; ++x) {
        std::vector<double> radii;
        for (int y = 0; y < n; ++y) {
            if (y != x) radii.push_back(m.dist(x, y));
        }
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        for (double r : radii) {
            std::vector<int> ball;
            for (int y = 0; y < n; ++y) {
                if (m.dist(x, y) <= r * (1.0 + kRelTol)) ball.push_back(y);
            }
            // Greedy cover with half-radius balls centered anywhere.
            std::vector<bool> covered(ball.size(), false);
            int remaining = static_cast<int>(ball.size());
            int greedy = 0;
            while (remaining > 0) {
                int best_center = -1, best_gain = -1;
                for (int z = 0; z < n; ++z) {
                    int gain = 0;
                    for (std::size_t i = 0; i < ball.size(); ++i) {
                        if (!covered[i] && m.dist(z, ball[i]) <= r / 2.0 * (1.0 + kRelTol)) ++gain;
                    }
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_center = z;
                    }
                }
                for (std::size_t i = 0; i < ball.size(); ++i) {
                    if (!covered[i] && m.dist(best_center, ball[i]) <= r / 2.0 * (1.0 + kRelTol)) {
                        covered[i] = true;
                        --remaining;
                    }
                }
                ++greedy;
            }
            int value = greedy;
            if (ball.size() <= 12) {
                std::vector<std::uint32_t> sets;
                for (int z = 0; z < n; ++z) {
                    std::uint32_t s = 0;
                    for (std::size_t i = 0; i < ball.size(); ++i) {
                        if (m.dist(z, ball[i]) <= r / 2.0 * (1.0 + kRelTol)) {
                            s |= (1u << i);
                        }
                    }
                    if (s) sets.push_back(s);
                }
                std::sort(sets.begin(), sets.end());
                sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
                value = exact_cover(sets, (1u << ball.size()) - 1);
            } else if (greedy > 1) {
                out.certified = false;
            }
            out.lambda = std::max(out.lambda, value);
        }
    }
    return out;
}

}  // namespace arboreal
