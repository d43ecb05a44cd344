#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arboreal/tree.hpp"

namespace arboreal {

// Downward degree sequence of a spherically symmetric tree: entry i is the
// number of children of every vertex at depth i. A proper sequence ends in 0.
struct DegreeSequence {
    std::vector<int> entries;

    bool valid() const {
        if (entries.empty() || entries.back() != 0) return false;
        for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
            if (entries[i] < 1) return false;
        }
        return true;
    }
    int height() const { return static_cast<int>(entries.size()) - 1; }
};

WeightedRootedTree complete_binary_tree(int k, double edge_len = 1.0);

WeightedRootedTree sst(const DegreeSequence& seq, double edge_len = 1.0);

// Cantor degree sequence S~_i: S_0 = {2}, S_{i+1} = S_i ones(2^i - 1) S_i,
// with the terminal entry zeroed.
DegreeSequence cantor_sequence(int i);

WeightedRootedTree cantor_tree(int i);

struct WeightLaw {
    enum class Kind { Unit, Uniform, Dyadic } kind = Kind::Unit;
    double a = 1.0, b = 1.0;  // uniform(a,b)
    int jmin = 0, jmax = 0;   // dyadic: 2^j, j uniform in [jmin, jmax]

    static WeightLaw unit() { return {}; }
    static WeightLaw uniform(double a, double b) {
        return {Kind::Uniform, a, b, 0, 0};
    }
    static WeightLaw dyadic(int jmin, int jmax) {
        return {Kind::Dyadic, 0, 0, jmin, jmax};
    }
};

// Uniform random attachment tree on n vertices with i.i.d. edge weights.
WeightedRootedTree random_tree(int n, const WeightLaw& law, std::uint64_t seed);

}  // namespace arboreal
