#include "arboreal/generators.hpp"

#include <cmath>

#include "arboreal/rng.hpp"

namespace arboreal {

WeightedRootedTree complete_binary_tree(int k, double edge_len) {
    if (k < 0) throw input_error("depth must be non-negative");
    if (k > 24) throw resource_error("complete_binary_tree supports depth at most 24");
    DegreeSequence seq;
    seq.entries.assign(k, 2);
    seq.entries.push_back(0);
    return sst(seq, edge_len);
}

WeightedRootedTree sst(const DegreeSequence& seq, double edge_len) {
    if (!seq.valid()) throw input_error("invalid downward degree sequence");
    if (!(edge_len > 0.0)) throw input_error("edge length must be positive");
    double count = 1.0, width = 1.0;
    for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
        width *= seq.entries[i];
        count += width;
        if (count > 2e6) throw resource_error("sst would exceed 2e6 vertices");
    }
    std::vector<WeightedRootedTree::Edge> edges;
    edges.reserve(static_cast<std::size_t>(count));
    // Ids encode the root-path choice string ("r/0/1/..."), so vertex order
    // and all downstream tie-breaks are reproducible.
    std::vector<std::string> level{"r"};
    for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
        std::vector<std::string> next;
        next.reserve(level.size() * seq.entries[i]);
        for (const auto& v : level) {
            for (int c = 0; c < seq.entries[i]; ++c) {
                std::string child = v + "/" + std::to_string(c);
                edges.emplace_back(v, child, edge_len);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    return WeightedRootedTree("r", edges);
}

DegreeSequence cantor_sequence(int i) {
    if (i < 0) throw input_error("index must be non-negative");
    if (i > 10) throw resource_error("cantor_sequence supports index at most 10");
    std::vector<int> s{2};
    for (int j = 0; j < i; ++j) {
        std::vector<int> next = s;
        next.insert(next.end(), (1LL << j) - 1, 1);
        next.insert(next.end(), s.begin(), s.end());
        s = std::move(next);
    }
    s.back() = 0;
    return DegreeSequence{std::move(s)};
}

WeightedRootedTree cantor_tree(int i) { return sst(cantor_sequence(i), 1.0); }

WeightedRootedTree random_tree(int n, const WeightLaw& law, std::uint64_t seed) {
    if (n < 1) throw input_error("random_tree requires n >= 1");
    RngStream rng = RngStream(seed).derive(0x7265656eULL);
    auto vid = [n](int i) {
        std::string s = std::to_string(i);
        int width = static_cast<int>(std::to_string(n - 1).size());
        return "v" + std::string(width - s.size(), '0') + s;
    };
    auto draw_weight = [&]() -> double {
        switch (law.kind) {
            case WeightLaw::Kind::Unit:
                return 1.0;
            case WeightLaw::Kind::Uniform:
                return law.a + (law.b - law.a) * rng.next_double();
            case WeightLaw::Kind::Dyadic: {
                int j = law.jmin +
                        static_cast<int>(rng.next_below(static_cast<std::uint64_t>(law.jmax - law.jmin + 1)));
                return std::ldexp(1.0, j);
            }
        }
        return 1.0;
    };
    std::vector<WeightedRootedTree::Edge> edges;
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i)));
        edges.emplace_back(vid(parent), vid(i), draw_weight());
    }
    return WeightedRootedTree(vid(0), edges);
}

}  // namespace arboreal
