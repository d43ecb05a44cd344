#include "arboreal/sst_profile.hpp"

#include <algorithm>
#include <cmath>

namespace arboreal {

std::vector<double> sst_branch_gaps(const DegreeSequence& seq) {
    if (!seq.valid()) throw input_error("invalid degree sequence");
    int h = seq.height();
    std::vector<int> stops{0};
    for (int level = 1; level < h; ++level) {
        if (seq.entries[level] >= 2) stops.push_back(level);
    }
    stops.push_back(h);
    std::vector<double> gaps;
    for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
        if (stops[i + 1] > stops[i]) gaps.push_back(stops[i + 1] - stops[i]);
    }
    return gaps;
}

SstWeakCheck sst_weak_prototype_check(const DegreeSequence& seq, double eps, double delta) {
    for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
        if (seq.entries[i] > 2) return {false, 0.0};
    }
    if (seq.height() == 0) return {false, 0.0};
    std::vector<double> gaps = sst_branch_gaps(seq);
    double total = seq.height();
    double qualifying = 0.0;
    for (double g : gaps) {
        if (g <= delta * total * (1.0 + kRelTol)) qualifying += g;
    }
    double fraction = qualifying / total;
    return {fraction + kRelTol >= eps, fraction};
}

std::vector<int> sst_window_dp(const DegreeSequence& seq, double L, double U) {
    int h = seq.height();
    int lo = static_cast<int>(std::ceil(L - kRelTol));
    int hi = static_cast<int>(std::floor(U + kRelTol));
    lo = std::max(lo, 1);
    std::vector<int> d(h + 1, 0);
    if (lo > hi) return d;
    for (int level = h - 1; level >= 0; --level) {
        if (seq.entries[level] < 2) continue;
        int best = -1;
        for (int target = std::min(h, level + hi); target >= level + lo; --target) {
            best = std::max(best, d[target]);
        }
        if (best >= 0) d[level] = best + 1;
    }
    return d;
}

SstBinaryProfile sst_binary_profile(const DegreeSequence& seq, double c) {
    if (!(c > 1.0)) throw input_error("binary profile requires c > 1");
    SstBinaryProfile out;
    int h = seq.height();
    if (h == 0) return out;
    double diameter = 2.0 * h;
    double step = std::sqrt(c);
    for (double L = 1.0; L <= diameter; L *= step) {
        double U = c * L * (1.0 - kRelTol);
        std::vector<int> d = sst_window_dp(seq, L, U);
        int k = *std::max_element(d.begin(), d.end());
        if (k > out.k_lower) {
            out.k_lower = k;
            out.best_scale = L;
        }
    }
    return out;
}

SstConvexity sst_downward_convexity_exact(const DegreeSequence& seq, double p, int m) {
    if (!(p >= 1.0)) throw input_error("p must be at least 1");
    if (m < 0 || m > 20) throw resource_error("m out of range");
    int h = seq.height();
    long long steps = 1LL << m;

    // Two independent continuations started together at level tau separate at
    // the first level where they pick different children.
    auto expected_dp = [&](long long tau, long long t) -> double {
        long long lt = std::min<long long>(t, h);
        long long ltau = std::min<long long>(tau, h);
        double together = 1.0;
        KahanSum acc;
        for (long long lev = ltau; lev < lt; ++lev) {
            int deg = seq.entries[static_cast<std::size_t>(lev)];
            if (deg >= 2) {
                double split = together * (1.0 - 1.0 / deg);
                acc.add(split * std::pow(2.0 * static_cast<double>(lt - lev), p));
                together /= deg;
            }
        }
        return acc.value();
    };

    SstConvexity out;
    out.rhs = static_cast<double>(std::min<long long>(steps, h));
    KahanSum lhs;
    for (int k = 0; k <= m; ++k) {
        double denom = std::pow(2.0, static_cast<double>(k) * p);
        for (long long t = 1; t <= steps; ++t) {
            long long tau = std::max<long long>(t - (1LL << k), 0);
            lhs.add(expected_dp(tau, t) / denom);
        }
    }
    out.lhs = lhs.value();
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    out.pi_lower = out.rhs > 0.0 ? std::pow(out.ratio, 1.0 / p) : 0.0;
    return out;
}

DegreeSequence sst_normalized_sequence(const DegreeSequence& seq) {
    if (!seq.valid()) throw input_error("invalid degree sequence");
    int h = seq.height();
    long long target = 1;
    while (target < h) target <<= 1;
    if (h == 0) target = 1;
    DegreeSequence out = seq;
    out.entries.pop_back();
    out.entries.insert(out.entries.end(), static_cast<std::size_t>(target - h), 1);
    out.entries.push_back(0);
    return out;
}

}  // namespace arboreal
