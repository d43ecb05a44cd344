#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace arboreal {

// Relative tolerance used across validators and certificates.
inline constexpr double kRelTol = 1e-9;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Budgeted searches raise this instead of returning a wrong answer.
struct inconclusive_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool approx_eq(double a, double b, double rel = kRelTol) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= rel * scale;
}

// Neumaier compensated summation.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double kahan_total(const std::vector<double>& xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

// Deterministic pairwise reduction; the result does not depend on how the
// inputs were produced (e.g. by parallel workers writing into a vector).
inline double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        KahanSum s;
        for (std::size_t i = lo; i < hi; ++i) s.add(xs[i]);
        return s.value();
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum(xs, 0, xs.size());
}

inline double p_norm(const std::vector<double>& diffs, double p) {
    KahanSum s;
    for (double d : diffs) s.add(std::pow(std::fabs(d), p));
    return std::pow(s.value(), 1.0 / p);
}

}  // namespace arboreal
