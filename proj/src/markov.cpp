#include "arboreal/markov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace arboreal {

namespace {

void validate_explicit(const ChainSpec& chain) {
    if (!chain.has_explicit) throw precondition_error("exact evaluation needs an explicit chain");
    std::size_t n = chain.states.size();
    if (chain.kernel.size() != n || chain.initial.size() != n) {
        throw input_error("kernel/initial size mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (chain.kernel[i].size() != n) throw input_error("kernel not square");
        double row = 0.0;
        for (double x : chain.kernel[i]) {
            if (x < -kRelTol) throw input_error("negative kernel entry");
            row += x;
        }
        if (std::fabs(row - 1.0) > 1e-9) throw input_error("kernel row does not sum to 1");
        total += chain.initial[i];
    }
    if (std::fabs(total - 1.0) > 1e-9) throw input_error("initial distribution does not sum to 1");
}

double power_di(double base, double expo) { return std::pow(base, expo); }

}  // namespace

ConvexityEstimate compute_convexity_exact(const ChainSpec& chain, double p, int m, ForkMode mode) {
    validate_explicit(chain);
    if (!(p >= 1.0)) throw input_error("p must be at least 1");
    if (m < 0 || m > 14) throw resource_error("m must lie in [0, 14]");
    int n = static_cast<int>(chain.states.size());
    if (n > 4000 || static_cast<long long>(n) * n > 16000000LL) {
        throw resource_error("state space too large for the exact evaluator");
    }
    long long steps = 1LL << m;

    // Marginals D_t.
    std::vector<std::vector<double>> D(steps + 1, std::vector<double>(n, 0.0));
    D[0] = chain.initial;
    for (long long t = 1; t <= steps; ++t) {
        for (int x = 0; x < n; ++x) {
            double mass = D[t - 1][x];
            if (mass == 0.0) continue;
            for (int y = 0; y < n; ++y) D[t][y] += mass * chain.kernel[x][y];
        }
    }

    // d(x,y)^p and the expected step cost.
    std::vector<std::vector<double>> M0(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) M0[x][y] = power_di(chain.state_distance(x, y), p);
    }
    std::vector<double> step_cost(n, 0.0);
    for (int x = 0; x < n; ++x) {
        KahanSum s;
        for (int y = 0; y < n; ++y) s.add(chain.kernel[x][y] * M0[x][y]);
        step_cost[x] = s.value();
    }
    KahanSum rhs_acc;
    for (long long t = 1; t <= steps; ++t) {
        KahanSum s;
        for (int x = 0; x < n; ++x) s.add(D[t - 1][x] * step_cost[x]);
        rhs_acc.add(s.value());
    }

    // Negative fork times in Definition mode: two independent copies of the
    // whole chain, so E d^p factorizes over the marginal at time t.
    std::vector<double> W(steps, 0.0);
    for (long long t = 1; t < steps; ++t) {
        KahanSum s;
        for (int x = 0; x < n; ++x) {
            if (D[t][x] == 0.0) continue;
            for (int y = 0; y < n; ++y) s.add(D[t][x] * D[t][y] * M0[x][y]);
        }
        W[t] = s.value();
    }

    // Pair matrix M_j(x,y) = E d^p after j independent steps from (x,y);
    // record its diagonal at every horizon.
    std::vector<std::vector<double>> diag(steps + 1, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> M = M0, tmp(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < n; ++x) diag[0][x] = M[x][x];
    for (long long j = 1; j <= steps; ++j) {
        // tmp = P * M
        for (int x = 0; x < n; ++x) {
            std::fill(tmp[x].begin(), tmp[x].end(), 0.0);
            for (int xp = 0; xp < n; ++xp) {
                double w = chain.kernel[x][xp];
                if (w == 0.0) continue;
                const auto& row = M[xp];
                auto& dst = tmp[x];
                for (int y = 0; y < n; ++y) dst[y] += w * row[y];
            }
        }
        // M = tmp * P^T
        for (int x = 0; x < n; ++x) {
            std::fill(M[x].begin(), M[x].end(), 0.0);
            for (int yp = 0; yp < n; ++yp) {
                double v = tmp[x][yp];
                if (v == 0.0) continue;
                for (int y = 0; y < n; ++y) M[x][y] += v * chain.kernel[y][yp];
            }
        }
        for (int x = 0; x < n; ++x) diag[j][x] = M[x][x];
    }

    KahanSum lhs_acc;
    for (int k = 0; k <= m; ++k) {
        double denom = power_di(2.0, static_cast<double>(k) * p);
        long long span = 1LL << k;
        for (long long t = 1; t <= steps; ++t) {
            long long tau = t - span;
            double e;
            if (tau >= 0) {
                KahanSum s;
                for (int x = 0; x < n; ++x) s.add(D[tau][x] * diag[span][x]);
                e = s.value();
            } else if (mode == ForkMode::Definition) {
                e = W[t];
            } else {
                KahanSum s;
                for (int x = 0; x < n; ++x) s.add(chain.initial[x] * diag[t][x]);
                e = s.value();
            }
            lhs_acc.add(e / denom);
        }
    }

    ConvexityEstimate out;
    out.lhs = lhs_acc.value();
    out.rhs = rhs_acc.value();
    out.p = p;
    out.m = m;
    out.method = "exact";
    out.degenerate = out.rhs <= 0.0;
    out.ratio = out.degenerate ? 0.0 : out.lhs / out.rhs;
    out.pi_lower = out.degenerate ? 0.0 : power_di(out.ratio, 1.0 / p);
    return out;
}

ConvexityEstimate estimate_convexity_mc(const ChainSpec& chain, double p, int m, long long samples,
                                        std::uint64_t seed, ForkMode mode) {
    if (!(p >= 1.0)) throw input_error("p must be at least 1");
    if (m < 0 || m > 14) throw resource_error("m must lie in [0, 14]");
    if (samples < 1) throw input_error("samples must be positive");
    long long steps = 1LL << m;
    RngStream root(seed);

    std::vector<double> lhs_s(samples, 0.0), rhs_s(samples, 0.0);
    for (long long s = 0; s < samples; ++s) {
        RngStream base = root.derive(0xBA5Eu, static_cast<std::uint64_t>(s));
        std::vector<ChainState> traj(steps + 1);
        traj[0] = chain.sample_initial(base);
        for (long long t = 1; t <= steps; ++t) traj[t] = chain.sample_step(traj[t - 1], base);

        KahanSum rhs;
        for (long long t = 1; t <= steps; ++t) {
            rhs.add(power_di(chain.distance(traj[t], traj[t - 1]), p));
        }
        rhs_s[s] = rhs.value();

        KahanSum lhs;
        for (int k = 0; k <= m; ++k) {
            double denom = power_di(2.0, static_cast<double>(k) * p);
            long long span = 1LL << k;
            for (long long t = 1; t <= steps; ++t) {
                RngStream fork = root.derive(static_cast<std::uint64_t>(s),
                                             static_cast<std::uint64_t>(k),
                                             static_cast<std::uint64_t>(t));
                long long tau = t - span;
                ChainState y;
                long long run;
                if (tau >= 0) {
                    y = traj[tau];
                    run = span;
                } else if (mode == ForkMode::Definition) {
                    y = chain.sample_initial(fork);
                    run = t;
                } else {
                    y = traj[0];
                    run = t;
                }
                for (long long i = 0; i < run; ++i) y = chain.sample_step(y, fork);
                lhs.add(power_di(chain.distance(traj[t], y), p) / denom);
            }
        }
        lhs_s[s] = lhs.value();
    }

    ConvexityEstimate out;
    out.p = p;
    out.m = m;
    out.method = "mc";
    out.samples = samples;
    out.seed = seed;
    double ns = static_cast<double>(samples);
    out.lhs = pairwise_sum(lhs_s) / ns;
    out.rhs = pairwise_sum(rhs_s) / ns;
    out.degenerate = out.rhs <= 0.0;
    if (!out.degenerate) {
        out.ratio = out.lhs / out.rhs;
        out.pi_lower = power_di(out.ratio, 1.0 / p);
        if (samples > 1) {
            KahanSum vl, vr, cov;
            for (long long s = 0; s < samples; ++s) {
                double dl = lhs_s[s] - out.lhs, dr = rhs_s[s] - out.rhs;
                vl.add(dl * dl);
                vr.add(dr * dr);
                cov.add(dl * dr);
            }
            double var_l = vl.value() / (ns - 1.0);
            double var_r = vr.value() / (ns - 1.0);
            double cov_lr = cov.value() / (ns - 1.0);
            double L = out.lhs, R = out.rhs;
            double var_ratio =
                (var_l / (R * R) + L * L * var_r / (R * R * R * R) - 2.0 * L * cov_lr / (R * R * R)) /
                ns;
            out.stderr_ratio = var_ratio > 0.0 ? std::sqrt(var_ratio) : 0.0;
        }
    }
    return out;
}

ChainSpec downward_walk_chain(const WeightedRootedTree& tree) {
    auto shared = std::make_shared<WeightedRootedTree>(tree);
    ChainSpec out;
    out.sample_initial = [shared](RngStream&) {
        return ChainState{static_cast<std::uint64_t>(shared->root_index()), 0};
    };
    out.sample_step = [shared](const ChainState& s, RngStream& rng) {
        const auto& kids = shared->children(static_cast<int>(s.a));
        if (kids.empty()) return s;
        return ChainState{static_cast<std::uint64_t>(kids[rng.next_below(kids.size())]), 0};
    };
    out.distance = [shared](const ChainState& a, const ChainState& b) {
        return shared->distance(static_cast<int>(a.a), static_cast<int>(b.a));
    };
    if (tree.size() <= 4000) {
        out.has_explicit = true;
        out.states = tree.ids();
        int n = tree.size();
        out.kernel.assign(n, std::vector<double>(n, 0.0));
        for (int v = 0; v < n; ++v) {
            const auto& kids = tree.children(v);
            if (kids.empty()) {
                out.kernel[v][v] = 1.0;
            } else {
                for (int c : kids) out.kernel[v][c] = 1.0 / static_cast<double>(kids.size());
            }
        }
        out.initial.assign(n, 0.0);
        out.initial[tree.root_index()] = 1.0;
        out.state_distance = [shared](int i, int j) { return shared->distance(i, j); };
    }
    return out;
}

ChainSpec lamplighter_chain(int N) {
    auto space = std::make_shared<LamplighterSpace>(N);
    ChainSpec out;
    out.sample_initial = [](RngStream&) { return ChainState{0, 0}; };
    out.sample_step = [N](const ChainState& s, RngStream& rng) {
        int pos = (s.b + 1) % N;
        std::uint64_t lamps = s.a;
        if (rng.next_bool()) lamps ^= (1ULL << pos);
        return ChainState{lamps, pos};
    };
    out.distance = [space](const ChainState& a, const ChainState& b) {
        return static_cast<double>(space->distance({a.a, a.b}, {b.a, b.b}));
    };
    if (N <= 10) {
        out.has_explicit = true;
        int n = (1 << N) * N;
        out.states.reserve(n);
        for (int mask = 0; mask < (1 << N); ++mask) {
            for (int pos = 0; pos < N; ++pos) {
                out.states.push_back("L" + std::to_string(mask) + ":" + std::to_string(pos));
            }
        }
        out.kernel.assign(n, std::vector<double>(n, 0.0));
        auto idx = [N](int mask, int pos) { return mask * N + pos; };
        for (int mask = 0; mask < (1 << N); ++mask) {
            for (int pos = 0; pos < N; ++pos) {
                int np = (pos + 1) % N;
                out.kernel[idx(mask, pos)][idx(mask, np)] += 0.5;
                out.kernel[idx(mask, pos)][idx(mask ^ (1 << np), np)] += 0.5;
            }
        }
        out.initial.assign(n, 0.0);
        out.initial[0] = 1.0;
        out.state_distance = [space, N](int i, int j) {
            LampState a{static_cast<std::uint64_t>(i / N), i % N};
            LampState b{static_cast<std::uint64_t>(j / N), j % N};
            return static_cast<double>(space->distance(a, b));
        };
    }
    return out;
}

ChainSpec explicit_chain(std::vector<std::string> states, std::vector<std::vector<double>> kernel,
                         std::vector<double> initial, std::vector<std::vector<double>> coords) {
    auto kern = std::make_shared<std::vector<std::vector<double>>>(std::move(kernel));
    auto init = std::make_shared<std::vector<double>>(std::move(initial));
    auto crd = std::make_shared<std::vector<std::vector<double>>>(std::move(coords));
    if (crd->size() != states.size()) throw input_error("coordinate map size mismatch");
    ChainSpec out;
    out.has_explicit = true;
    out.states = std::move(states);
    out.kernel = *kern;
    out.initial = *init;
    auto euclid = [crd](int i, int j) {
        KahanSum s;
        const auto& a = (*crd)[i];
        const auto& b = (*crd)[j];
        for (std::size_t d = 0; d < a.size(); ++d) {
            double diff = a[d] - b[d];
            s.add(diff * diff);
        }
        return std::sqrt(s.value());
    };
    out.state_distance = euclid;
    out.sample_initial = [init](RngStream& rng) {
        double u = rng.next_double(), acc = 0.0;
        for (std::size_t i = 0; i < init->size(); ++i) {
            acc += (*init)[i];
            if (u < acc) return ChainState{i, 0};
        }
        return ChainState{init->size() - 1, 0};
    };
    out.sample_step = [kern](const ChainState& s, RngStream& rng) {
        const auto& row = (*kern)[static_cast<std::size_t>(s.a)];
        double u = rng.next_double(), acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc += row[j];
            if (u < acc) return ChainState{j, 0};
        }
        return ChainState{row.size() - 1, 0};
    };
    out.distance = [euclid](const ChainState& a, const ChainState& b) {
        return euclid(static_cast<int>(a.a), static_cast<int>(b.a));
    };
    return out;
}

DyadicIdentity dyadic_identity_residual(const std::vector<std::vector<double>>& points) {
    std::size_t len = points.size();
    int m = -1;
    for (int cand = 0; cand <= 30; ++cand) {
        if ((1ULL << cand) + 1 == len) m = cand;
    }
    if (m < 0) throw input_error("need 2^m + 1 points");
    std::size_t dim = points.front().size();
    for (const auto& x : points) {
        if (x.size() != dim) throw input_error("inconsistent point dimensions");
    }
    auto nrm2 = [&](const std::vector<double>& a, const std::vector<double>& b, double ca,
                    double cb, const std::vector<double>& c, double cc) {
        KahanSum s;
        for (std::size_t d = 0; d < dim; ++d) {
            double x = ca * a[d] + cb * b[d] + cc * c[d];
            s.add(x * x);
        }
        return s.value();
    };
    long long n = 1LL << m;
    DyadicIdentity out;
    KahanSum lhs;
    for (long long i = 1; i <= n; ++i) lhs.add(nrm2(points[i], points[i - 1], 1.0, -1.0, points[0], 0.0));
    out.lhs = lhs.value();

    KahanSum rhs;
    rhs.add(nrm2(points[n], points[0], 1.0, -1.0, points[0], 0.0) / static_cast<double>(n));
    for (int k = 1; k <= m; ++k) {
        double coeff = std::ldexp(1.0, -k);
        long long blocks = 1LL << (m - k);
        long long half = 1LL << (k - 1);
        for (long long j = 1; j <= blocks; ++j) {
            rhs.add(coeff * nrm2(points[j << k], points[(2 * j - 1) * half], 1.0, -2.0,
                                 points[(j - 1) << k], 1.0));
        }
    }
    out.rhs_id = rhs.value();
    out.residual = out.lhs - out.rhs_id;

    auto at = [&](long long i) -> const std::vector<double>& {
        return points[static_cast<std::size_t>(std::max<long long>(i, 0))];
    };
    KahanSum shifted;
    shifted.add(0.5 * nrm2(points[n], points[0], 1.0, -1.0, points[0], 0.0) /
                std::ldexp(1.0, 2 * m));
    for (int k = 1; k <= m; ++k) {
        double coeff = 0.5 * std::ldexp(1.0, -2 * k);
        long long half = 1LL << (k - 1);
        for (long long t = 1; t <= n; ++t) {
            shifted.add(coeff * nrm2(at(t), at(t - half), 1.0, -2.0, at(t - 2 * half), 1.0));
        }
    }
    out.shifted_lhs_bound_ok = out.lhs >= shifted.value() * (1.0 - kRelTol) - kRelTol;
    return out;
}

double distortion_lower_bound(const ConvexityEstimate& est, double target_pi) {
    if (est.degenerate) throw precondition_error("degenerate estimate has no pi lower bound");
    if (!(target_pi > 0.0)) throw input_error("target Markov constant must be positive");
    return est.pi_lower / target_pi;
}

WalkSpeed walk_speed(const WalkerSpec& walker, long long steps, long long samples,
                     std::uint64_t seed) {
    if (steps < 1 || samples < 1) throw input_error("steps and samples must be positive");
    RngStream root(seed);
    std::vector<double> d(samples, 0.0);
    for (long long s = 0; s < samples; ++s) {
        RngStream stream = root.derive(0x5EEDu, static_cast<std::uint64_t>(s));
        ChainState x0 = walker.sample_initial(stream);
        ChainState x = x0;
        for (long long t = 0; t < steps; ++t) x = walker.sample_step(x, stream);
        d[s] = walker.distance(x0, x);
    }
    WalkSpeed out;
    out.steps = steps;
    out.samples = samples;
    double mean = pairwise_sum(d) / static_cast<double>(samples);
    out.speed = mean / static_cast<double>(steps);
    if (samples > 1) {
        KahanSum var;
        for (double x : d) var.add((x - mean) * (x - mean));
        out.stderr_mean =
            std::sqrt(var.value() / (static_cast<double>(samples) - 1.0) / static_cast<double>(samples)) /
            static_cast<double>(steps);
    }
    return out;
}

WalkerSpec cycle_walker(int N) {
    if (N < 2) throw input_error("cycle walker needs N >= 2");
    WalkerSpec out;
    out.sample_initial = [](RngStream&) { return ChainState{0, 0}; };
    out.sample_step = [N](const ChainState& s, RngStream& rng) {
        int pos = static_cast<int>(s.a);
        pos = rng.next_bool() ? (pos + 1) % N : (pos + N - 1) % N;
        return ChainState{static_cast<std::uint64_t>(pos), 0};
    };
    out.distance = [N](const ChainState& a, const ChainState& b) {
        int diff = std::abs(static_cast<int>(a.a) - static_cast<int>(b.a));
        return static_cast<double>(std::min(diff, N - diff));
    };
    return out;
}

WalkerSpec three_regular_tree_walker() {
    // Distance from the start of a simple random walk on the 3-regular tree
    // is a birth-death chain: away with probability 2/3 off the root.
    WalkerSpec out;
    out.sample_initial = [](RngStream&) { return ChainState{0, 0}; };
    out.sample_step = [](const ChainState& s, RngStream& rng) {
        if (s.a == 0) return ChainState{1, 0};
        bool away = rng.next_below(3) != 0;
        return ChainState{away ? s.a + 1 : s.a - 1, 0};
    };
    out.distance = [](const ChainState& a, const ChainState& b) {
        return std::fabs(static_cast<double>(a.a) - static_cast<double>(b.a));
    };
    return out;
}

WalkerSpec downward_tree_walker(const WeightedRootedTree& tree) {
    ChainSpec chain = downward_walk_chain(tree);
    return WalkerSpec{chain.sample_initial, chain.sample_step, chain.distance};
}

WalkerSpec lamplighter_walker(int N) {
    auto space = std::make_shared<LamplighterSpace>(N);
    WalkerSpec out;
    out.sample_initial = [](RngStream&) { return ChainState{0, 0}; };
    out.sample_step = [N](const ChainState& s, RngStream& rng) {
        switch (rng.next_below(3)) {
            case 0:
                return ChainState{s.a, static_cast<std::int32_t>((s.b + 1) % N)};
            case 1:
                return ChainState{s.a, static_cast<std::int32_t>((s.b + N - 1) % N)};
            default:
                return ChainState{s.a ^ (1ULL << s.b), s.b};
        }
    };
    out.distance = [space](const ChainState& a, const ChainState& b) {
        return static_cast<double>(space->distance({a.a, a.b}, {b.a, b.b}));
    };
    return out;
}

}  // namespace arboreal
