#pragma once

#include <complex>
#include <random>
#include <vector>

#include "latop/apps.hpp"
#include "latop/transferop.hpp"
#include "latop/types.hpp"

namespace latop::testing {

/// The 12-branch full-branch interval family on foci (0,1): one rational
/// branch x/(11+x) and eleven affine branches (x+i)/12, weighted by their
/// derivatives. Subleading eigenvalue ~ 0.0900761270052955778.
inline MapWeightSystem full_branch_interval_system() {
    MapWeightSystem sys;
    sys.foci = {cplx{0.0}, cplx{1.0}};
    sys.R = 16.99;
    sys.branches.push_back({[](cplx z) { return z / (11.0 + z); },
                            [](cplx z) {
                                const cplx d = 11.0 + z;
                                return 11.0 / (d * d);
                            }});
    for (int i = 1; i <= 11; ++i) {
        sys.branches.push_back({[i](cplx z) { return (z + static_cast<double>(i)) / 12.0; },
                                [](cplx) { return cplx{1.0 / 12.0, 0.0}; }});
    }
    return sys;
}

inline std::vector<MapFn> full_branch_interval_maps() {
    std::vector<MapFn> maps;
    for (const MapWeightBranch& b : full_branch_interval_system().branches) maps.push_back(b.map);
    return maps;
}

/// Sine-pair IFS on [0,1] with probabilities (1/3, 2/3); Lyapunov exponent
/// ~ 1.7367208147373198 at n = 100.
inline IfsProblem sine_pair_ifs() {
    IfsProblem p;
    p.foci = {cplx{0.0}, cplx{1.0}};
    p.R = 5.85;
    const double w = kPi / 4.0;
    p.maps.push_back({[w](cplx z) { return std::sin(w * z) / 6.0 + 0.25; },
                      [w](cplx z) { return (w / 6.0) * std::cos(w * z); }});
    p.maps.push_back({[w](cplx z) { return std::sin(w * z) / 3.0 + 2.0 / 3.0; },
                      [w](cplx z) { return (w / 3.0) * std::cos(w * z); }});
    p.probs = {1.0 / 3.0, 2.0 / 3.0};
    return p;
}

inline std::vector<cplx> random_complex_vector(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> out(static_cast<size_t>(count));
    for (auto& v : out) v = cplx{dist(rng), dist(rng)};
    return out;
}

/// Greedy nearest matching between two equal-length multisets; returns the
/// largest matched distance (robust to noise-dependent orderings).
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (const cplx& x : a) {
        size_t best = 0;
        double best_dist = 1e300;
        for (size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(b[j] - x);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        worst = std::max(worst, best_dist);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

}  // namespace latop::testing
