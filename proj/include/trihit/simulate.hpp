#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trihit/body.hpp"
#include "trihit/lattice.hpp"

namespace trihit {

struct ThrowSample {
    double x = 0, y = 0, phi = 0;
    int hits = 0;
};

struct SimReport {
    uint64_t n = 0;
    uint64_t seed = 0;
    std::vector<uint64_t> counts;  // counts[i] = throws with exactly i+1 hits
    std::vector<double> p_hat;     // counts / n
    std::vector<double> std_err;   // sqrt(p(1-p)/n)
    double elapsed_seconds = 0;

    double p(int hits) const {
        return hits >= 1 && hits <= static_cast<int>(p_hat.size()) ? p_hat[hits - 1] : 0.0;
    }
};

// squared-distance GJK on the Minkowski difference body - triangle; tangency
// within eps counts as intersection
bool intersects(const PlacedBody& placed, const std::array<Vec2, 3>& tri, double eps);

// number of lattice triangles the body placed at (sample.x, sample.y) with
// rotation sample.phi meets
int count_hits(const ConvexBody& body, const TriangleLattice& lat, const ThrowSample& sample);

// deterministic throw for a given (seed, index): position uniform over the
// fundamental parallelogram, angle uniform over [0, 2 pi)
ThrowSample draw_throw(const TriangleLattice& lat, uint64_t seed, uint64_t index);

// workers = 0 picks hardware concurrency; results are identical for any count
SimReport run_simulation(const ConvexBody& body, const TriangleLattice& lat, uint64_t n,
                         uint64_t seed, unsigned workers = 0);

}  // namespace trihit
