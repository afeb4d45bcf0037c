#pragma once

// Seeded ensembles of initial-data pairs and their solved difference pairs.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "heatobs/grid.hpp"
#include "heatobs/solution_pair.hpp"

namespace heatobs {

struct EnsembleConfig {
    std::size_t count = 20;
    std::string family = "gaussian";  // gaussian | band_limited
    double amp_min = 0.2;
    double amp_max = 1.0;
    double width = 0.1;  // Gaussian scale s, or envelope scale for band_limited
    std::uint64_t seed = 1;
};

struct InitialPair {
    Field y1;
    Field y2;
};

// gaussian: each field is a sum of two Gaussians with centres uniform in
// [-X/4, X/4]^n, amplitudes uniform in [amp_min, amp_max] with random sign and
// scales in [width, 2 width]. band_limited: a unit band-limited field (|k| <= 8)
// times a Gaussian envelope of scale width, rescaled to an amplitude drawn
// from the range. Member `index` depends only on (seed, index).
InitialPair ensemble_member(const GridSpec& spec, const EnsembleConfig& cfg, std::size_t index);

// Members [first, first + count) solved in parallel, returned in index order.
std::vector<SolutionPair> solve_ensemble(const GridSpec& spec, const EnsembleConfig& cfg, const NonlinearitySpec& f,
                                         double T, double dt, std::size_t stride, const SolverOptions& opt = {},
                                         std::size_t first = 0, std::size_t count = 0);

}  // namespace heatobs
