#pragma once

#include "heatobs/dynamics.hpp"

namespace heatobs {

// Two solutions on a shared grid, nonlinearity and time grid, with their
// difference phi = y1 - y2.
struct SolutionPair {
    Trajectory y1;
    Trajectory y2;
    Trajectory phi;
    double M = 0.0;    // max of the two sup-norm bounds
    double L_M = 0.0;  // Lipschitz constant of f on [-M, M]

    const std::vector<double>& times() const noexcept { return phi.times; }
    double T() const { return phi.final_time(); }
    // F = f(y1) - f(y2) at snapshot k
    Field source(std::size_t k) const;
};

SolutionPair make_pair(Trajectory y1, Trajectory y2);

// Solves from both initial fields with the same settings.
SolutionPair solve_pair(const Field& y1_0, const Field& y2_0, const NonlinearitySpec& f, double T, double dt,
                        std::size_t stride = 1, const SolverOptions& opt = {});

}  // namespace heatobs
