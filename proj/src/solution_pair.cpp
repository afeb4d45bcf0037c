#include "heatobs/solution_pair.hpp"

#include <algorithm>
#include <cmath>

#include "heatobs/error.hpp"

namespace heatobs {

Field SolutionPair::source(std::size_t k) const {
    require(k < phi.size(), ErrorKind::IndexOutOfRange, "snapshot index out of range");
    const Field& a = y1.fields[k];
    const Field& b = y2.fields[k];
    const auto& f = phi.fspec;
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(a[i]) - f(b[i]);
    return Field(a.spec(), std::move(v), a.time());
}

SolutionPair make_pair(Trajectory y1, Trajectory y2) {
    require(y1.spec == y2.spec, ErrorKind::GridMismatch, "pair trajectories live on different grids");
    require(y1.fspec == y2.fspec, ErrorKind::InvalidParameter, "pair trajectories use different nonlinearities");
    require(y1.size() == y2.size() && !y1.fields.empty(), ErrorKind::InvalidParameter,
            "pair trajectories differ in length");
    for (std::size_t k = 0; k < y1.size(); ++k)
        require(std::abs(y1.times[k] - y2.times[k]) <= 1e-12 * std::max(1.0, y1.times[k]),
                ErrorKind::InvalidParameter, "pair trajectories use different time grids");

    SolutionPair pair;
    pair.phi = Trajectory{y1.spec, y1.times, {}, y1.fspec, y1.dt, y1.stride};
    pair.phi.fields.reserve(y1.size());
    for (std::size_t k = 0; k < y1.size(); ++k)
        pair.phi.fields.push_back((y1.fields[k] - y2.fields[k]).with_time(y1.times[k]));
    pair.M = std::max(sup_norm_bound(y1), sup_norm_bound(y2));
    pair.L_M = lipschitz_on_ball(y1.fspec, pair.M);
    pair.y1 = std::move(y1);
    pair.y2 = std::move(y2);
    return pair;
}

SolutionPair solve_pair(const Field& y1_0, const Field& y2_0, const NonlinearitySpec& f, double T, double dt,
                        std::size_t stride, const SolverOptions& opt) {
    return make_pair(solve_semilinear(y1_0, f, T, dt, stride, opt), solve_semilinear(y2_0, f, T, dt, stride, opt));
}

}  // namespace heatobs
