#include "heatobs/ensemble.hpp"

#include <cmath>
#include <exception>

#include "heatobs/error.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/random.hpp"

namespace heatobs {

namespace {

Field gaussian_member(const GridSpec& spec, const EnsembleConfig& cfg, Rng& rng) {
    Field out = Field::zeros(spec);
    for (int g = 0; g < 2; ++g) {
        Point c{0.0, 0.0, 0.0};
        for (int a = 0; a < spec.n; ++a) c[static_cast<std::size_t>(a)] = rng.uniform(-spec.X / 4, spec.X / 4);
        const double amp = rng.uniform(cfg.amp_min, cfg.amp_max) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        const double s = rng.uniform(cfg.width, 2 * cfg.width);
        out = out + init::gaussian(spec, c, amp, s);
    }
    return out;
}

Field band_member(const GridSpec& spec, const EnsembleConfig& cfg, Rng& rng) {
    const Field base = init::band_limited(spec, 8, rng);
    const Field env = init::gaussian(spec, Point{0.0, 0.0, 0.0}, 1.0, cfg.width);
    Field f = hadamard(base, env);
    const double sup = lp_norm(f, INFINITY);
    require(sup > 0.0, ErrorKind::ZeroInitialData, "band-limited ensemble member vanished");
    return (rng.uniform(cfg.amp_min, cfg.amp_max) / sup) * f;
}

}  // namespace

InitialPair ensemble_member(const GridSpec& spec, const EnsembleConfig& cfg, std::size_t index) {
    require(cfg.amp_min > 0.0 && cfg.amp_max >= cfg.amp_min, ErrorKind::InvalidParameter,
            "ensemble amplitude range must satisfy 0 < amp_min <= amp_max");
    require(cfg.width > 0.0, ErrorKind::InvalidParameter, "ensemble width must be positive");
    Rng rng(Rng::derive(cfg.seed, index));
    if (cfg.family == "gaussian") {
        Field y1 = gaussian_member(spec, cfg, rng);
        Field y2 = gaussian_member(spec, cfg, rng);
        return {std::move(y1), std::move(y2)};
    }
    if (cfg.family == "band_limited") {
        Field y1 = band_member(spec, cfg, rng);
        Field y2 = band_member(spec, cfg, rng);
        return {std::move(y1), std::move(y2)};
    }
    fail(ErrorKind::InvalidParameter, "unknown ensemble family '" + cfg.family + "'");
}

std::vector<SolutionPair> solve_ensemble(const GridSpec& spec, const EnsembleConfig& cfg, const NonlinearitySpec& f,
                                         double T, double dt, std::size_t stride, const SolverOptions& opt,
                                         std::size_t first, std::size_t count) {
    if (count == 0) count = cfg.count;
    std::vector<SolutionPair> out(count);
    std::vector<std::exception_ptr> errors(count);
    const auto nc = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nc; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            const InitialPair init = ensemble_member(spec, cfg, first + k);
            out[k] = solve_pair(init.y1, init.y2, f, T, dt, stride, opt);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace heatobs
