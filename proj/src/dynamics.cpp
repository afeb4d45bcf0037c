#include "heatobs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "heatobs/error.hpp"
#include "heatobs/kernels.hpp"
#include "heatobs/semigroup.hpp"
#include "heatobs/spectral.hpp"

namespace heatobs {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::size_t step_count(double T, double dt, std::size_t stride) {
    require(T > 0.0 && std::isfinite(T), ErrorKind::InvalidParameter, "final time must be positive");
    require(dt > 0.0 && dt <= T * (1.0 + 1e-12), ErrorKind::InvalidParameter, "step must satisfy 0 < dt <= T");
    require(stride >= 1, ErrorKind::InvalidParameter, "snapshot stride must be >= 1");
    const double ratio = T / dt;
    const auto steps = static_cast<std::size_t>(std::llround(ratio));
    require(std::abs(ratio - static_cast<double>(steps)) <= 1e-9 * ratio, ErrorKind::InvalidParameter,
            "T must be an integer multiple of dt");
    require(steps % stride == 0, ErrorKind::InvalidParameter, "step count must be a multiple of the snapshot stride");
    return steps;
}

void check_state(std::span<const double> v, double threshold, double t) {
    const double top = kernels::omp::max_abs(v);
    require(std::isfinite(top), ErrorKind::NonFinite, "solution became non-finite at t=" + num(t));
    require(top <= threshold, ErrorKind::BlowUp,
            "sup norm " + num(top) + " exceeded threshold at t=" + num(t));
}

std::vector<double> diffusion_multiplier(const GridSpec& spec, double t) {
    const auto xi2 = spectral::xi_squared(spec);
    std::vector<double> mult(xi2.size());
    for (std::size_t k = 0; k < xi2.size(); ++k) mult[k] = std::exp(-xi2[k] * t);
    return mult;
}

std::vector<double> diffuse(const GridSpec& spec, std::vector<double> v, std::span<const double> mult) {
    auto s = spectral::forward(Field(spec, std::move(v)));
    kernels::omp::scale_modes(s.coeffs, mult);
    return spectral::inverse_values(s);
}

double rk4_flow(const NonlinearitySpec& f, double y, double dt, int substeps) {
    const double h = dt / substeps;
    for (int k = 0; k < substeps; ++k) {
        const double k1 = -f(y);
        const double k2 = -f(y + 0.5 * h * k1);
        const double k3 = -f(y + 0.5 * h * k2);
        const double k4 = -f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

void reaction_inplace(std::vector<double>& v, const NonlinearitySpec& f, double dt, const SolverOptions& opt) {
    std::span<const double> in(v);
    std::span<double> out(v);
    switch (f.kind) {
    case NonlinearityKind::zero: return;
    case NonlinearityKind::power_odd:
        if (f.lambda > 0.0) {
            const double pm1 = f.p - 1.0;
            const double c = pm1 * f.lambda * dt;
            kernels::omp::transform(in, out, [=](double y) {
                return y * std::pow(1.0 + c * std::pow(std::abs(y), pm1), -1.0 / pm1);
            });
            return;
        }
        break;
    case NonlinearityKind::bounded_lipschitz: break;
    }
    const int sub = std::max(1, opt.ode_substeps);
    kernels::omp::transform(in, out, [&f, dt, sub](double y) { return rk4_flow(f, y, dt, sub); });
}

}  // namespace

double sup_norm_bound(const Trajectory& traj) {
    require(!traj.fields.empty(), ErrorKind::InvalidParameter, "empty trajectory");
    double m = 0.0;
    for (const Field& f : traj.fields) m = std::max(m, lp_norm(f, std::numeric_limits<double>::infinity()));
    return m;
}

Field reaction_flow(const Field& y, const NonlinearitySpec& f, double dt, const SolverOptions& opt) {
    std::vector<double> v(y.values().begin(), y.values().end());
    reaction_inplace(v, f, dt, opt);
    return Field(y.spec(), std::move(v), y.time());
}

Field strang_step(const Field& y, const NonlinearitySpec& f, double dt, const SolverOptions& opt) {
    const auto half = diffusion_multiplier(y.spec(), 0.5 * dt);
    std::vector<double> v = diffuse(y.spec(), std::vector<double>(y.values().begin(), y.values().end()), half);
    reaction_inplace(v, f, dt, opt);
    v = diffuse(y.spec(), std::move(v), half);
    std::optional<double> t = y.time();
    if (t) *t += dt;
    return Field(y.spec(), std::move(v), t);
}

Trajectory solve_semilinear(const Field& y0, const NonlinearitySpec& f, double T, double dt, std::size_t stride,
                            const SolverOptions& opt) {
    validate(f);
    const std::size_t steps = step_count(T, dt, stride);
    const GridSpec& spec = y0.spec();
    Trajectory traj{spec, {}, {}, f, dt, stride};
    traj.times.push_back(0.0);
    traj.fields.push_back(y0.with_time(0.0));
    check_state(y0.values(), opt.blowup_threshold, 0.0);

    if (f.kind == NonlinearityKind::zero) {
        // splitting is exact; propagate every snapshot straight from y0
        for (std::size_t k = stride; k <= steps; k += stride) {
            const double t = static_cast<double>(k) * dt;
            traj.times.push_back(t);
            traj.fields.push_back(heat_propagate(y0.with_time(0.0), t).with_time(t));
        }
        return traj;
    }

    const auto half = diffusion_multiplier(spec, 0.5 * dt);
    std::vector<double> v(y0.values().begin(), y0.values().end());
    for (std::size_t k = 1; k <= steps; ++k) {
        v = diffuse(spec, std::move(v), half);
        reaction_inplace(v, f, dt, opt);
        v = diffuse(spec, std::move(v), half);
        const double t = static_cast<double>(k) * dt;
        check_state(v, opt.blowup_threshold, t);
        if (k % stride == 0) {
            traj.times.push_back(t);
            traj.fields.emplace_back(spec, v, t);
        }
    }
    return traj;
}

PicardResult picard_solve(const Field& y0, const NonlinearitySpec& f, double Tstar, std::size_t n_quad, double tol,
                          std::size_t max_sweeps) {
    validate(f);
    require(Tstar > 0.0, ErrorKind::InvalidParameter, "Picard horizon must be positive");
    require(n_quad >= 1, ErrorKind::InvalidParameter, "need at least one quadrature interval");
    require(tol > 0.0, ErrorKind::InvalidParameter, "tolerance must be positive");

    const GridSpec& spec = y0.spec();
    const std::size_t nodes = n_quad + 1;
    const double h = Tstar / static_cast<double>(n_quad);
    const auto xi2 = spectral::xi_squared(spec);
    const std::size_t modes = xi2.size();

    // decay[j][mode] = exp(-|xi|^2 j h)
    std::vector<std::vector<double>> decay(nodes, std::vector<double>(modes));
    for (std::size_t j = 0; j < nodes; ++j)
        for (std::size_t k = 0; k < modes; ++k) decay[j][k] = std::exp(-xi2[k] * h * static_cast<double>(j));

    const auto y0_hat = spectral::forward(y0);
    std::vector<std::vector<double>> free_flow(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        auto s = y0_hat;
        kernels::omp::scale_modes(s.coeffs, decay[j]);
        free_flow[j] = spectral::inverse_values(s);
    }

    std::vector<std::vector<double>> iterate = free_flow;
    double previous = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
        std::vector<spectral::Spectrum> source(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            std::vector<double> fv(iterate[i].size());
            for (std::size_t p = 0; p < fv.size(); ++p) fv[p] = f(iterate[i][p]);
            source[i] = spectral::forward(Field(spec, std::move(fv)));
        }

        std::vector<std::vector<double>> next(nodes);
        double distance = 0.0;
        bool diverged = false;
        for (std::size_t k = 0; k < nodes; ++k) {
            spectral::Spectrum acc{spec, std::vector<std::complex<double>>(modes)};
            for (std::size_t i = 0; i <= k && k > 0; ++i) {
                const double w = (i == 0 || i == k) ? 0.5 * h : h;
                const auto& d = decay[k - i];
                const auto& src = source[i].coeffs;
                for (std::size_t mode = 0; mode < modes; ++mode) acc.coeffs[mode] += (w * d[mode]) * src[mode];
            }
            std::vector<double> duhamel = spectral::inverse_values(acc);
            std::vector<double> v(free_flow[k].size());
            for (std::size_t p = 0; p < v.size(); ++p) {
                v[p] = free_flow[k][p] - duhamel[p];
                if (!std::isfinite(v[p]) || std::abs(v[p]) > 1e150) diverged = true;
                distance = std::max(distance, std::abs(v[p] - iterate[k][p]));
            }
            next[k] = std::move(v);
        }
        if (diverged) {
            if (sweep == 1) fail(ErrorKind::NonFinite, "Duhamel map produced non-finite values");
            fail(ErrorKind::NoContraction, "Picard iterates diverged at sweep " + std::to_string(sweep));
        }
        iterate = std::move(next);
        if (distance < tol)
            return PicardResult{Field(spec, std::move(iterate.back()), Tstar), sweep, distance};
        stalled = distance >= previous ? stalled + 1 : 0;
        if (stalled >= 5)
            fail(ErrorKind::NoContraction,
                 "update size stopped decreasing for 5 sweeps (last " + num(distance) + ")");
        previous = distance;
    }
    fail(ErrorKind::NoContraction, "no convergence within " + std::to_string(max_sweeps) + " sweeps");
}

Potential Potential::constant(Field a) {
    Potential p;
    p.times.push_back(0.0);
    p.fields.push_back(std::move(a));
    return p;
}

Potential Potential::from_trajectory(const Trajectory& traj) { return Potential{traj.times, traj.fields}; }

Field Potential::at(double t) const {
    require(!fields.empty() && fields.size() == times.size(), ErrorKind::InvalidParameter, "empty potential");
    if (fields.size() == 1 || t <= times.front()) return fields.front();
    if (t >= times.back()) return fields.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - w) * fields[lo] + w * fields[hi];
}

double Potential::sup_norm(double sigma) const {
    double s = 0.0;
    for (const Field& a : fields) s = std::max(s, lp_norm(a, sigma));
    return s;
}

Trajectory solve_linear_potential(const Field& u0, const Potential& a, double T, double dt, std::size_t stride,
                                  const SolverOptions& opt) {
    const std::size_t steps = step_count(T, dt, stride);
    const GridSpec& spec = u0.spec();
    for (const Field& f : a.fields) require_same_grid(u0, f);
    Trajectory traj{spec, {}, {}, NonlinearitySpec{}, dt, stride};
    traj.times.push_back(0.0);
    traj.fields.push_back(u0.with_time(0.0));

    const auto half = diffusion_multiplier(spec, 0.5 * dt);
    std::vector<double> v(u0.values().begin(), u0.values().end());
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_mid = (static_cast<double>(k) - 0.5) * dt;
        const Field pot = a.at(t_mid);
        v = diffuse(spec, std::move(v), half);
        for (std::size_t p = 0; p < v.size(); ++p) v[p] *= std::exp(-pot[p] * dt);
        v = diffuse(spec, std::move(v), half);
        const double t = static_cast<double>(k) * dt;
        check_state(v, opt.blowup_threshold, t);
        if (k % stride == 0) {
            traj.times.push_back(t);
            traj.fields.emplace_back(spec, v, t);
        }
    }
    return traj;
}

}  // namespace heatobs
