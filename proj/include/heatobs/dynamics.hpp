#pragma once

// Semilinear heat flow y_t - Lap y + f(y) = 0 and the linear potential flow
// u_t - Lap u + a u = 0 on the periodic box.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatobs/grid.hpp"
#include "heatobs/report.hpp"

namespace heatobs {

enum class NonlinearityKind { zero, power_odd, bounded_lipschitz };

std::string to_string(NonlinearityKind k);
NonlinearityKind nonlinearity_kind_from_string(const std::string& s);

// zero: f = 0; power_odd: f(y) = lambda |y|^{p-1} y; bounded_lipschitz: f(y) = lambda sin(y).
// Every kind has f(0) = 0.
struct NonlinearitySpec {
    NonlinearityKind kind = NonlinearityKind::zero;
    double lambda = 0.0;
    double p = 3.0;

    double operator()(double y) const noexcept;
    double derivative(double y) const noexcept;

    friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;
};

void validate(const NonlinearitySpec& f);

// Throws ExponentOutOfRange unless power_odd nonlinearities have p < 1 + 4/n.
void require_subcritical_exponent(const NonlinearitySpec& f, int n);

// sup_{|s| <= M} |f'(s)|.
double lipschitz_on_ball(const NonlinearitySpec& f, double M);

struct Trajectory {
    GridSpec spec;
    std::vector<double> times;
    std::vector<Field> fields;
    NonlinearitySpec fspec;
    double dt = 0.0;         // integrator step
    std::size_t stride = 1;  // steps between stored snapshots

    double snapshot_interval() const noexcept { return dt * static_cast<double>(stride); }
    double final_time() const { return times.back(); }
    std::size_t size() const noexcept { return fields.size(); }
};

// Max over stored snapshots of the sup norm.
double sup_norm_bound(const Trajectory& traj);

struct SolverOptions {
    double blowup_threshold = 1e8;
    int ode_substeps = 2;  // RK4 substeps per reaction step when no closed form is used
};

// Strang splitting: half-step exact diffusion, reaction flow of y' = -f(y)
// over dt, half-step diffusion. T must be a multiple of stride*dt (within
// 1e-9 relative). Raises BlowUp above the sup threshold, NonFinite on NaN/Inf.
Trajectory solve_semilinear(const Field& y0, const NonlinearitySpec& f, double T, double dt,
                            std::size_t stride = 1, const SolverOptions& opt = {});

// One Strang step; exposed for benchmarking and tests.
Field strang_step(const Field& y, const NonlinearitySpec& f, double dt, const SolverOptions& opt = {});

// Pointwise reaction flow y' = -f(y) over dt.
Field reaction_flow(const Field& y, const NonlinearitySpec& f, double dt, const SolverOptions& opt = {});

struct PicardResult {
    Field field;       // fixed point at t = Tstar
    std::size_t sweeps = 0;
    double distance = 0.0;  // last sup-in-time L^inf update size
};

// Fixed point of the Duhamel map Lambda(xi)(t) = e^{tL} y0 - int_0^t e^{(t-s)L} f(xi(s)) ds
// on n_quad uniform subintervals of [0, Tstar] with trapezoid weights.
// Raises NoContraction when the update size fails to decrease for 5
// consecutive sweeps or the iterates diverge.
PicardResult picard_solve(const Field& y0, const NonlinearitySpec& f, double Tstar, std::size_t n_quad, double tol,
                          std::size_t max_sweeps = 500);

// Potential a(x, t) sampled at increasing times, linearly interpolated in t
// (held constant outside the sampled range).
struct Potential {
    std::vector<double> times;
    std::vector<Field> fields;

    static Potential constant(Field a);
    static Potential from_trajectory(const Trajectory& traj);
    Field at(double t) const;
    // sup over samples of ||a(t)||_sigma
    double sup_norm(double sigma) const;
};

// Strang splitting with the exact reaction flow u -> u exp(-a dt), a taken at
// the step midpoint.
Trajectory solve_linear_potential(const Field& u0, const Potential& a, double T, double dt,
                                  std::size_t stride = 1, const SolverOptions& opt = {});

struct SmoothingOptions {
    // Pass requires the log-log slope of t^{n/(2q)} ||y(t)||_inf over the
    // smallest decade of sampled t to be >= this value.
    double min_slope = -0.05;
    // Window for the reported slope of log ||y(t)||_inf against log t.
    std::optional<std::pair<double, double>> exponent_window;
};

// Trace t -> t^{n/(2q)} ||y(t)||_inf / ||y0||_q; kind eq_3_5.
EstimateReport smoothing_check(const Trajectory& traj, double q, const SmoothingOptions& opt = {});

// Trace t -> ||u(t)||_inf t^{n/(2 gamma)} / (exp(L^theta t) ||u0||_gamma) with
// L = sup_t ||a(t)||_sigma, theta = 2 sigma / (2 sigma - n); kind eq_2_3a.
EstimateReport potential_smoothing_check(const Trajectory& traj, const Potential& a, double sigma, double gamma,
                                         const SmoothingOptions& opt = {});

double smoothing_theta(double sigma, int n);

// Directory of snapshot files plus manifest.txt (key=value lines).
void write_trajectory(const Trajectory& traj, const std::string& dir);
Trajectory read_trajectory(const std::string& dir);

}  // namespace heatobs
