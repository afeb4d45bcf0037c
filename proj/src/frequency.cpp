#include "heatobs/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "heatobs/error.hpp"

namespace heatobs {

namespace {

// Derivative at `at` of the quadratic through (x[i], f[i]).
double lagrange3_derivative(const double* x, const double* f, double at) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
        double dl = 0.0;
        for (int k = 0; k < 3; ++k) {
            if (k == i) continue;
            double term = 1.0 / (x[i] - x[k]);
            for (int l = 0; l < 3; ++l)
                if (l != i && l != k) term *= (at - x[l]) / (x[i] - x[l]);
            dl += term;
        }
        d += f[i] * dl;
    }
    return d;
}

// Derivative at every sample; interior points use the centred stencil,
// endpoints the one-sided second-order stencil.
std::vector<double> sampled_derivative(const std::vector<double>& t, const std::vector<double>& f) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k == 0 ? 0 : (k == n - 1 ? n - 3 : k - 1);
        d[k] = lagrange3_derivative(&t[lo], &f[lo], t[k]);
    }
    return d;
}

std::size_t snapshot_index(const std::vector<double>& times, double t) {
    require(!times.empty(), ErrorKind::InvalidParameter, "empty trajectory");
    const double spacing = times.size() > 1 ? times[1] - times[0] : 1.0;
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= 1e-6 * spacing) return k;
    fail(ErrorKind::InvalidParameter, "no snapshot at t=" + std::to_string(t));
}

struct Localized {
    Field phij;                 // eta * phi
    std::vector<Field> grad;    // grad(eta * phi)
    std::vector<Field> grad_phi;
};

Localized localize(const Field& phi, const CutoffFamily& eta) {
    const GridSpec& spec = phi.spec();
    Localized out;
    out.grad_phi = gradient(phi);
    out.phij = hadamard(eta.value, phi);
    for (int a = 0; a < spec.n; ++a) {
        const auto ax = static_cast<std::size_t>(a);
        out.grad.push_back(hadamard(eta.value, out.grad_phi[ax]) + hadamard(phi, eta.grad[ax]));
    }
    return out;
}

// H_j = -2 grad phi . grad eta - phi Lap eta
Field cutoff_source(const Field& phi, const std::vector<Field>& grad_phi, const CutoffFamily& eta) {
    Field h = -1.0 * hadamard(phi, eta.lap);
    for (std::size_t a = 0; a < grad_phi.size(); ++a) h = h - 2.0 * hadamard(grad_phi[a], eta.grad[a]);
    return h;
}

// Lap(eta phi) by the product rule with the analytic cutoff derivatives.
Field localized_laplacian(const Field& phi, const std::vector<Field>& grad_phi, const CutoffFamily& eta) {
    return hadamard(eta.value, laplacian(phi)) - cutoff_source(phi, grad_phi, eta);
}

void require_trace_grid(const FrequencyTrace& trace, const SolutionPair& pair) {
    require(std::abs(trace.T - pair.T()) <= 1e-9 * std::max(1.0, pair.T()), ErrorKind::InvalidParameter,
            "trace terminal time differs from the pair's");
}

}  // namespace

FrequencySample frequency_sample(const Field& phi, const CutoffFamily& eta, double h, double T, double t) {
    require_same_grid(phi, eta.value);
    const Field G = gaussian_weight(phi.spec(), eta.center, h, t, T);
    const Localized loc = localize(phi, eta);
    FrequencySample s;
    s.t = t;
    s.den = weighted_l2(loc.phij, G);
    require(s.den > 0.0, ErrorKind::ZeroDenominator, "eta*phi vanishes at t=" + std::to_string(t));
    s.num = weighted_dirichlet(loc.grad, G);
    s.N = s.num / s.den;
    return s;
}

double frequency(const Field& phi, const CutoffFamily& eta, double h, double T, double t) {
    return frequency_sample(phi, eta, h, T, t).N;
}

FrequencyTrace frequency_trace(const Trajectory& phi, const ObservationRegion& region, std::size_t j, double h,
                               double t_lo) {
    require(h > 0.0, ErrorKind::InvalidParameter, "weight offset h must be positive");
    require(phi.spec == region.spec, ErrorKind::GridMismatch, "trajectory and region use different grids");
    const CutoffFamily eta = make_cutoff(region, j, CutoffKind::eta);
    FrequencyTrace trace;
    trace.j = j;
    trace.h = h;
    trace.T = phi.final_time();
    std::vector<std::size_t> picked;
    for (std::size_t k = 0; k < phi.size(); ++k)
        if (phi.times[k] >= t_lo - 1e-12 * std::max(1.0, std::abs(t_lo)) && phi.times[k] > 0.0) picked.push_back(k);
    require(!picked.empty(), ErrorKind::EmptyWindow, "no snapshots in [" + std::to_string(t_lo) + ", T]");

    std::vector<std::optional<FrequencySample>> samples(picked.size());
    const auto count = static_cast<std::ptrdiff_t>(picked.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const std::size_t k = picked[static_cast<std::size_t>(i)];
        const Field G = gaussian_weight(phi.spec, eta.center, h, phi.times[k], trace.T);
        const Localized loc = localize(phi.fields[k], eta);
        const double den = weighted_l2(loc.phij, G);
        if (den > 0.0) {
            const double num = weighted_dirichlet(loc.grad, G);
            samples[static_cast<std::size_t>(i)] = FrequencySample{phi.times[k], num / den, num, den};
        }
    }
    for (const auto& s : samples) {
        if (!s) continue;
        trace.times.push_back(s->t);
        trace.N.push_back(s->N);
        trace.num.push_back(s->num);
        trace.den.push_back(s->den);
    }
    return trace;
}

std::string to_csv(const FrequencyTrace& trace) {
    std::ostringstream os;
    os.precision(17);
    os << "t,N,num,den,j,h,T\n";
    for (std::size_t k = 0; k < trace.size(); ++k)
        os << trace.times[k] << ',' << trace.N[k] << ',' << trace.num[k] << ',' << trace.den[k] << ',' << trace.j
           << ',' << trace.h << ',' << trace.T << '\n';
    return os.str();
}

EstimateReport variational_identity_check(const Trajectory& phi, const ObservationRegion& region, std::size_t j,
                                          double h, double t, double tol) {
    require(h > 0.0, ErrorKind::InvalidParameter, "weight offset h must be positive");
    require(phi.spec == region.spec, ErrorKind::GridMismatch, "trajectory and region use different grids");
    const std::size_t k = snapshot_index(phi.times, t);
    require(k > 0 && k + 1 < phi.size(), ErrorKind::BoundarySample,
            "identity check needs snapshots on both sides of t=" + std::to_string(t));
    const CutoffFamily eta = make_cutoff(region, j, CutoffKind::eta);
    const double T = phi.final_time();

    double mass[3];
    for (int s = 0; s < 3; ++s) {
        const std::size_t kk = k - 1 + static_cast<std::size_t>(s);
        const Field G = gaussian_weight(phi.spec, eta.center, h, phi.times[kk], T);
        mass[s] = weighted_l2(hadamard(eta.value, phi.fields[kk]), G);
    }
    require(mass[1] > 0.0, ErrorKind::ZeroDenominator, "eta*phi vanishes at t=" + std::to_string(t));
    const double* tt = &phi.times[k - 1];
    const double half_dm = 0.5 * lagrange3_derivative(tt, mass, tt[1]);

    const Field& f0 = phi.fields[k];
    const Field G = gaussian_weight(phi.spec, eta.center, h, tt[1], T);
    const Localized loc = localize(f0, eta);
    const double num = weighted_dirichlet(loc.grad, G);
    const double N = num / mass[1];

    // centred difference in time, field by field
    const double a = tt[1] - tt[0], b = tt[2] - tt[1];
    const Field dphi = (-b / (a * (a + b))) * phi.fields[k - 1] + ((b - a) / (a * b)) * f0 +
                       (a / (b * (a + b))) * phi.fields[k + 1];
    const Field op = hadamard(eta.value, dphi) - localized_laplacian(f0, loc.grad_phi, eta);
    const double rhs = weighted_inner(loc.phij, op, G);
    const double lhs = half_dm + num;
    const double scale = std::abs(half_dm) + std::abs(num) + std::abs(rhs);
    const double residual = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;

    EstimateReport r;
    r.kind = "lemma_2_4_i";
    r.lhs = lhs;
    r.factor("rhs", rhs).factor("half_mass_derivative", half_dm).factor("N", N).factor("mass", mass[1]);
    r.factor("residual", residual);
    r.pass = residual < tol;
    r.meta = Json{{"t", tt[1]}, {"j", j}, {"h", h}, {"T", T}, {"dt_left", a}, {"dt_right", b}, {"tol", tol}};
    return r;
}

EstimateReport frequency_derivative_check(const FrequencyTrace& trace, const SolutionPair& pair,
                                          const ObservationRegion& region, double slack) {
    require(trace.size() >= 3, ErrorKind::InsufficientSamples, "need at least three consecutive trace samples");
    require(pair.phi.spec == region.spec, ErrorKind::GridMismatch, "pair and region use different grids");
    require_trace_grid(trace, pair);
    const CutoffFamily eta = make_cutoff(region, trace.j, CutoffKind::eta);
    const std::size_t n = trace.size();
    const double T = trace.T;

    // local |N'''| from the four-point stencils around each sample
    std::vector<double> third(n, 0.0);
    for (std::size_t k = 1; k + 2 < n; ++k) {
        const double d = (trace.times[k + 2] - trace.times[k - 1]) / 3.0;
        third[k] = std::abs(trace.N[k + 2] - 3.0 * trace.N[k + 1] + 3.0 * trace.N[k] - trace.N[k - 1]) / (d * d * d);
    }

    std::vector<double> ts, dN, rhs, allowance;
    std::size_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_k = 1;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double* tt = &trace.times[k - 1];
        const double d = lagrange3_derivative(tt, &trace.N[k - 1], tt[1]);
        const std::size_t idx = snapshot_index(pair.times(), tt[1]);
        const Field& phi = pair.phi.fields[idx];
        const Field G = gaussian_weight(phi.spec(), eta.center, trace.h, tt[1], T);
        const Localized loc = localize(phi, eta);
        const double den = weighted_l2(loc.phij, G);
        require(den > 0.0, ErrorKind::ZeroDenominator, "eta*phi vanishes at t=" + std::to_string(tt[1]));
        const Field src = cutoff_source(phi, loc.grad_phi, eta) - hadamard(eta.value, pair.source(idx));
        const double bound = trace.N[k] / (T - tt[1] + trace.h) + weighted_l2(src, G) / den;
        double n3 = 0.0;
        int used = 0;
        if (k + 2 < n) n3 += third[k], ++used;
        if (k >= 2) n3 += third[k - 1], ++used;
        const double h = 0.5 * (tt[2] - tt[0]);
        const double allow = used > 0 ? h * h * (n3 / used) / 6.0 : 0.0;
        const double margin = d - (bound * (1.0 + slack) + allow);
        if (margin > 0.0) ++violations;
        if (margin > worst) worst = margin, worst_k = ts.size();
        ts.push_back(tt[1]);
        dN.push_back(d);
        rhs.push_back(bound);
        allowance.push_back(allow);
    }

    EstimateReport r;
    r.kind = "lemma_2_4_ii";
    r.lhs = dN[worst_k];
    r.factor("rhs", rhs[worst_k])
        .factor("allowance", allowance[worst_k])
        .factor("t", ts[worst_k])
        .factor("worst_margin", worst)
        .factor("violations", static_cast<double>(violations))
        .factor("samples", static_cast<double>(ts.size()));
    r.pass = violations == 0;
    r.meta = Json{{"j", trace.j}, {"h", trace.h}, {"T", T}, {"slack", slack}, {"L_M", pair.L_M},
                  {"fspec", to_string(pair.phi.fspec.kind)}, {"t", ts}, {"dN", dN}, {"rhs", rhs}};
    return r;
}

ConvexityParams estimate_convexity_params(const FrequencyTrace& trace, double inflate) {
    require(trace.size() >= 3, ErrorKind::InsufficientSamples, "need at least three trace samples");
    require(inflate >= 1.0, ErrorKind::InvalidParameter, "inflation factor must be >= 1");
    const auto dg = sampled_derivative(trace.times, trace.den);
    const auto dN = sampled_derivative(trace.times, trace.N);
    double ct = 0.0, cb = 0.0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        ct = std::max(ct, std::abs(0.5 * dg[k] + trace.num[k]) / trace.den[k]);
        cb = std::max(cb, dN[k] - trace.N[k] / (trace.T - trace.times[k] + trace.h));
    }
    return ConvexityParams{trace.T, trace.h, inflate * ct, inflate * cb};
}

}  // namespace heatobs
