#include "heatobs/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "heatobs/error.hpp"
#include "heatobs/kernels.hpp"

namespace heatobs::spectral {

namespace {

struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

struct Tables {
    std::vector<double> xi2;
    std::vector<double> weight;
};

// Planning is not thread-safe in FFTW; execution through the new-array
// interface is. Plans are created once per (n, m) under this lock and then
// only read. FFTW_UNALIGNED lets plain std::vector storage be used and keeps
// the chosen codelets independent of allocation alignment.
std::mutex& plan_mutex() {
    static std::mutex mu;
    return mu;
}

const Plans& plans_for(int n, std::size_t m) {
    static std::map<std::pair<int, std::size_t>, Plans> cache;
    std::lock_guard lock(plan_mutex());
    auto key = std::make_pair(n, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<int> dims(static_cast<std::size_t>(n), static_cast<int>(m));
    std::size_t real_size = 1;
    for (int d = 0; d < n; ++d) real_size *= m;
    const std::size_t half = real_size / m * (m / 2 + 1);
    std::vector<double> in(real_size);
    std::vector<std::complex<double>> out(half);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p;
    p.r2c = fftw_plan_dft_r2c(n, dims.data(), in.data(), reinterpret_cast<fftw_complex*>(out.data()), flags);
    p.c2r = fftw_plan_dft_c2r(n, dims.data(), reinterpret_cast<fftw_complex*>(out.data()), in.data(), flags);
    if (!p.r2c || !p.c2r) fail(ErrorKind::InvalidParameter, "FFTW could not plan the transform");
    return cache.emplace(key, p).first->second;
}

const Tables& tables_for(const GridSpec& spec) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::size_t, double>, std::unique_ptr<Tables>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(spec.n, spec.m, spec.X);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto t = std::make_unique<Tables>();
    const std::size_t hs = half_size(spec);
    const std::size_t h = spec.m / 2 + 1;
    const double unit = std::numbers::pi / spec.X;
    t->xi2.resize(hs);
    t->weight.resize(hs);
    for (std::size_t mode = 0; mode < hs; ++mode) {
        std::size_t rest = mode;
        const std::size_t k_last = rest % h;
        rest /= h;
        double xi2 = 0.0;
        {
            const double w = unit * static_cast<double>(k_last);
            xi2 += w * w;
        }
        for (int a = 0; a < spec.n - 1; ++a) {
            const std::size_t k = rest % spec.m;
            rest /= spec.m;
            const double signed_k = k <= spec.m / 2 ? static_cast<double>(k)
                                                    : static_cast<double>(k) - static_cast<double>(spec.m);
            const double w = unit * signed_k;
            xi2 += w * w;
        }
        t->xi2[mode] = xi2;
        t->weight[mode] = (k_last == 0 || k_last == spec.m / 2) ? 1.0 : 2.0;
    }
    return *cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

std::size_t half_size(const GridSpec& spec) noexcept { return spec.size() / spec.m * (spec.m / 2 + 1); }

Spectrum forward(const Field& f) {
    const GridSpec& spec = f.spec();
    const Plans& p = plans_for(spec.n, spec.m);
    std::vector<double> in(f.values().begin(), f.values().end());
    Spectrum s{spec, std::vector<std::complex<double>>(half_size(spec))};
    fftw_execute_dft_r2c(p.r2c, in.data(), reinterpret_cast<fftw_complex*>(s.coeffs.data()));
    const double norm = 1.0 / static_cast<double>(spec.size());
    std::vector<double> scale(s.coeffs.size(), norm);
    kernels::omp::scale_modes(s.coeffs, scale);
    return s;
}

std::vector<double> inverse_values(const Spectrum& s) {
    const Plans& p = plans_for(s.spec.n, s.spec.m);
    // c2r overwrites its input
    std::vector<std::complex<double>> work = s.coeffs;
    std::vector<double> out(s.spec.size());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(work.data()), out.data());
    return out;
}

Field inverse(const Spectrum& s, std::optional<double> time) { return Field(s.spec, inverse_values(s), time); }

std::span<const double> xi_squared(const GridSpec& spec) { return tables_for(spec).xi2; }

std::span<const double> parseval_weight(const GridSpec& spec) { return tables_for(spec).weight; }

double xi_component(const GridSpec& spec, std::size_t mode, int axis) noexcept {
    const std::size_t h = spec.m / 2 + 1;
    const double unit = std::numbers::pi / spec.X;
    const std::size_t k_last = mode % h;
    if (axis == spec.n - 1) {
        if (k_last == spec.m / 2) return 0.0;
        return unit * static_cast<double>(k_last);
    }
    std::size_t rest = mode / h;
    // axes are peeled from n-2 down to 0
    for (int a = spec.n - 2; a > axis; --a) rest /= spec.m;
    const std::size_t k = rest % spec.m;
    if (k == spec.m / 2) return 0.0;
    const double signed_k = k < spec.m / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(spec.m);
    return unit * signed_k;
}

Field apply_multiplier_table(const Field& f, std::span<const double> mult, std::optional<double> time) {
    Spectrum s = forward(f);
    kernels::omp::scale_modes(s.coeffs, mult);
    return inverse(s, time);
}

}  // namespace heatobs::spectral
