// Times the serial reference kernels against the OpenMP versions and the
// solver step built on them. Usage: heatobs_bench [m] [reps]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "heatobs/dynamics.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/kernels.hpp"
#include "heatobs/random.hpp"

namespace {

template <class F>
double time_ms(int reps, F&& f) {
    volatile double sink = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) sink = sink + f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double omp_ms, double diff) {
    std::printf("%-18s %10.4f %10.4f %8.2fx  |diff| %.1e\n", name, serial_ms, omp_ms, serial_ms / omp_ms, diff);
}

}  // namespace

int main(int argc, char** argv) {
    namespace hk = heatobs::kernels;
    const std::size_t m = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1u << 20;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 20;

    heatobs::Rng rng(42);
    std::vector<double> a(m), b(m), w(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
        w[i] = rng.uniform();
    }

    std::printf("threads %d, length %zu, reps %d\n", omp_get_max_threads(), m, reps);
    std::printf("%-18s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");
    {
        double s = 0, o = 0;
        const double ts = time_ms(reps, [&] { return s = hk::serial::sum_sq(a); });
        const double to = time_ms(reps, [&] { return o = hk::omp::sum_sq(a); });
        row("sum_sq", ts, to, std::abs(s - o));
    }
    {
        double s = 0, o = 0;
        const double ts = time_ms(reps, [&] { return s = hk::serial::sum_abs_pow(a, 3.0); });
        const double to = time_ms(reps, [&] { return o = hk::omp::sum_abs_pow(a, 3.0); });
        row("sum_abs_pow(3)", ts, to, std::abs(s - o));
    }
    {
        double s = 0, o = 0;
        const double ts = time_ms(reps, [&] { return s = hk::serial::max_abs(a); });
        const double to = time_ms(reps, [&] { return o = hk::omp::max_abs(a); });
        row("max_abs", ts, to, std::abs(s - o));
    }
    {
        double s = 0, o = 0;
        const double ts = time_ms(reps, [&] { return s = hk::serial::weighted_dot(a, b, w); });
        const double to = time_ms(reps, [&] { return o = hk::omp::weighted_dot(a, b, w); });
        row("weighted_dot", ts, to, std::abs(s - o));
    }
    {
        std::vector<double> out_s(m), out_o(m);
        auto cube = [](double y) { return y * y * y; };
        const double ts = time_ms(reps, [&] {
            hk::serial::transform(a, out_s, cube);
            return out_s[0];
        });
        const double to = time_ms(reps, [&] {
            hk::omp::transform(a, out_o, cube);
            return out_o[0];
        });
        double diff = 0;
        for (std::size_t i = 0; i < m; ++i) diff = std::max(diff, std::abs(out_s[i] - out_o[i]));
        row("transform(y^3)", ts, to, diff);
    }

    const auto spec = heatobs::GridSpec::make(2, 512, 8.0);
    const heatobs::Field y0 = heatobs::init::gaussian(spec, heatobs::Point{0.0, 0.0, 0.0}, 1.0, 0.1);
    const heatobs::NonlinearitySpec cubic{heatobs::NonlinearityKind::power_odd, 1.0, 3.0};
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = time_ms(reps, [&] { return heatobs::strang_step(y0, cubic, 1e-3)[0]; });
    omp_set_num_threads(threads);
    const double many = time_ms(reps, [&] { return heatobs::strang_step(y0, cubic, 1e-3)[0]; });
    std::printf("%-18s %10.4f %10.4f %8.2fx  (n=2, m=512, 1 thread vs %d)\n", "strang_step", one, many, one / many,
                threads);
    return 0;
}
