// SPDX-License-Identifier: Apache-2.0
//
// Timing comparison of the OpenMP kernels against their serial references:
// h_eff grid sampling, H_eff assembly, and noise-covariance assembly.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "zakotfs/channel.hpp"
#include "zakotfs/harness.hpp"
#include "zakotfs/noise.hpp"

using namespace zakotfs;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const bool full = argc > 1 && std::string(argv[1]) == "--full";
    const FrameParams p =
        full ? FrameParams::make(32, 48, 15e3) : FrameParams::make(12, 14, 15e3);
    std::printf("M=%d N=%d, omp_max_threads=%d\n", p.M, p.N, omp_get_max_threads());

    rng::SubstreamRng rng(7, 0);
    const PhysicalChannel ch = sample_veh_a(rng, 815.0, p);

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "omp ms", "speedup");
    for (const auto& [name, shape] :
         {std::pair{"h_grid gs", PulseShape::gaussian_sinc()},
          std::pair{"h_grid sinc", PulseShape::sinc()}, std::pair{"h_grid rrc", PulseShape::rrc()}}) {
        HGrid g1, g2;
        double ts, tp;
        if (shape.kind == FilterKind::Rrc) {
            // rrc has its own row-structured rule; serial = 1 thread
            tp = time_ms([&] { g2 = sample_h_grid(shape, p, ch); });
            omp_set_num_threads(1);
            ts = time_ms([&] { g1 = sample_h_grid(shape, p, ch); });
            omp_set_num_threads(omp_get_num_procs());
        } else {
            const auto eval = make_sim_evaluator(shape, p, ch);
            ts = time_ms([&] { g1 = sample_h_grid_serial(eval, p); });
            tp = time_ms([&] { g2 = sample_h_grid(eval, p); });
        }
        const double dev = (g1.vals - g2.vals).cwiseAbs().maxCoeff();
        std::printf("%-28s %12.2f %12.2f %7.2fx   (max dev %.2e)\n", name, ts, tp, ts / tp, dev);
    }

    {
        const auto eval = make_sim_evaluator(PulseShape::gaussian_sinc(), p, ch);
        const HGrid grid = sample_h_grid(eval, p);
        Eigen::MatrixXcd H1, H2;
        const double ts = time_ms([&] { H1 = build_H_eff_serial(grid, p); });
        const double tp = time_ms([&] { H2 = build_H_eff(grid, p); });
        std::printf("%-28s %12.2f %12.2f %7.2fx   (max dev %.2e)\n", "build_H_eff", ts, tp,
                    ts / tp, (H1 - H2).cwiseAbs().maxCoeff());
    }

    {
        const PulseShape gs = PulseShape::gaussian_sinc();
        NoiseCovariance c1, c2;
        const double ts = time_ms([&] { c1 = noise_cov_closed_serial(gs, p, 1.0); });
        const double tp = time_ms([&] { c2 = noise_cov_closed(gs, p, 1.0); });
        std::printf("%-28s %12.2f %12.2f %7.2fx   (max dev %.2e)\n", "noise_cov gs", ts, tp,
                    ts / tp, (c1.C_unit - c2.C_unit).cwiseAbs().maxCoeff());
    }

    {
        SimConfig cfg = full ? preset_full() : preset_motiv();
        cfg.shape = PulseShape::gaussian_sinc();
        cfg.csi_mode = CsiMode::Embedded;
        cfg.sweep = {15.0};
        cfg.trials = full ? 8 : 64;
        const double t1 = time_ms([&] { run_point(cfg, Metric::Ber, 0, 15.0); }, 1);
        std::printf("%-28s %12s %12.2f   (%d trials, all threads)\n", "run_point embedded ber",
                    "-", t1, cfg.trials);
    }
    return 0;
}
