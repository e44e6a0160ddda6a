// SPDX-License-Identifier: Apache-2.0
//
// zakotfs command line: Monte-Carlo sweeps (sweep-ber, sweep-mse), filter
// response dumps (filter-response), and effective-channel dumps
// (channel-dump). Config comes from a JSON file plus flag overrides; the
// ZAKOTFS_THREADS environment variable overrides the OpenMP thread count.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <omp.h>

#include <CLI11.hpp>

#include "zakotfs/channel.hpp"
#include "zakotfs/harness.hpp"

using namespace zakotfs;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out = "out.csv";
    long seed = -1;
    std::string filter;
    int trials = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--preset", o.preset, "parameter preset: motiv (12x14) or full (32x48)");
    cmd->add_option("--out", o.out, "output CSV path");
    cmd->add_option("--seed", o.seed, "64-bit RNG seed override");
    cmd->add_option("--filter", o.filter, "filter override: sinc|rrc|gaussian|gs");
    cmd->add_option("--trials", o.trials, "trials per sweep point override");
}

SimConfig resolve_config(const CommonOpts& o, const std::vector<double>& sweep_override,
                         bool no_pilot_cancel) {
    SimConfig cfg;
    if (!o.preset.empty()) {
        if (o.preset == "motiv")
            cfg = preset_motiv();
        else if (o.preset == "full")
            cfg = preset_full();
        else
            throw CLI::ValidationError("--preset", "unknown preset: " + o.preset);
    }
    if (!o.config_path.empty()) {
        if (o.preset.empty()) {
            cfg = load_config(o.config_path);
        } else {
            std::ifstream in(o.config_path);
            if (!in) throw CLI::ValidationError("--config", "cannot open " + o.config_path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            apply_json_overrides(cfg, text);
        }
    }
    if (o.seed >= 0) cfg.seed = static_cast<uint64_t>(o.seed);
    if (o.trials > 0) cfg.trials = o.trials;
    if (!o.filter.empty())
        apply_json_overrides(cfg, std::string("{\"filter\":{\"kind\":\"") + o.filter + "\"}}");
    if (!sweep_override.empty()) cfg.sweep = sweep_override;
    if (no_pilot_cancel) cfg.pilot_cancel = false;
    return cfg;
}

int run_sweep_cmd(const CommonOpts& o, const std::vector<double>& sweep, bool no_pilot_cancel,
                  Metric metric) {
    SimConfig cfg = resolve_config(o, sweep, no_pilot_cancel);
    const auto records = run_sweep(cfg, metric, o.out);
    std::cout << csv_header();
    const uint64_t h = config_hash(cfg, metric);
    for (const auto& r : records) std::cout << csv_row(r, h);
    std::cout << "wrote " << o.out << "\n";
    return 0;
}

int filter_response_cmd(const std::string& out, double x_max, double step) {
    const FrameParams p = FrameParams::make(12, 14, 15e3);
    const PulseShape shapes[] = {PulseShape::sinc(), PulseShape::rrc(), PulseShape::gaussian(),
                                 PulseShape::gaussian_sinc()};
    std::ofstream os(out);
    if (!os) {
        std::cerr << "cannot open " << out << "\n";
        return 1;
    }
    os << "B_tau,sinc_db,rrc_db,gaussian_db,gs_db\n";
    const double sb = std::sqrt(p.bandwidth());
    char buf[256];
    for (double x = -x_max; x <= x_max + 1e-12; x += step) {
        const double tau = x / p.bandwidth();
        double db[4];
        for (int i = 0; i < 4; ++i) {
            const double v = std::abs(eval_w1(shapes[i], p, tau)) / sb;
            db[i] = 20.0 * std::log10(std::max(v, 1e-12));
        }
        std::snprintf(buf, sizeof(buf), "%.10e,%.10e,%.10e,%.10e,%.10e\n", x, db[0], db[1], db[2],
                      db[3]);
        os << buf;
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int channel_dump_cmd(const CommonOpts& o) {
    SimConfig cfg = resolve_config(o, {}, false);
    rng::SubstreamRng rng(cfg.seed, 0);
    const PhysicalChannel ch =
        sample_veh_a(rng, cfg.nu_max_hz, cfg.params, cfg.per_realization_norm);
    const HGrid grid = sample_h_grid(cfg.shape, cfg.params, ch);
    const Eigen::MatrixXcd H = build_H_eff(grid, cfg.params, cfg.replica_range);

    const std::string gpath = o.out + ".hgrid.csv", hpath = o.out + ".heff.csv";
    {
        std::ofstream os(gpath);
        os << "k,l,abs,re,im\n";
        char buf[192];
        for (int k = grid.k_min; k <= -grid.k_min; ++k) {
            for (int l = grid.l_min; l <= -grid.l_min; ++l) {
                const cd v = grid.at(k, l);
                std::snprintf(buf, sizeof(buf), "%d,%d,%.10e,%.10e,%.10e\n", k, l, std::abs(v),
                              v.real(), v.imag());
                os << buf;
            }
        }
    }
    {
        std::ofstream os(hpath);
        os << "row,col,re,im\n";
        char buf[160];
        for (Eigen::Index r = 0; r < H.rows(); ++r) {
            for (Eigen::Index c = 0; c < H.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%ld,%ld,%.10e,%.10e\n", static_cast<long>(r),
                              static_cast<long>(c), H(r, c).real(), H(r, c).imag());
                os << buf;
            }
        }
    }
    std::cout << "wrote " << gpath << " and " << hpath << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* th = std::getenv("ZAKOTFS_THREADS")) {
        const int n = std::atoi(th);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"Zak-OTFS delay-Doppler link simulator"};
    app.require_subcommand(1);

    CommonOpts ber_opts, mse_opts, dump_opts;
    std::vector<double> ber_sweep, mse_sweep;
    bool no_pilot_cancel = false;

    auto* ber = app.add_subcommand("sweep-ber", "BER vs the configured sweep axis");
    add_common(ber, ber_opts);
    ber->add_option("--sweep", ber_sweep, "axis values override (dB)");
    ber->add_flag("--no-pilot-cancel", no_pilot_cancel,
                  "keep the estimated pilot contribution in the detector input");

    auto* mse = app.add_subcommand("sweep-mse", "estimation MSE vs the configured sweep axis");
    add_common(mse, mse_opts);
    mse->add_option("--sweep", mse_sweep, "axis values override (dB)");

    std::string fr_out = "filter_response.csv";
    double fr_xmax = 3.0, fr_step = 0.005;
    auto* fr = app.add_subcommand("filter-response",
                                  "dump |w1| in dB vs normalized delay for all four filters");
    fr->add_option("--out", fr_out, "output CSV path");
    fr->add_option("--x-max", fr_xmax, "normalized delay range");
    fr->add_option("--step", fr_step, "normalized delay step");

    auto* dump = app.add_subcommand("channel-dump",
                                    "dump one h_eff grid realization and the H_eff matrix");
    add_common(dump, dump_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (ber->parsed()) return run_sweep_cmd(ber_opts, ber_sweep, no_pilot_cancel, Metric::Ber);
        if (mse->parsed()) return run_sweep_cmd(mse_opts, mse_sweep, false, Metric::Mse);
        if (fr->parsed()) return filter_response_cmd(fr_out, fr_xmax, fr_step);
        if (dump->parsed()) return channel_dump_cmd(dump_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
