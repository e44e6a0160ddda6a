// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo experiment driver: MSE/BER sweeps over SNR or PDR with
// deterministic per-trial RNG substreams (results do not depend on thread
// count or scheduling), CSV output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zakotfs/detect.hpp"
#include "zakotfs/filters.hpp"
#include "zakotfs/frame.hpp"
#include "zakotfs/noise.hpp"
#include "zakotfs/pilot.hpp"

namespace zakotfs {

enum class CsiMode { Perfect, Exclusive, Embedded };
enum class NoiseMode { Colored, White };
enum class SweepAxis { DataSnrDb, PilotSnrDb, PdrDb };
enum class Metric { Ber, Mse };

struct SimConfig {
    FrameParams params = FrameParams::make(12, 14, 15e3);
    PulseShape shape = PulseShape::sinc();

    // embedded layout geometry; k_max < 0 derives ceil(B * max tau_i)
    int p1 = 1, p2 = 1, g1 = 1, g2 = 2, k_max = -1;

    ConstellationKind constellation = ConstellationKind::Bpsk;
    CsiMode csi_mode = CsiMode::Perfect;
    int n_dc = -1;               // exclusive read-off columns; -1 = M
    double pilot_snr_db = 30.0;  // exclusive estimation SNR (when not the axis)
    double pdr_db = 0.0;         // embedded pilot-to-data ratio (when not the axis)
    double data_snr_db = 15.0;   // data SNR (when not the axis)

    NoiseMode noise_mode = NoiseMode::Colored;
    bool pilot_cancel = true;  // subtract the estimated pilot contribution
    bool fec = false;          // rate-1/2 convolutional code

    SweepAxis axis = SweepAxis::DataSnrDb;
    std::vector<double> sweep;
    int trials = 100;
    uint64_t seed = 1;

    double nu_max_hz = 815.0;
    int replica_range = 1;
    bool per_realization_norm = false;
    bool debug_force_true_csi = false;  // MSE debug hook: estimator output replaced by truth

    void validate() const;  // throws on inconsistent settings
};

struct SweepRecord {
    double axis_value = 0.0;
    double metric = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

struct Energies {
    double E_d = 0.0, E_p = 0.0, N0 = 1.0;
};

/// N0 = 1; E_d = gamma_d B'T'; E_p = gamma_p B'T' (exclusive) or PDR * E_d
/// (embedded); perfect CSI carries no pilot energy.
Energies snr_to_energies(const PulseShape& shape, const FrameParams& params, CsiMode mode,
                         double data_snr_db, double pilot_snr_db, double pdr_db);

/// Shared per-sweep state (covariance factor, layout, constellation).
struct SweepContext;

SweepRecord run_point(const SimConfig& cfg, Metric metric, int point_index, double axis_value);
std::vector<SweepRecord> run_sweep(const SimConfig& cfg, Metric metric,
                                   const std::optional<std::string>& csv_path = std::nullopt);

uint64_t config_hash(const SimConfig& cfg, Metric metric);

/// Presets: `motiv` (M=12, N=14) and `full` (M=32, N=48).
SimConfig preset_motiv();
SimConfig preset_full();

/// JSON config file I/O (schema in the README).
SimConfig load_config(const std::string& path);
std::string config_to_json(const SimConfig& cfg);
void apply_json_overrides(SimConfig& cfg, const std::string& json_text);

std::string csv_header();
std::string csv_row(const SweepRecord& rec, uint64_t cfg_hash);

}  // namespace zakotfs
