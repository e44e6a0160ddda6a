// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/harness.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace zakotfs {

namespace {

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

int derived_k_max(const SimConfig& cfg) {
    if (cfg.k_max >= 0) return cfg.k_max;
    return static_cast<int>(std::ceil(cfg.params.bandwidth() * kVehADelaysSec.back()));
}

}  // namespace

void SimConfig::validate() const {
    if (sweep.empty()) throw std::invalid_argument("SimConfig: sweep axis values must be non-empty");
    if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
    if (csi_mode == CsiMode::Embedded && axis == SweepAxis::PilotSnrDb)
        throw std::invalid_argument("SimConfig: embedded pilots are driven by PDR, not pilot SNR");
    if (csi_mode != CsiMode::Exclusive && n_dc > 0 && csi_mode == CsiMode::Perfect)
        throw std::invalid_argument("SimConfig: n_dc is meaningful only with pilot estimation");
}

Energies snr_to_energies(const PulseShape& shape, const FrameParams& params, CsiMode mode,
                         double data_snr_db, double pilot_snr_db, double pdr_db) {
    const ExpansionFactors ex = expansion_factors(shape, params);
    const double bt = ex.B_prime * ex.T_prime;
    Energies e;
    e.N0 = 1.0;
    e.E_d = db_to_lin(data_snr_db) * bt;
    switch (mode) {
        case CsiMode::Perfect:
            e.E_p = 0.0;
            break;
        case CsiMode::Exclusive:
            e.E_p = db_to_lin(pilot_snr_db) * bt;
            break;
        case CsiMode::Embedded:
            e.E_p = db_to_lin(pdr_db) * e.E_d;
            break;
    }
    return e;
}

struct SweepContext {
    FrameLayout data_layout;       // layout carrying the data symbols
    FrameLayout exclusive_pilot;   // estimation frame layout (exclusive mode)
    Constellation constellation;
    NoiseCovariance cov;
    NoiseFactor factor;
    std::vector<int> det_rows;     // rows used by the detector
    Eigen::MatrixXcd C_rows;       // cov.C_unit restricted to det_rows
};

namespace {

SweepContext make_context(const SimConfig& cfg) {
    SweepContext ctx;
    const FrameParams& p = cfg.params;
    switch (cfg.csi_mode) {
        case CsiMode::Perfect:
        case CsiMode::Exclusive:
            ctx.data_layout = full_data_layout(p);
            break;
        case CsiMode::Embedded:
            ctx.data_layout = build_layout(p, cfg.p1, cfg.p2, cfg.g1, cfg.g2, derived_k_max(cfg));
            break;
    }
    ctx.exclusive_pilot = exclusive_layout(p);
    ctx.constellation = cfg.constellation == ConstellationKind::Bpsk ? Constellation::bpsk()
                                                                     : Constellation::qam8();
    ctx.cov = cfg.noise_mode == NoiseMode::Colored ? noise_cov_closed(cfg.shape, p, 1.0)
                                                   : noise_cov_white(p, 1.0);
    ctx.factor = noise_factor(ctx.cov);

    if (cfg.csi_mode == CsiMode::Embedded) {
        ctx.det_rows = ctx.data_layout.data_region;
        ctx.det_rows.insert(ctx.det_rows.end(), ctx.data_layout.guard_region.begin(),
                            ctx.data_layout.guard_region.end());
        std::sort(ctx.det_rows.begin(), ctx.det_rows.end());
    } else {
        ctx.det_rows.resize(p.grid_size());
        for (int i = 0; i < p.grid_size(); ++i) ctx.det_rows[i] = i;
    }
    const int nr = static_cast<int>(ctx.det_rows.size());
    ctx.C_rows.resize(nr, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nr; ++j) ctx.C_rows(i, j) = ctx.cov.C_unit(ctx.det_rows[i], ctx.det_rows[j]);
    return ctx;
}

Energies energies_for(const SimConfig& cfg, double axis_value) {
    double data_db = cfg.data_snr_db, pilot_db = cfg.pilot_snr_db, pdr_db = cfg.pdr_db;
    switch (cfg.axis) {
        case SweepAxis::DataSnrDb:
            data_db = axis_value;
            break;
        case SweepAxis::PilotSnrDb:
            pilot_db = axis_value;
            break;
        case SweepAxis::PdrDb:
            pdr_db = axis_value;
            break;
    }
    return snr_to_energies(cfg.shape, cfg.params, cfg.csi_mode, data_db, pilot_db, pdr_db);
}

struct TrialOutcome {
    double metric = 0.0;  // error fraction or normalized MSE
    double weight = 1.0;  // bits counted (BER) or 1 (MSE)
};

std::vector<uint8_t> draw_bits(rng::SubstreamRng& rng, size_t count) {
    std::vector<uint8_t> bits(count);
    for (size_t i = 0; i < count; ++i) bits[i] = static_cast<uint8_t>(rng.next_u32() & 1u);
    return bits;
}

Eigen::MatrixXcd estimated_H(const SimConfig& cfg,
                             const Eigen::MatrixXcd& H_true, const DdVector& y_est_frame,
                             const FrameLayout& est_layout, double E_p) {
    if (cfg.debug_force_true_csi) return H_true;
    const HGrid est = estimate_h_eff(y_est_frame, est_layout, cfg.params,
                                     cfg.csi_mode == CsiMode::Exclusive ? cfg.n_dc : -1, E_p);
    return build_H_eff(est, cfg.params, cfg.replica_range);
}

TrialOutcome ber_trial(const SimConfig& cfg, const SweepContext& ctx, const Energies& en,
                       rng::SubstreamRng& rng) {
    const FrameParams& p = cfg.params;
    const Constellation& con = ctx.constellation;
    const FrameLayout& lay = ctx.data_layout;
    const size_t n_data = lay.data_region.size();
    const size_t frame_bits = n_data * con.bits_per_symbol;

    size_t n_info = frame_bits;
    if (cfg.fec) {
        if (frame_bits < 14) throw std::invalid_argument("ber_trial: frame too small for FEC");
        n_info = frame_bits / 2 - 6;
    }

    const PhysicalChannel ch = sample_veh_a(rng, cfg.nu_max_hz, p, cfg.per_realization_norm);
    const HGrid grid = sample_h_grid(cfg.shape, p, ch);
    const Eigen::MatrixXcd H = build_H_eff(grid, p, cfg.replica_range);

    std::vector<uint8_t> info = draw_bits(rng, n_info);
    std::vector<uint8_t> coded;
    if (cfg.fec) {
        coded = fec_encode(info);
        coded.resize(frame_bits, 0);  // zero-pad any leftover positions
    } else {
        coded = info;
    }
    const std::vector<cd> syms = map_bits(coded, con);
    const double pilot_energy = cfg.csi_mode == CsiMode::Embedded ? en.E_p : 0.0;
    const DdFrame frame = build_frame(p, lay, pilot_energy, en.E_d, syms);

    DdVector y = sample_noise(ctx.factor, en.N0, p, rng);
    y.v += H * frame.x.v;

    Eigen::MatrixXcd H_hat;
    switch (cfg.csi_mode) {
        case CsiMode::Perfect:
            H_hat = H;
            break;
        case CsiMode::Embedded:
            H_hat = estimated_H(cfg, H, y, lay, en.E_p);
            break;
        case CsiMode::Exclusive: {
            // separate exclusive-pilot frame over the same channel realization
            const DdFrame pf = build_frame(p, ctx.exclusive_pilot, en.E_p, 0.0, {});
            DdVector yp = sample_noise(ctx.factor, en.N0, p, rng);
            yp.v += H * pf.x.v;
            H_hat = estimated_H(cfg, H, yp, ctx.exclusive_pilot, en.E_p);
            break;
        }
    }

    const int nr = static_cast<int>(ctx.det_rows.size());
    Eigen::VectorXcd y_det(nr);
    for (int i = 0; i < nr; ++i) y_det(i) = y.v(ctx.det_rows[i]);

    Eigen::MatrixXcd H_det(nr, static_cast<int>(n_data));
    for (int i = 0; i < nr; ++i)
        for (size_t j = 0; j < n_data; ++j) H_det(i, j) = H_hat(ctx.det_rows[i], lay.data_region[j]);

    if (cfg.csi_mode == CsiMode::Embedded && cfg.pilot_cancel) {
        const int pc = lay.pilot_flat();
        for (int i = 0; i < nr; ++i) y_det(i) -= std::sqrt(en.E_p) * H_hat(ctx.det_rows[i], pc);
    }

    const double Es = en.E_d / static_cast<double>(n_data);
    const MmseResult eq = mmse_equalize(H_det, y_det, en.N0 * ctx.C_rows, Es);

    std::vector<cd> xs(eq.x_unbiased.data(), eq.x_unbiased.data() + eq.x_unbiased.size());
    std::vector<uint8_t> decided;
    if (cfg.fec) {
        std::vector<double> nv(eq.noise_var.data(), eq.noise_var.data() + eq.noise_var.size());
        std::vector<double> llrs = demap_llr(xs, nv, con);
        llrs.resize(2 * (n_info + 6));  // drop pad positions
        decided = viterbi_decode(llrs);
    } else {
        decided = demap_hard(xs, con);
    }

    size_t errors = 0;
    for (size_t i = 0; i < n_info; ++i) errors += (decided[i] ^ info[i]) & 1;
    return TrialOutcome{static_cast<double>(errors) / static_cast<double>(n_info),
                        static_cast<double>(n_info)};
}

TrialOutcome mse_trial(const SimConfig& cfg, const SweepContext& ctx, const Energies& en,
                       rng::SubstreamRng& rng) {
    const FrameParams& p = cfg.params;
    const PhysicalChannel ch = sample_veh_a(rng, cfg.nu_max_hz, p, cfg.per_realization_norm);
    const HGrid grid = sample_h_grid(cfg.shape, p, ch);
    const Eigen::MatrixXcd H = build_H_eff(grid, p, cfg.replica_range);

    DdFrame frame;
    FrameLayout est_layout;
    if (cfg.csi_mode == CsiMode::Exclusive) {
        est_layout = ctx.exclusive_pilot;
        frame = build_frame(p, est_layout, en.E_p, 0.0, {});
    } else if (cfg.csi_mode == CsiMode::Embedded) {
        est_layout = ctx.data_layout;
        const Constellation& con = ctx.constellation;
        const size_t nbits = est_layout.data_region.size() * con.bits_per_symbol;
        const std::vector<cd> syms = map_bits(draw_bits(rng, nbits), con);
        frame = build_frame(p, est_layout, en.E_p, en.E_d, syms);
    } else {
        throw std::invalid_argument("mse_trial: MSE requires a pilot-bearing CSI mode");
    }

    DdVector y = sample_noise(ctx.factor, en.N0, p, rng);
    y.v += H * frame.x.v;
    const Eigen::MatrixXcd H_hat = estimated_H(cfg, H, y, est_layout, en.E_p);
    return TrialOutcome{normalized_mse(H, H_hat), 1.0};
}

SweepRecord run_point_ctx(const SimConfig& cfg, const SweepContext& ctx, Metric metric,
                          int point_index, double axis_value) {
    const Energies en = energies_for(cfg, axis_value);
    std::vector<TrialOutcome> outcomes(cfg.trials);

    // trials are scheduling-independent: each draws from its own substream and
    // lands in its own slot; the reduction below runs in index order
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < cfg.trials; ++t) {
        rng::SubstreamRng rng(cfg.seed, rng::trial_stream(static_cast<uint32_t>(point_index), t));
        outcomes[t] = metric == Metric::Ber ? ber_trial(cfg, ctx, en, rng)
                                            : mse_trial(cfg, ctx, en, rng);
    }

    double wsum = 0.0, msum = 0.0;
    for (const auto& o : outcomes) {
        wsum += o.weight;
        msum += o.metric * o.weight;
    }
    const double mean = msum / wsum;
    double var = 0.0;
    for (const auto& o : outcomes) var += (o.metric - mean) * (o.metric - mean);
    var /= std::max(1, cfg.trials - 1);

    SweepRecord rec;
    rec.axis_value = axis_value;
    rec.metric = mean;
    rec.std_error = std::sqrt(var / cfg.trials);
    rec.trials = cfg.trials;
    return rec;
}

}  // namespace

SweepRecord run_point(const SimConfig& cfg, Metric metric, int point_index, double axis_value) {
    cfg.validate();
    const SweepContext ctx = make_context(cfg);
    return run_point_ctx(cfg, ctx, metric, point_index, axis_value);
}

std::vector<SweepRecord> run_sweep(const SimConfig& cfg, Metric metric,
                                   const std::optional<std::string>& csv_path) {
    cfg.validate();
    const SweepContext ctx = make_context(cfg);
    std::vector<SweepRecord> records;
    records.reserve(cfg.sweep.size());
    for (size_t i = 0; i < cfg.sweep.size(); ++i)
        records.push_back(run_point_ctx(cfg, ctx, metric, static_cast<int>(i), cfg.sweep[i]));

    if (csv_path) {
        std::ofstream out(*csv_path);
        if (!out) throw std::runtime_error("run_sweep: cannot open " + *csv_path);
        const uint64_t h = config_hash(cfg, metric);
        out << csv_header();
        for (const auto& r : records) out << csv_row(r, h);
        if (!out) throw std::runtime_error("run_sweep: write failed for " + *csv_path);
    }
    return records;
}

uint64_t config_hash(const SimConfig& cfg, Metric metric) {
    // FNV-1a over the canonical JSON text plus the metric tag
    const std::string repr = config_to_json(cfg) + (metric == Metric::Ber ? "|ber" : "|mse");
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : repr) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SimConfig preset_motiv() {
    SimConfig cfg;
    cfg.params = FrameParams::make(12, 14, 15e3);
    cfg.p1 = 1;
    cfg.p2 = 1;
    cfg.g1 = 1;
    cfg.g2 = 2;
    cfg.k_max = -1;
    return cfg;
}

SimConfig preset_full() {
    SimConfig cfg;
    cfg.params = FrameParams::make(32, 48, 15e3);
    cfg.p1 = 3;
    cfg.p2 = 1;
    cfg.g1 = 2;
    cfg.g2 = 3;
    cfg.k_max = -1;
    return cfg;
}

namespace {

using nlohmann::json;

const char* kind_name(FilterKind k) {
    switch (k) {
        case FilterKind::Sinc: return "sinc";
        case FilterKind::Rrc: return "rrc";
        case FilterKind::Gaussian: return "gaussian";
        case FilterKind::GaussianSinc: return "gs";
    }
    return "?";
}

PulseShape shape_from_json(const json& j) {
    const std::string kind = j.value("kind", "sinc");
    if (kind == "sinc") return PulseShape::sinc();
    if (kind == "rrc") return PulseShape::rrc(j.value("beta_tau", 0.05), j.value("beta_nu", 0.1));
    if (kind == "gaussian") {
        const double a = j.value("alpha", 1.584);
        return PulseShape::gaussian(j.value("alpha_tau", a), j.value("alpha_nu", a));
    }
    if (kind == "gs") {
        const double a = j.value("alpha", 0.044);
        return PulseShape::gaussian_sinc(j.value("alpha_tau", a), j.value("alpha_nu", a));
    }
    throw std::invalid_argument("config: unknown filter kind '" + kind + "'");
}

void config_from_json(SimConfig& cfg, const json& j) {
    if (j.contains("preset")) {
        const std::string p = j["preset"];
        if (p == "motiv")
            cfg = preset_motiv();
        else if (p == "full")
            cfg = preset_full();
        else
            throw std::invalid_argument("config: unknown preset '" + p + "'");
    }
    if (j.contains("frame")) {
        const auto& f = j["frame"];
        cfg.params = FrameParams::make(f.value("M", cfg.params.M), f.value("N", cfg.params.N),
                                       f.value("nu_p_hz", cfg.params.nu_p));
    }
    if (j.contains("filter")) cfg.shape = shape_from_json(j["filter"]);
    if (j.contains("layout")) {
        const auto& l = j["layout"];
        cfg.p1 = l.value("p1", cfg.p1);
        cfg.p2 = l.value("p2", cfg.p2);
        cfg.g1 = l.value("g1", cfg.g1);
        cfg.g2 = l.value("g2", cfg.g2);
        cfg.k_max = l.value("k_max", cfg.k_max);
    }
    if (j.contains("constellation")) {
        const std::string c = j["constellation"];
        if (c == "bpsk")
            cfg.constellation = ConstellationKind::Bpsk;
        else if (c == "qam8")
            cfg.constellation = ConstellationKind::Qam8;
        else
            throw std::invalid_argument("config: unknown constellation '" + c + "'");
    }
    if (j.contains("csi")) {
        const auto& c = j["csi"];
        const std::string m = c.value("mode", "perfect");
        if (m == "perfect")
            cfg.csi_mode = CsiMode::Perfect;
        else if (m == "exclusive")
            cfg.csi_mode = CsiMode::Exclusive;
        else if (m == "embedded")
            cfg.csi_mode = CsiMode::Embedded;
        else
            throw std::invalid_argument("config: unknown csi mode '" + m + "'");
        cfg.n_dc = c.value("n_dc", cfg.n_dc);
        cfg.pilot_snr_db = c.value("pilot_snr_db", cfg.pilot_snr_db);
        cfg.pdr_db = c.value("pdr_db", cfg.pdr_db);
    }
    if (j.contains("noise_mode")) {
        const std::string m = j["noise_mode"];
        if (m == "colored")
            cfg.noise_mode = NoiseMode::Colored;
        else if (m == "white")
            cfg.noise_mode = NoiseMode::White;
        else
            throw std::invalid_argument("config: unknown noise mode '" + m + "'");
    }
    cfg.pilot_cancel = j.value("pilot_cancel", cfg.pilot_cancel);
    cfg.fec = j.value("fec", cfg.fec);
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        const std::string ax = s.value("axis", "data_snr_db");
        if (ax == "data_snr_db")
            cfg.axis = SweepAxis::DataSnrDb;
        else if (ax == "pilot_snr_db")
            cfg.axis = SweepAxis::PilotSnrDb;
        else if (ax == "pdr_db")
            cfg.axis = SweepAxis::PdrDb;
        else
            throw std::invalid_argument("config: unknown sweep axis '" + ax + "'");
        cfg.sweep = s.value("values", cfg.sweep);
    }
    cfg.data_snr_db = j.value("data_snr_db", cfg.data_snr_db);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.nu_max_hz = j.value("nu_max_hz", cfg.nu_max_hz);
    cfg.replica_range = j.value("replica_range", cfg.replica_range);
    cfg.per_realization_norm = j.value("per_realization_norm", cfg.per_realization_norm);
    cfg.debug_force_true_csi = j.value("debug_force_true_csi", cfg.debug_force_true_csi);
}

}  // namespace

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    json j = json::parse(in);
    SimConfig cfg;
    config_from_json(cfg, j);
    return cfg;
}

void apply_json_overrides(SimConfig& cfg, const std::string& json_text) {
    config_from_json(cfg, json::parse(json_text));
}

std::string config_to_json(const SimConfig& cfg) {
    json j;
    j["frame"] = {{"M", cfg.params.M}, {"N", cfg.params.N}, {"nu_p_hz", cfg.params.nu_p}};
    json f;
    f["kind"] = kind_name(cfg.shape.kind);
    if (cfg.shape.kind == FilterKind::Rrc) {
        f["beta_tau"] = cfg.shape.beta_tau;
        f["beta_nu"] = cfg.shape.beta_nu;
    }
    if (cfg.shape.kind == FilterKind::Gaussian || cfg.shape.kind == FilterKind::GaussianSinc) {
        f["alpha_tau"] = cfg.shape.alpha_tau;
        f["alpha_nu"] = cfg.shape.alpha_nu;
    }
    j["filter"] = f;
    j["layout"] = {{"p1", cfg.p1}, {"p2", cfg.p2}, {"g1", cfg.g1}, {"g2", cfg.g2},
                   {"k_max", cfg.k_max}};
    j["constellation"] = cfg.constellation == ConstellationKind::Bpsk ? "bpsk" : "qam8";
    j["csi"] = {{"mode", cfg.csi_mode == CsiMode::Perfect
                             ? "perfect"
                             : (cfg.csi_mode == CsiMode::Exclusive ? "exclusive" : "embedded")},
                {"n_dc", cfg.n_dc},
                {"pilot_snr_db", cfg.pilot_snr_db},
                {"pdr_db", cfg.pdr_db}};
    j["noise_mode"] = cfg.noise_mode == NoiseMode::Colored ? "colored" : "white";
    j["pilot_cancel"] = cfg.pilot_cancel;
    j["fec"] = cfg.fec;
    j["sweep"] = {{"axis", cfg.axis == SweepAxis::DataSnrDb
                               ? "data_snr_db"
                               : (cfg.axis == SweepAxis::PilotSnrDb ? "pilot_snr_db" : "pdr_db")},
                  {"values", cfg.sweep}};
    j["data_snr_db"] = cfg.data_snr_db;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["nu_max_hz"] = cfg.nu_max_hz;
    j["replica_range"] = cfg.replica_range;
    j["per_realization_norm"] = cfg.per_realization_norm;
    j["debug_force_true_csi"] = cfg.debug_force_true_csi;
    return j.dump();
}

std::string csv_header() { return "axis,metric,stderr,trials,config_hash\n"; }

std::string csv_row(const SweepRecord& rec, uint64_t cfg_hash) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.10e,%.10e,%.10e,%ld,%016llx\n", rec.axis_value, rec.metric,
                  rec.std_error, rec.trials, static_cast<unsigned long long>(cfg_hash));
    return buf;
}

}  // namespace zakotfs
