#ifndef EFNZ_EXPERIMENTS_HPP
#define EFNZ_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "efnz/config.hpp"
#include "efnz/denoiser.hpp"
#include "efnz/latent.hpp"
#include "efnz/schedule.hpp"
#include "efnz/stats.hpp"

namespace efnz {

inline constexpr const char* kVersion = "1.0.0";

struct ExperimentContext {
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = all available
};

// ---------------------------------------------------------------------------
// Typed runners. Each one is deterministic in (config, seed) regardless of
// thread count: every replication derives its own child stream and writes
// its own slot, and aggregation happens after the join in index order.

struct ReconstructCase {
    std::string label;
    int steps = 0;
    double max_abs_error = 0.0;
    double rms_error = 0.0;
    double seconds = 0.0;
};
struct ReconstructResult {
    std::vector<ReconstructCase> cases;
};
/// params: {"cases": [{"label", "model": {...}, "steps"}], plus optional
/// shared schedule fields}. Samples one x_0 per case, edit-friendly
/// inverts, regenerates, reports the error.
ReconstructResult run_reconstruct(const Json& params, const ExperimentContext& ctx);

struct Toy2dResult {
    AngleHistogram native;
    AngleHistogram edit_friendly;
    double native_uniformity_p = 0.0;
    double native_mean_angle = 0.0;
    double ef_mean_angle = 0.0;
    double ef_modal_bin_start = 0.0;
    double ef_modal_bin_end = 0.0;
};
Toy2dResult run_toy2d_stats(const DenoiserModel& model, const Schedule& schedule,
                            std::size_t runs, std::size_t bins,
                            const ExperimentContext& ctx);

struct NoiseStatsResult {
    StatsSeries native_std, ef_std, cycle_std;
    StatsSeries native_corr, ef_corr, cycle_corr;
};
NoiseStatsResult run_noise_stats(const DenoiserModel& model, const Schedule& schedule,
                                 std::size_t runs, const ExperimentContext& ctx);

struct ShiftResult {
    std::vector<std::size_t> d;
    std::vector<double> ef_mse, ef_se;
    std::vector<double> native_mse, native_se;
};
ShiftResult run_shift(const DenoiserModel& model, const Schedule& schedule,
                      const std::vector<std::size_t>& d_list, std::size_t axis,
                      std::size_t source_offset, std::size_t images,
                      const ExperimentContext& ctx);

struct FlipResult {
    std::vector<double> ef_rms, native_rms;  // one entry per seed
};
FlipResult run_flip(const DenoiserModel& model, const Schedule& schedule, std::size_t axis,
                    std::size_t seeds, const ExperimentContext& ctx);

struct ColorEditResult {
    std::vector<double> s;
    std::vector<double> rms_vs_unedited;
    double mean_shift_unedited = 0.0;  // signed mean distance to the target
    std::vector<double> mean_shift;    // same, per s
};
ColorEditResult run_color_edit(const DenoiserModel& model, const Schedule& schedule,
                               const std::vector<double>& s_list, int T1, int T2,
                               const Tensor& mask, double target_offset,
                               const ExperimentContext& ctx);

struct CondSwapResult {
    std::vector<Tensor> outputs;
    double diversity_value = 0.0;
    double mean_rms_to_input = 0.0;
    double mean_rms_to_target_mode = 0.0;
};
CondSwapResult run_cond_swap(const DenoiserModel& model, const Schedule& schedule,
                             const std::string& source_cond, const std::string& target_cond,
                             std::optional<double> strength, int T_skip, std::size_t samples,
                             InversionMethod method, const ExperimentContext& ctx);

struct SweepRow {
    int t_skip = 0;
    double strength = 0.0;
    double rms_to_input = 0.0;
    double rms_to_target_mode = 0.0;
};
struct SweepResult {
    std::vector<SweepRow> rows;  // ordered by (strength, t_skip)
};
SweepResult run_sweep(const DenoiserModel& model, const Schedule& schedule,
                      const std::string& source_cond, const std::string& target_cond,
                      const std::vector<double>& strength_list,
                      const std::vector<int>& t_skip_list, std::size_t inputs,
                      const ExperimentContext& ctx);

// ---------------------------------------------------------------------------
// Config-driven entry point used by the CLI.

/// Built-in config for a kind; user configs and CLI flags override fields.
Json default_config(const std::string& kind);

/// Deep merge: values in `over` win, objects merge recursively.
Json merge_config(Json base, const Json& over);

/// Runs one experiment from its effective config: validates, executes,
/// writes CSV artifacts (plus SVG unless disabled) and run_manifest.json
/// into the output directory. Returns the list of files written.
std::vector<std::filesystem::path> run_experiment(const Json& effective_config);

const std::vector<std::string>& experiment_kinds();

}  // namespace efnz

#endif  // EFNZ_EXPERIMENTS_HPP
