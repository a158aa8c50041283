#include "efnz/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "efnz/csv.hpp"
#include "efnz/edits.hpp"
#include "efnz/inversion.hpp"
#include "efnz/latent_io.hpp"
#include "efnz/parallel.hpp"
#include "efnz/sampler.hpp"
#include "efnz/svg.hpp"

namespace efnz {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<LatentCode> native_codes(const DenoiserModel& model, const Schedule& schedule,
                                     std::size_t runs, const RngStream& root,
                                     const std::string& label, int threads) {
    std::vector<LatentCode> codes(runs);
    parallel_for_indexed(runs, threads, [&](std::size_t i) {
        RngStream rng = root.child(label + "/" + std::to_string(i));
        codes[i] = to_latent_code(ddpm_sample(model, schedule, rng));
    });
    return codes;
}

std::vector<LatentCode> inverted_codes(const DenoiserModel& model, const Schedule& schedule,
                                       std::size_t runs, const RngStream& root,
                                       const std::string& label, InversionMethod method,
                                       int threads) {
    std::vector<LatentCode> codes(runs);
    parallel_for_indexed(runs, threads, [&](std::size_t i) {
        RngStream input_rng = root.child(label + "/input/" + std::to_string(i));
        Tensor x0 = sample_x0(model, input_rng);
        RngStream rng = root.child(label + "/invert/" + std::to_string(i));
        codes[i] = method == InversionMethod::CycleDiffusion
                       ? cyclediffusion_invert(x0, model, schedule, rng)
                       : edit_friendly_invert(x0, model, schedule, rng);
    });
    return codes;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sem_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1) /
                     static_cast<double>(v.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Runners

ReconstructResult run_reconstruct(const Json& params, const ExperimentContext& ctx) {
    if (!params.contains("cases") || !params.at("cases").is_array()) {
        throw ConfigError("reconstruct needs a 'cases' array");
    }
    RngStream root(ctx.seed);
    ReconstructResult result;
    for (const auto& c : params.at("cases")) {
        auto t0 = std::chrono::steady_clock::now();
        ReconstructCase rc;
        rc.label = config_string(c, "label");
        rc.steps = static_cast<int>(config_int(c, "steps"));
        ModelPtr model = model_from_json(c.at("model"));
        Json sched_json = c.contains("schedule") ? c.at("schedule") : Json::object();
        sched_json["steps"] = rc.steps;
        Schedule schedule = schedule_from_json(sched_json);

        RngStream input_rng = root.child("input/" + rc.label + "/" + std::to_string(rc.steps));
        Tensor x0 = sample_x0(*model, input_rng);
        RngStream invert_rng =
            root.child("invert/" + rc.label + "/" + std::to_string(rc.steps));
        LatentCode code = edit_friendly_invert(x0, *model, schedule, invert_rng);
        Tensor rec = generate_from_latent(*model, schedule, code);
        rc.max_abs_error = max_abs_diff(rec, x0);
        rc.rms_error = rms_diff(rec, x0);
        rc.seconds = seconds_since(t0);
        result.cases.push_back(std::move(rc));
    }
    return result;
}

Toy2dResult run_toy2d_stats(const DenoiserModel& model, const Schedule& schedule,
                            std::size_t runs, std::size_t bins,
                            const ExperimentContext& ctx) {
    RngStream root(ctx.seed);
    std::vector<LatentCode> native =
        native_codes(model, schedule, runs, root, "native", ctx.threads);
    std::vector<LatentCode> ef = inverted_codes(model, schedule, runs, root, "ef",
                                                InversionMethod::EditFriendly, ctx.threads);
    Toy2dResult r;
    r.native = angle_histogram(native, bins);
    r.edit_friendly = angle_histogram(ef, bins);
    r.native_uniformity_p = chi_square_uniformity_p(r.native.counts);
    r.native_mean_angle = r.native.mean_angle();
    r.ef_mean_angle = r.edit_friendly.mean_angle();
    std::size_t modal = r.edit_friendly.modal_bin();
    r.ef_modal_bin_start = r.edit_friendly.bin_edges[modal];
    r.ef_modal_bin_end = r.edit_friendly.bin_edges[modal + 1];
    return r;
}

NoiseStatsResult run_noise_stats(const DenoiserModel& model, const Schedule& schedule,
                                 std::size_t runs, const ExperimentContext& ctx) {
    RngStream root(ctx.seed);
    std::vector<LatentCode> native =
        native_codes(model, schedule, runs, root, "native", ctx.threads);
    std::vector<LatentCode> ef = inverted_codes(model, schedule, runs, root, "ef",
                                                InversionMethod::EditFriendly, ctx.threads);
    std::vector<LatentCode> cycle = inverted_codes(
        model, schedule, runs, root, "cycle", InversionMethod::CycleDiffusion, ctx.threads);
    NoiseStatsResult r;
    r.native_std = per_step_std(native);
    r.ef_std = per_step_std(ef);
    r.cycle_std = per_step_std(cycle);
    r.native_corr = consecutive_corr(native);
    r.ef_corr = consecutive_corr(ef);
    r.cycle_corr = consecutive_corr(cycle);
    return r;
}

ShiftResult run_shift(const DenoiserModel& model, const Schedule& schedule,
                      const std::vector<std::size_t>& d_list, std::size_t axis,
                      std::size_t source_offset, std::size_t images,
                      const ExperimentContext& ctx) {
    if (d_list.empty()) throw ConfigError("shift experiment needs a non-empty d list");
    RngStream root(ctx.seed);
    // per image, per d: {ef, native} valid-pixel MSEs
    std::vector<std::vector<double>> ef_mse(d_list.size(), std::vector<double>(images));
    std::vector<std::vector<double>> nat_mse(d_list.size(), std::vector<double>(images));
    parallel_for_indexed(images, ctx.threads, [&](std::size_t i) {
        RngStream sample_rng = root.child("image/" + std::to_string(i));
        Trajectory traj = ddpm_sample(model, schedule, sample_rng);
        const Tensor& x0 = traj.x0();
        LatentCode native = to_latent_code(traj);
        RngStream invert_rng = root.child("invert/" + std::to_string(i));
        LatentCode ef = edit_friendly_invert(x0, model, schedule, invert_rng);
        for (std::size_t k = 0; k < d_list.size(); ++k) {
            ShiftSpec spec{d_list[k], axis, source_offset};
            Tensor reference = shift_tensor(x0, spec);
            Tensor out_ef =
                generate_from_latent(model, schedule, shift_latent(ef, spec));
            Tensor out_nat =
                generate_from_latent(model, schedule, shift_latent(native, spec));
            ef_mse[k][i] = shift_mse(out_ef, reference, d_list[k], axis);
            nat_mse[k][i] = shift_mse(out_nat, reference, d_list[k], axis);
        }
    });
    ShiftResult r;
    r.d = d_list;
    for (std::size_t k = 0; k < d_list.size(); ++k) {
        r.ef_mse.push_back(mean_of(ef_mse[k]));
        r.ef_se.push_back(sem_of(ef_mse[k]));
        r.native_mse.push_back(mean_of(nat_mse[k]));
        r.native_se.push_back(sem_of(nat_mse[k]));
    }
    return r;
}

FlipResult run_flip(const DenoiserModel& model, const Schedule& schedule, std::size_t axis,
                    std::size_t seeds, const ExperimentContext& ctx) {
    RngStream root(ctx.seed);
    FlipResult r;
    r.ef_rms.resize(seeds);
    r.native_rms.resize(seeds);
    parallel_for_indexed(seeds, ctx.threads, [&](std::size_t i) {
        RngStream sample_rng = root.child("image/" + std::to_string(i));
        Trajectory traj = ddpm_sample(model, schedule, sample_rng);
        const Tensor& x0 = traj.x0();
        LatentCode native = to_latent_code(traj);
        RngStream invert_rng = root.child("invert/" + std::to_string(i));
        LatentCode ef = edit_friendly_invert(x0, model, schedule, invert_rng);
        FlipSpec spec{axis};
        Tensor reference = flip_tensor(x0, spec);
        r.ef_rms[i] =
            rms_diff(generate_from_latent(model, schedule, flip_latent(ef, spec)), reference);
        r.native_rms[i] = rms_diff(
            generate_from_latent(model, schedule, flip_latent(native, spec)), reference);
    });
    return r;
}

ColorEditResult run_color_edit(const DenoiserModel& model, const Schedule& schedule,
                               const std::vector<double>& s_list, int T1, int T2,
                               const Tensor& mask, double target_offset,
                               const ExperimentContext& ctx) {
    if (s_list.empty()) throw ConfigError("color edit needs a non-empty strength list");
    RngStream root(ctx.seed);
    RngStream input_rng = root.child("input");
    Tensor x0 = sample_x0(model, input_rng);
    RngStream invert_rng = root.child("invert");
    LatentCode code = edit_friendly_invert(x0, model, schedule, invert_rng);
    Tensor unedited = generate_from_latent(model, schedule, code);
    Tensor target = x0;
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = x0[i] + target_offset;

    ColorEditResult r;
    r.mean_shift_unedited = mean(unedited) - mean(target);
    for (double s : s_list) {
        ColorEditSpec spec{mask, target, s, T1, T2};
        Tensor out = color_edit_generate(code, model, schedule, spec);
        r.s.push_back(s);
        r.rms_vs_unedited.push_back(rms_diff(out, unedited));
        r.mean_shift.push_back(mean(out) - mean(target));
    }
    return r;
}

CondSwapResult run_cond_swap(const DenoiserModel& model, const Schedule& schedule,
                             const std::string& source_cond, const std::string& target_cond,
                             std::optional<double> strength, int T_skip, std::size_t samples,
                             InversionMethod method, const ExperimentContext& ctx) {
    if (samples < 2) throw ConfigError("cond-swap needs at least 2 samples");
    RngStream root(ctx.seed);
    RngStream input_rng = root.child("input");
    Tensor x0 = sample_x0(model, input_rng, source_cond);
    Tensor target_mode = resolve_condition(model, target_cond).mean_x0();

    CondSwapResult r;
    r.outputs.resize(samples);
    CondSwapSpec spec{target_cond, strength, T_skip};
    parallel_for_indexed(samples, ctx.threads, [&](std::size_t k) {
        LatentCode code;
        switch (method) {
            case InversionMethod::Ddim:
                code = ddim_invert(x0, model, schedule, source_cond);
                break;
            case InversionMethod::CycleDiffusion: {
                RngStream rng = root.child("invert/" + std::to_string(k));
                code = cyclediffusion_invert(x0, model, schedule, rng, source_cond);
                break;
            }
            default: {
                RngStream rng = root.child("invert/" + std::to_string(k));
                code = edit_friendly_invert(x0, model, schedule, rng, source_cond);
                break;
            }
        }
        r.outputs[k] = cond_swap_generate(code, model, spec, schedule);
    });
    r.diversity_value = diversity(r.outputs);
    std::vector<double> to_input, to_target;
    for (const auto& out : r.outputs) {
        to_input.push_back(rms_diff(out, x0));
        to_target.push_back(rms_diff(out, target_mode));
    }
    r.mean_rms_to_input = mean_of(to_input);
    r.mean_rms_to_target_mode = mean_of(to_target);
    return r;
}

SweepResult run_sweep(const DenoiserModel& model, const Schedule& schedule,
                      const std::string& source_cond, const std::string& target_cond,
                      const std::vector<double>& strength_list,
                      const std::vector<int>& t_skip_list, std::size_t inputs,
                      const ExperimentContext& ctx) {
    if (strength_list.empty() || t_skip_list.empty() || inputs == 0) {
        throw ConfigError("sweep needs strengths, T_skip values, and inputs");
    }
    RngStream root(ctx.seed);
    Tensor target_mode = resolve_condition(model, target_cond).mean_x0();
    const std::size_t cells = strength_list.size() * t_skip_list.size();
    std::vector<std::vector<double>> rms_in(cells, std::vector<double>(inputs));
    std::vector<std::vector<double>> rms_tgt(cells, std::vector<double>(inputs));
    parallel_for_indexed(inputs, ctx.threads, [&](std::size_t i) {
        RngStream input_rng = root.child("input/" + std::to_string(i));
        Tensor x0 = sample_x0(model, input_rng, source_cond);
        RngStream invert_rng = root.child("invert/" + std::to_string(i));
        LatentCode code = edit_friendly_invert(x0, model, schedule, invert_rng, source_cond);
        std::size_t cell = 0;
        for (double w : strength_list) {
            for (int skip : t_skip_list) {
                CondSwapSpec spec{target_cond, w, skip};
                Tensor out = cond_swap_generate(code, model, spec, schedule);
                rms_in[cell][i] = rms_diff(out, x0);
                rms_tgt[cell][i] = rms_diff(out, target_mode);
                ++cell;
            }
        }
    });
    SweepResult r;
    std::size_t cell = 0;
    for (double w : strength_list) {
        for (int skip : t_skip_list) {
            SweepRow row;
            row.t_skip = skip;
            row.strength = w;
            row.rms_to_input = mean_of(rms_in[cell]);
            row.rms_to_target_mode = mean_of(rms_tgt[cell]);
            r.rows.push_back(row);
            ++cell;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Default configs

namespace {

Json field_model_json() {
    return Json{{"type", "stationary_field"},
                {"shape", {32, 32}},
                {"kernel",
                 {{"type", "squared_exponential"},
                  {"length_scale", 5.0},
                  {"variance", 1.0},
                  {"nugget", 1e-4}}},
                {"level", 0.0}};
}

// Image analog for the shift/flip comparisons: a diagonally oriented
// texture. An isotropic field is exactly equivariant under shifts and
// single-axis flips, which collapses the native-vs-edit-friendly gap to a
// floating-point tie; the oriented covariance restores it.
Json textured_field_model_json() {
    return Json{{"type", "stationary_field"},
                {"shape", {32, 32}},
                {"kernel",
                 {{"type", "anisotropic_diagonal"},
                  {"length_along", 6.0},
                  {"length_across", 1.5},
                  {"variance", 1.0},
                  {"nugget", 1e-4}}},
                {"level", 0.0}};
}

Json toy2d_model_json() {
    return Json{{"type", "isotropic_gaussian"},
                {"shape", {2}},
                {"mean", {10.0, 10.0}},
                {"variance", 1.0}};
}

Json gmm2d_model_json() {
    return Json{
        {"type", "gmm"},
        {"weights", {0.5, 0.3, 0.2}},
        {"components",
         {Json{{"type", "full_gaussian"},
               {"mean", {-6.0, -4.0}},
               {"covariance", {{2.0, 0.6}, {0.6, 1.0}}}},
          Json{{"type", "isotropic_gaussian"}, {"shape", {2}}, {"mean", {5.0, 3.0}}, {"variance", 0.5}},
          Json{{"type", "full_gaussian"},
               {"mean", {8.0, -7.0}},
               {"covariance", {{1.0, -0.4}, {-0.4, 1.5}}}}}}};
}

Json conditional_model_json() {
    // distinct member covariances keep the condition swap from collapsing
    // to a pure translation, which would make every consistent latent map
    // to the same output
    Json a{{"type", "full_gaussian"},
           {"mean", {-6.0, 0.0}},
           {"covariance", {{0.8, 0.3}, {0.3, 0.8}}}};
    Json b{{"type", "full_gaussian"},
           {"mean", {6.0, 0.0}},
           {"covariance", {{1.3, -0.5}, {-0.5, 0.7}}}};
    return Json{{"type", "conditional"},
                {"conditions", {{"a", a}, {"b", b}}},
                {"unconditional",
                 Json{{"type", "gmm"}, {"weights", {0.5, 0.5}}, {"components", {a, b}}}}};
}

Json schedule_json(int steps) {
    return Json{{"base_steps", 1000}, {"beta_start", 1e-4}, {"beta_end", 0.02},
                {"eta", 1.0},         {"steps", steps},     {"zero_final_noise", false}};
}

// The 2D toy runs its steps directly with a beta range reaching near-zero
// terminal SNR; coarse respacing from a long base schedule visibly
// under-disperses ancestral sampling.
Json direct_schedule_json(int steps, double beta_end) {
    return Json{{"base_steps", steps}, {"beta_start", 1e-4}, {"beta_end", beta_end},
                {"eta", 1.0},          {"steps", steps},     {"zero_final_noise", false}};
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = {
        "sample", "invert",     "reconstruct", "toy2d-stats", "noise-stats",
        "shift",  "flip",       "color-edit",  "cond-swap",   "sweep"};
    return kinds;
}

Json default_config(const std::string& kind) {
    Json c{{"kind", kind}, {"seed", 20240801}, {"out", "out/" + kind}, {"svg", true},
           {"threads", 0}};
    if (kind == "sample") {
        c["schedule"] = direct_schedule_json(40, 0.25);
        c["model"] = toy2d_model_json();
        c["params"] = Json{{"count", 16}, {"save_latents", false}};
    } else if (kind == "invert") {
        c["schedule"] = schedule_json(100);
        c["model"] = toy2d_model_json();
        c["params"] = Json{{"method", "edit-friendly"}};
    } else if (kind == "reconstruct") {
        Json cases = Json::array();
        for (int steps : {40, 100}) {
            cases.push_back(Json{{"label", "isotropic_gaussian"},
                                 {"steps", steps},
                                 {"model", toy2d_model_json()},
                                 {"schedule", schedule_json(steps)}});
            cases.push_back(Json{{"label", "gmm_2d"},
                                 {"steps", steps},
                                 {"model", gmm2d_model_json()},
                                 {"schedule", schedule_json(steps)}});
            cases.push_back(Json{{"label", "stationary_field"},
                                 {"steps", steps},
                                 {"model", field_model_json()},
                                 {"schedule", schedule_json(steps)}});
        }
        c["params"] = Json{{"cases", cases}};
    } else if (kind == "toy2d-stats") {
        c["schedule"] = direct_schedule_json(40, 0.25);
        c["model"] = toy2d_model_json();
        c["params"] = Json{{"runs", 500}, {"bins", 18}};
    } else if (kind == "noise-stats") {
        c["schedule"] = schedule_json(100);
        c["model"] = field_model_json();
        c["params"] = Json{{"runs", 100}};
    } else if (kind == "shift") {
        c["schedule"] = schedule_json(100);
        c["model"] = textured_field_model_json();
        // interior source offset: on a 32-wide grid the conventional offset
        // 50, clamped to extent - d, would coincide with the cyclic wrap,
        // and the circulant field maps a cyclic latent shift to an exact
        // image shift for native and edit-friendly codes alike
        c["params"] = Json{{"d", {1, 2, 4, 8}}, {"axis", 1}, {"source_offset", 12},
                           {"images", 25}};
    } else if (kind == "flip") {
        c["schedule"] = schedule_json(100);
        c["model"] = textured_field_model_json();
        c["params"] = Json{{"axis", 1}, {"seeds", 10}};
    } else if (kind == "color-edit") {
        c["schedule"] = schedule_json(100);
        c["model"] = field_model_json();
        c["params"] = Json{{"s", {0.0, 0.01, 0.05, 0.1}}, {"T1", 20}, {"T2", 70},
                           {"mask", "all"}, {"target_offset", 0.5}};
    } else if (kind == "cond-swap") {
        c["schedule"] = schedule_json(100);
        c["model"] = conditional_model_json();
        c["params"] = Json{{"source", "a"}, {"target", "b"}, {"T_skip", 0},
                           {"samples", 8}, {"method", "edit-friendly"}};
    } else if (kind == "sweep") {
        c["schedule"] = schedule_json(100);
        c["model"] = conditional_model_json();
        c["params"] = Json{{"source", "a"},
                           {"target", "b"},
                           {"strength", {1.0, 2.0, 4.0}},
                           {"T_skip", {0, 25, 50, 75, 100}},
                           {"inputs", 10}};
    } else {
        throw ConfigError("unknown experiment kind '" + kind + "'");
    }
    return c;
}

Json merge_config(Json base, const Json& over) {
    if (!over.is_object() || !base.is_object()) return over;
    for (const auto& [key, value] : over.items()) {
        if (base.contains(key) && base.at(key).is_object() && value.is_object()) {
            base[key] = merge_config(base.at(key), value);
        } else {
            base[key] = value;
        }
    }
    return base;
}

// ---------------------------------------------------------------------------
// Artifact writers + dispatcher

namespace {

struct Emit {
    std::filesystem::path dir;
    bool svg = true;
    std::vector<std::filesystem::path> files;

    std::filesystem::path path(const std::string& name) {
        files.push_back(dir / name);
        return dir / name;
    }
};

void write_series_csv(Emit& emit, const std::string& name,
                      const std::vector<std::pair<std::string, const StatsSeries*>>& series,
                      const std::string& value_name) {
    CsvWriter w(emit.path(name), {"t", "method", value_name, "standard_error"});
    for (const auto& [label, s] : series) {
        for (std::size_t i = 0; i < s->t.size(); ++i) {
            w.write_row({static_cast<long long>(s->t[i]), label, s->value[i],
                         s->standard_error[i]});
        }
    }
    w.close();
}

void write_series_svg(Emit& emit, const std::string& name, const std::string& title,
                      const std::string& ylabel,
                      const std::vector<std::pair<std::string, const StatsSeries*>>& series) {
    if (!emit.svg) return;
    std::vector<SvgSeries> lines;
    for (const auto& [label, s] : series) {
        SvgSeries line;
        line.label = label;
        for (std::size_t i = 0; i < s->t.size(); ++i) {
            line.x.push_back(static_cast<double>(s->t[i]));
            line.y.push_back(s->value[i]);
        }
        lines.push_back(std::move(line));
    }
    render_line_chart(emit.path(name), title, "t", ylabel, lines);
}

Tensor mask_from_json(const Json& params, const std::vector<std::size_t>& shape) {
    if (!params.contains("mask") || params.at("mask").is_string()) {
        return Tensor::filled(shape, 1.0);
    }
    const Json& m = params.at("mask");
    if (shape.size() != 2) throw ConfigError("rect mask needs a 2D model");
    Tensor mask = Tensor::zeros(shape);
    std::size_t r0 = static_cast<std::size_t>(config_int(m, "row0"));
    std::size_t r1 = static_cast<std::size_t>(config_int(m, "row1"));
    std::size_t c0 = static_cast<std::size_t>(config_int(m, "col0"));
    std::size_t c1 = static_cast<std::size_t>(config_int(m, "col1"));
    if (r1 > shape[0] || c1 > shape[1] || r0 >= r1 || c0 >= c1) {
        throw ConfigError("rect mask out of bounds");
    }
    for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) mask[r * shape[1] + c] = 1.0;
    }
    return mask;
}

const Json& config_array(const Json& params, const std::string& key) {
    if (!params.contains(key) || !params.at(key).is_array() || params.at(key).empty()) {
        throw ConfigError("config needs a non-empty array field '" + key + "'");
    }
    return params.at(key);
}

std::vector<std::size_t> size_list(const Json& params, const std::string& key) {
    std::vector<std::size_t> out;
    for (const auto& v : config_array(params, key)) {
        long long e = v.get<long long>();
        if (e < 0) throw ConfigError("'" + key + "' entries must be >= 0");
        out.push_back(static_cast<std::size_t>(e));
    }
    return out;
}

void write_tensor_rows(CsvWriter& w, std::size_t index, const Tensor& t) {
    std::vector<CsvCell> cells;
    cells.reserve(t.size() + 1);
    cells.emplace_back(static_cast<long long>(index));
    for (std::size_t i = 0; i < t.size(); ++i) cells.emplace_back(t[i]);
    w.write_row(cells);
}

std::vector<std::string> tensor_header(std::size_t n) {
    std::vector<std::string> h{"index"};
    for (std::size_t i = 0; i < n; ++i) h.push_back("c" + std::to_string(i));
    return h;
}

}  // namespace

std::vector<std::filesystem::path> run_experiment(const Json& config) {
    const std::string kind = config_string(config, "kind");
    if (!config.contains("seed")) {
        throw ConfigError("experiments need an explicit 'seed' (no wall-clock defaults)");
    }
    ExperimentContext ctx;
    ctx.seed = config.at("seed").get<std::uint64_t>();
    ctx.threads = static_cast<int>(config_int_or(config, "threads", 0));

    Emit emit;
    emit.dir = config_string(config, "out");
    emit.svg = config_bool_or(config, "svg", true);
    std::filesystem::create_directories(emit.dir);

    const Json params = config.contains("params") ? config.at("params") : Json::object();
    ModelPtr model;
    Schedule schedule;
    if (kind != "reconstruct") {
        if (!config.contains("model")) throw ConfigError("config needs a 'model'");
        model = model_from_json(config.at("model"));
        schedule = schedule_from_json(config.contains("schedule") ? config.at("schedule")
                                                                  : Json::object());
    }

    if (kind == "sample") {
        std::size_t count = static_cast<std::size_t>(config_int_or(params, "count", 16));
        bool save_latents = config_bool_or(params, "save_latents", false);
        RngStream root(ctx.seed);
        std::vector<Trajectory> trajectories(count);
        parallel_for_indexed(count, ctx.threads, [&](std::size_t i) {
            RngStream rng = root.child("native/" + std::to_string(i));
            trajectories[i] = ddpm_sample(*model, schedule, rng);
        });
        CsvWriter w(emit.path("samples.csv"), tensor_header(trajectories.front().x0().size()));
        for (std::size_t i = 0; i < count; ++i) write_tensor_rows(w, i, trajectories[i].x0());
        w.close();
        if (save_latents) {
            for (std::size_t i = 0; i < count; ++i) {
                save_latent(to_latent_code(trajectories[i]),
                            emit.path("latent_" + std::to_string(i) + ".efnz"));
            }
        }
    } else if (kind == "invert") {
        InversionMethod method =
            inversion_method_from_string(config_string(params, "method"));
        std::optional<std::string> cond;
        if (params.contains("cond")) cond = config_string(params, "cond");
        RngStream root(ctx.seed);
        Tensor x0;
        if (params.contains("input")) {
            x0 = load_tensor_csv(config_string(params, "input"));
        } else {
            RngStream input_rng = root.child("input");
            x0 = sample_x0(*model, input_rng, cond);
        }
        RngStream rng = root.child("invert");
        LatentCode code;
        switch (method) {
            case InversionMethod::EditFriendly:
                code = edit_friendly_invert(x0, *model, schedule, rng, cond);
                break;
            case InversionMethod::CycleDiffusion:
                code = cyclediffusion_invert(x0, *model, schedule, rng, cond);
                break;
            case InversionMethod::Ddim:
                code = ddim_invert(x0, *model, schedule, cond);
                break;
            default:
                throw ConfigError("invert supports edit-friendly, cyclediffusion, ddim");
        }
        save_latent(code, emit.path("latent.efnz"));
        save_tensor_csv(x0, emit.path("input.csv"));
        Tensor rec = generate_from_latent(*model, schedule, code, cond);
        CsvWriter w(emit.path("summary.csv"), {"method", "max_abs_error", "rms_error"});
        w.write_row({std::string(to_string(method)), max_abs_diff(rec, x0),
                     rms_diff(rec, x0)});
        w.close();
    } else if (kind == "reconstruct") {
        ReconstructResult r = run_reconstruct(params, ctx);
        CsvWriter w(emit.path("reconstruct.csv"),
                    {"case", "steps", "max_abs_error", "rms_error", "seconds"});
        for (const auto& c : r.cases) {
            w.write_row({c.label, static_cast<long long>(c.steps), c.max_abs_error,
                         c.rms_error, c.seconds});
        }
        w.close();
    } else if (kind == "toy2d-stats") {
        std::size_t runs = static_cast<std::size_t>(config_int_or(params, "runs", 500));
        std::size_t bins = static_cast<std::size_t>(config_int_or(params, "bins", 18));
        Toy2dResult r = run_toy2d_stats(*model, schedule, runs, bins, ctx);
        CsvWriter w(emit.path("angles.csv"),
                    {"bin_start", "bin_end", "native_count", "edit_friendly_count"});
        for (std::size_t b = 0; b < r.native.counts.size(); ++b) {
            w.write_row({r.native.bin_edges[b], r.native.bin_edges[b + 1],
                         static_cast<long long>(r.native.counts[b]),
                         static_cast<long long>(r.edit_friendly.counts[b])});
        }
        w.close();
        CsvWriter s(emit.path("summary.csv"),
                    {"method", "pairs", "skipped", "mean_angle_deg", "modal_bin_start",
                     "uniformity_p"});
        s.write_row({std::string("native"), static_cast<long long>(r.native.total),
                     static_cast<long long>(r.native.skipped), r.native_mean_angle,
                     r.native.bin_edges[r.native.modal_bin()], r.native_uniformity_p});
        s.write_row({std::string("edit-friendly"),
                     static_cast<long long>(r.edit_friendly.total),
                     static_cast<long long>(r.edit_friendly.skipped), r.ef_mean_angle,
                     r.ef_modal_bin_start,
                     chi_square_uniformity_p(r.edit_friendly.counts)});
        s.close();
        if (emit.svg) {
            auto to_hist = [](const AngleHistogram& h, const std::string& label) {
                SvgHistogram out;
                out.label = label;
                out.bin_edges = h.bin_edges;
                for (std::size_t c : h.counts) out.counts.push_back(static_cast<double>(c));
                return out;
            };
            render_histograms(emit.path("angles.svg"),
                              "Angles between consecutive noise vectors", "angle (deg)",
                              {to_hist(r.native, "native"),
                               to_hist(r.edit_friendly, "edit-friendly")});
        }
    } else if (kind == "noise-stats") {
        std::size_t runs = static_cast<std::size_t>(config_int_or(params, "runs", 100));
        NoiseStatsResult r = run_noise_stats(*model, schedule, runs, ctx);
        std::vector<std::pair<std::string, const StatsSeries*>> stds = {
            {"native", &r.native_std}, {"edit-friendly", &r.ef_std},
            {"cyclediffusion", &r.cycle_std}};
        std::vector<std::pair<std::string, const StatsSeries*>> corrs = {
            {"native", &r.native_corr}, {"edit-friendly", &r.ef_corr},
            {"cyclediffusion", &r.cycle_corr}};
        write_series_csv(emit, "std.csv", stds, "std");
        write_series_csv(emit, "corr.csv", corrs, "corr");
        write_series_svg(emit, "std.svg", "Per-step std of z_t", "std", stds);
        write_series_svg(emit, "corr.svg", "Correlation of consecutive z_t", "corr", corrs);
    } else if (kind == "shift") {
        std::vector<std::size_t> d_list = size_list(params, "d");
        std::size_t axis = static_cast<std::size_t>(config_int_or(params, "axis", 1));
        std::size_t offset =
            static_cast<std::size_t>(config_int_or(params, "source_offset", 50));
        std::size_t images = static_cast<std::size_t>(config_int_or(params, "images", 25));
        ShiftResult r = run_shift(*model, schedule, d_list, axis, offset, images, ctx);
        CsvWriter w(emit.path("shift_mse.csv"), {"d", "method", "mse", "standard_error"});
        for (std::size_t k = 0; k < r.d.size(); ++k) {
            w.write_row({static_cast<long long>(r.d[k]), std::string("edit-friendly"),
                         r.ef_mse[k], r.ef_se[k]});
        }
        for (std::size_t k = 0; k < r.d.size(); ++k) {
            w.write_row({static_cast<long long>(r.d[k]), std::string("native"),
                         r.native_mse[k], r.native_se[k]});
        }
        w.close();
        if (emit.svg) {
            SvgSeries ef{"edit-friendly", {}, {}}, nat{"native", {}, {}};
            for (std::size_t k = 0; k < r.d.size(); ++k) {
                ef.x.push_back(static_cast<double>(r.d[k]));
                ef.y.push_back(r.ef_mse[k]);
                nat.x.push_back(static_cast<double>(r.d[k]));
                nat.y.push_back(r.native_mse[k]);
            }
            render_line_chart(emit.path("shift.svg"), "Valid-pixel MSE after latent shift",
                              "shift d (pixels)", "MSE", {ef, nat});
        }
    } else if (kind == "flip") {
        std::size_t axis = static_cast<std::size_t>(config_int_or(params, "axis", 1));
        std::size_t seeds = static_cast<std::size_t>(config_int_or(params, "seeds", 10));
        FlipResult r = run_flip(*model, schedule, axis, seeds, ctx);
        CsvWriter w(emit.path("flip_rms.csv"), {"seed", "edit_friendly_rms", "native_rms"});
        for (std::size_t i = 0; i < seeds; ++i) {
            w.write_row({static_cast<long long>(i), r.ef_rms[i], r.native_rms[i]});
        }
        w.close();
    } else if (kind == "color-edit") {
        std::vector<double> s_list;
        for (const auto& v : config_array(params, "s")) s_list.push_back(v.get<double>());
        int T1 = static_cast<int>(config_int_or(params, "T1", 20));
        int T2 = static_cast<int>(config_int_or(params, "T2", 70));
        double offset = config_number_or(params, "target_offset", 0.5);
        Tensor mask = mask_from_json(params, model->data_shape());
        ColorEditResult r = run_color_edit(*model, schedule, s_list, T1, T2, mask, offset, ctx);
        CsvWriter w(emit.path("color_edit.csv"),
                    {"s", "rms_vs_unedited", "mean_shift_to_target"});
        for (std::size_t i = 0; i < r.s.size(); ++i) {
            w.write_row({r.s[i], r.rms_vs_unedited[i], r.mean_shift[i]});
        }
        w.close();
        if (emit.svg) {
            SvgSeries line{"rms vs unedited", r.s, r.rms_vs_unedited};
            render_line_chart(emit.path("color_edit.svg"), "Edit strength response",
                              "s", "RMS vs unedited", {line});
        }
    } else if (kind == "cond-swap") {
        std::string source = config_string(params, "source");
        std::string target = config_string(params, "target");
        std::optional<double> strength;
        if (params.contains("strength")) strength = config_number(params, "strength");
        int t_skip = static_cast<int>(config_int_or(params, "T_skip", 0));
        std::size_t samples = static_cast<std::size_t>(config_int_or(params, "samples", 8));
        InversionMethod method = inversion_method_from_string(
            params.contains("method") ? config_string(params, "method") : "edit-friendly");
        CondSwapResult r = run_cond_swap(*model, schedule, source, target, strength, t_skip,
                                         samples, method, ctx);
        CsvWriter w(emit.path("outputs.csv"), tensor_header(r.outputs.front().size()));
        for (std::size_t i = 0; i < r.outputs.size(); ++i) {
            write_tensor_rows(w, i, r.outputs[i]);
        }
        w.close();
        CsvWriter s(emit.path("summary.csv"),
                    {"samples", "diversity", "mean_rms_to_input", "mean_rms_to_target_mode"});
        s.write_row({static_cast<long long>(samples), r.diversity_value,
                     r.mean_rms_to_input, r.mean_rms_to_target_mode});
        s.close();
    } else if (kind == "sweep") {
        std::string source = config_string(params, "source");
        std::string target = config_string(params, "target");
        std::vector<double> strengths;
        for (const auto& v : config_array(params, "strength")) {
            strengths.push_back(v.get<double>());
        }
        std::vector<int> skips;
        for (const auto& v : config_array(params, "T_skip")) skips.push_back(v.get<int>());
        std::size_t inputs = static_cast<std::size_t>(config_int_or(params, "inputs", 10));
        SweepResult r = run_sweep(*model, schedule, source, target, strengths, skips, inputs,
                                  ctx);
        CsvWriter w(emit.path("sweep.csv"),
                    {"T_skip", "strength", "rms_to_input", "rms_to_target_mode"});
        for (const auto& row : r.rows) {
            w.write_row({static_cast<long long>(row.t_skip), row.strength, row.rms_to_input,
                         row.rms_to_target_mode});
        }
        w.close();
        if (emit.svg) {
            std::vector<SvgSeries> lines;
            for (double wv : strengths) {
                SvgSeries line;
                line.label = "w=" + CsvWriter::format_double(wv);
                for (const auto& row : r.rows) {
                    if (row.strength == wv) {
                        line.x.push_back(static_cast<double>(row.t_skip));
                        line.y.push_back(row.rms_to_input);
                    }
                }
                lines.push_back(std::move(line));
            }
            render_line_chart(emit.path("sweep.svg"), "Fidelity vs skipped steps", "T_skip",
                              "RMS to input", lines);
        }
    } else {
        throw ConfigError("unknown experiment kind '" + kind + "'");
    }

    Json manifest{{"kind", kind}, {"efnz_version", kVersion}, {"effective_config", config}};
    Json outputs = Json::array();
    for (const auto& f : emit.files) outputs.push_back(f.filename().string());
    manifest["outputs"] = outputs;
    std::filesystem::path manifest_path = emit.dir / "run_manifest.json";
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) throw ConfigError("cannot write manifest to " + manifest_path.string());
    mf << manifest.dump(2) << "\n";
    emit.files.push_back(manifest_path);
    return emit.files;
}

}  // namespace efnz
