#include "efnz/edits.hpp"

#include <cmath>

#include "efnz/sampler.hpp"

namespace efnz {

namespace {

struct AxisView {
    std::size_t extent = 0;  // length along the axis
    std::size_t stride = 0;  // flat distance between neighbors on the axis
    std::size_t lines = 0;   // number of independent lines
};

AxisView axis_view(const std::vector<std::size_t>& shape, std::size_t axis) {
    if (axis >= shape.size()) {
        throw ConfigError("axis " + std::to_string(axis) + " out of range for shape " +
                          shape_to_string(shape));
    }
    AxisView v;
    v.extent = shape[axis];
    v.stride = 1;
    for (std::size_t a = axis + 1; a < shape.size(); ++a) v.stride *= shape[a];
    std::size_t total = 1;
    for (std::size_t e : shape) total *= e;
    v.lines = total / v.extent;
    return v;
}

// Start offset of the k-th line crossing the axis.
std::size_t line_base(const AxisView& v, std::size_t k) {
    std::size_t outer = k / v.stride;
    std::size_t inner = k % v.stride;
    return outer * v.extent * v.stride + inner;
}

void validate_shift(const std::vector<std::size_t>& shape, const ShiftSpec& spec) {
    AxisView v = axis_view(shape, spec.axis);
    if (spec.d >= v.extent) {
        throw ConfigError("shift distance " + std::to_string(spec.d) +
                          " must be smaller than the extent " + std::to_string(v.extent));
    }
}

std::size_t clamped_source_offset(std::size_t extent, const ShiftSpec& spec) {
    std::size_t max_offset = extent - spec.d;
    return std::min(spec.source_offset, max_offset);
}

template <typename EditOne>
LatentCode edit_all_maps(const LatentCode& latent, EditOne&& edit) {
    LatentCode out = latent;
    out.x_T = edit(latent.x_T);
    for (std::size_t t = 1; t < latent.z.size(); ++t) {
        if (!latent.z[t].empty()) out.z[t] = edit(latent.z[t]);
    }
    for (std::size_t t = 0; t < latent.aux_chain.size(); ++t) {
        out.aux_chain[t] = edit(latent.aux_chain[t]);
    }
    return out;
}

}  // namespace

Tensor shift_tensor(const Tensor& t, const ShiftSpec& spec) {
    validate_shift(t.shape(), spec);
    if (spec.d == 0) return t;
    AxisView v = axis_view(t.shape(), spec.axis);
    std::size_t src = clamped_source_offset(v.extent, spec);
    Tensor out = t;
    for (std::size_t k = 0; k < v.lines; ++k) {
        std::size_t base = line_base(v, k);
        for (std::size_t i = v.extent; i-- > spec.d;) {
            out[base + i * v.stride] = t[base + (i - spec.d) * v.stride];
        }
        for (std::size_t i = 0; i < spec.d; ++i) {
            out[base + i * v.stride] = t[base + (src + i) * v.stride];
        }
    }
    return out;
}

Tensor flip_tensor(const Tensor& t, const FlipSpec& spec) {
    AxisView v = axis_view(t.shape(), spec.axis);
    Tensor out = t;
    for (std::size_t k = 0; k < v.lines; ++k) {
        std::size_t base = line_base(v, k);
        for (std::size_t i = 0; i < v.extent; ++i) {
            out[base + i * v.stride] = t[base + (v.extent - 1 - i) * v.stride];
        }
    }
    return out;
}

LatentCode shift_latent(const LatentCode& latent, const ShiftSpec& spec) {
    validate_shift(latent.shape(), spec);
    if (spec.d == 0) return latent;
    return edit_all_maps(latent, [&](const Tensor& m) { return shift_tensor(m, spec); });
}

LatentCode flip_latent(const LatentCode& latent, const FlipSpec& spec) {
    axis_view(latent.shape(), spec.axis);
    return edit_all_maps(latent, [&](const Tensor& m) { return flip_tensor(m, spec); });
}

Tensor color_edit_generate(const LatentCode& latent, const DenoiserModel& model,
                           const Schedule& schedule, const ColorEditSpec& spec,
                           const std::optional<std::string>& cond,
                           std::optional<double> strength) {
    latent.require_compatible(schedule);
    const int T = schedule.T;
    if (spec.T1 < 1 || spec.T1 > spec.T2 || spec.T2 > T) {
        throw ConfigError("color edit needs 1 <= T1 <= T2 <= T");
    }
    if (spec.mask.shape() != latent.shape() || spec.target.shape() != latent.shape()) {
        throw ConfigError("color-edit mask and target must match the latent shape");
    }
    for (std::size_t i = 0; i < spec.mask.size(); ++i) {
        if (spec.mask[i] != 0.0 && spec.mask[i] != 1.0) {
            throw ConfigError("color-edit mask entries must be 0 or 1");
        }
    }
    if (!std::isfinite(spec.strength)) throw ConfigError("color-edit strength must be finite");

    Tensor x = latent.x_T;
    for (int t = T; t >= 1; --t) {
        Tensor eps = step_eps(model, x, t, schedule, cond, strength);
        const Tensor& z = latent.z[static_cast<std::size_t>(t)];
        if (spec.strength != 0.0 && t >= spec.T1 && t <= spec.T2) {
            double a = schedule.alpha_bar[t];
            double p_in = 1.0 / std::sqrt(a);
            double p_eps = -std::sqrt(1.0 - a) / std::sqrt(a);
            Tensor edited = z;
            for (std::size_t i = 0; i < edited.size(); ++i) {
                double pred_x0 = p_in * x[i] + p_eps * eps[i];
                edited[i] = z[i] + spec.strength * spec.mask[i] * (spec.target[i] - pred_x0);
            }
            x = reverse_step(mu_hat_from_eps(x, eps, t, schedule), schedule.sigma[t], edited);
        } else {
            x = reverse_step(mu_hat_from_eps(x, eps, t, schedule), schedule.sigma[t], z);
        }
    }
    return x;
}

Tensor cond_swap_generate(const LatentCode& latent, const DenoiserModel& model,
                          const CondSwapSpec& spec, const Schedule& schedule) {
    return generate_from_latent(model, schedule, latent, spec.target_cond, spec.strength,
                                spec.T_skip);
}

}  // namespace efnz
