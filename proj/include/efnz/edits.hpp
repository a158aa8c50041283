#ifndef EFNZ_EDITS_HPP
#define EFNZ_EDITS_HPP

#include <optional>
#include <string>

#include "efnz/denoiser.hpp"
#include "efnz/latent.hpp"
#include "efnz/schedule.hpp"
#include "efnz/tensor.hpp"

namespace efnz {

/// Cyclic-free translation of every noise map by d cells toward increasing
/// index along an axis. The vacated low-index boundary is filled by copying
/// the contiguous block [source_offset, source_offset + d) of the same map;
/// the offset is clamped to min(source_offset, extent - d).
struct ShiftSpec {
    std::size_t d = 0;
    std::size_t axis = 0;
    std::size_t source_offset = 50;
};

/// Reversal of every noise map along an axis.
struct FlipSpec {
    std::size_t axis = 0;
};

/// Noise-map color edit: over generation steps t in [T1, T2] the noise map
/// becomes z_t + s * B (.) (M - predicted x_0 of the current state), with
/// B a binary mask and M the target image.
struct ColorEditSpec {
    Tensor mask;    // entries in {0, 1}
    Tensor target;  // same shape as x_0
    double strength = 0.0;
    int T1 = 1;
    int T2 = 1;
};

/// Regeneration under a swapped condition: fixed noise maps, target label,
/// optional classifier-free strength, skipped leading steps.
struct CondSwapSpec {
    std::string target_cond;
    std::optional<double> strength;
    int T_skip = 0;
};

LatentCode shift_latent(const LatentCode& latent, const ShiftSpec& spec);

LatentCode flip_latent(const LatentCode& latent, const FlipSpec& spec);

/// Runs the generative recursion with the noise-map color edit
/// applied at each step in [T1, T2] and returns x_0. strength = 0 returns
/// the plain replay bitwise.
Tensor color_edit_generate(const LatentCode& latent, const DenoiserModel& model,
                           const Schedule& schedule, const ColorEditSpec& spec,
                           const std::optional<std::string>& cond = {},
                           std::optional<double> strength = {});

Tensor cond_swap_generate(const LatentCode& latent, const DenoiserModel& model,
                          const CondSwapSpec& spec, const Schedule& schedule);

/// Shifts one tensor by d toward increasing index along axis with the
/// boundary-copy fill rule (shared by the latent edit and the experiment
/// reference images).
Tensor shift_tensor(const Tensor& t, const ShiftSpec& spec);

Tensor flip_tensor(const Tensor& t, const FlipSpec& spec);

}  // namespace efnz

#endif  // EFNZ_EDITS_HPP
