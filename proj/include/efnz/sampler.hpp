#ifndef EFNZ_SAMPLER_HPP
#define EFNZ_SAMPLER_HPP

#include <optional>
#include <string>
#include <vector>

#include "efnz/denoiser.hpp"
#include "efnz/latent.hpp"
#include "efnz/rng.hpp"
#include "efnz/schedule.hpp"
#include "efnz/tensor.hpp"

namespace efnz {

/// One reverse-process run: the visited states and the noise draws.
/// Replaying the recursion from x[T] with the stored z reproduces x[0]
/// bit for bit.
struct Trajectory {
    /// States indexed by t: x[T] is the start, x[0] the output. When the
    /// run started at T - T_skip, entries above start_t stay empty.
    std::vector<Tensor> x;
    /// 1-based noise draws z[t]; z[0] stays empty.
    std::vector<Tensor> z;
    std::optional<std::string> cond;
    std::uint64_t schedule_fingerprint = 0;
    int T = 0;
    int start_t = 0;
    bool z1_is_zero = false;

    const Tensor& x0() const { return x[0]; }
};

/// The deterministic drift of one reverse step:
///   mu_hat = sqrt(abar_prev) * P(f) + sqrt(1 - abar_prev - sigma_t^2) * f
/// with P(f) = (x_t - sqrt(1-abar_t) f) / sqrt(abar_t) and f the epsilon
/// prediction (classifier-free combination when `strength` is set).
Tensor mu_hat(const DenoiserModel& model, const Tensor& x_t, int t, const Schedule& schedule,
              const std::optional<std::string>& cond = {},
              std::optional<double> strength = {});

/// Same drift given an already-computed epsilon prediction.
Tensor mu_hat_from_eps(const Tensor& x_t, const Tensor& eps, int t, const Schedule& schedule);

/// Epsilon prediction used by the reverse step: plain conditional
/// prediction, or the classifier-free combination when strength is set.
Tensor step_eps(const DenoiserModel& model, const Tensor& x_t, int t, const Schedule& schedule,
                const std::optional<std::string>& cond, std::optional<double> strength);

/// x_{t-1} = mu + sigma * z, evaluated identically everywhere so replays
/// are bitwise reproducible.
Tensor reverse_step(const Tensor& mu, double sigma, const Tensor& z);

/// Full reverse run. With T_skip = 0 the start x_T is drawn N(0, I); with
/// T_skip > 0 the caller supplies x_init = x_{T - T_skip}. z_t are drawn
/// i.i.d. standard normal, except z_1 = 0 under the zero_final_noise
/// convention. T_skip must satisfy 0 <= T_skip < T.
Trajectory ddpm_sample(const DenoiserModel& model, const Schedule& schedule, RngStream& rng,
                       const std::optional<std::string>& cond = {},
                       std::optional<double> strength = {}, int T_skip = 0,
                       const std::optional<Tensor>& x_init = {});

/// Replays the reverse recursion from t = T - T_skip down to 1 using the
/// stored noise maps and returns x_0. T_skip > 0 requires the latent's
/// auxiliary chain (T_skip = T returns the stored x_0 unchanged).
Tensor generate_from_latent(const DenoiserModel& model, const Schedule& schedule,
                            const LatentCode& latent,
                            const std::optional<std::string>& cond = {},
                            std::optional<double> strength = {}, int T_skip = 0);

/// The native latent code of a full sampling run; the visited states
/// become the auxiliary chain.
LatentCode to_latent_code(const Trajectory& trajectory);

}  // namespace efnz

#endif  // EFNZ_SAMPLER_HPP
