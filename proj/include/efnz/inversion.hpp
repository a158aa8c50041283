#ifndef EFNZ_INVERSION_HPP
#define EFNZ_INVERSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "efnz/denoiser.hpp"
#include "efnz/latent.hpp"
#include "efnz/rng.hpp"
#include "efnz/sampler.hpp"
#include "efnz/schedule.hpp"

namespace efnz {

/// Auxiliary chain x_t = sqrt(abar_t) x_0 + sqrt(1-abar_t) eps_t with a
/// fresh independent standard-normal eps_t per t. Returns T+1 tensors with
/// x_0 at index 0.
std::vector<Tensor> build_aux_chain(const Tensor& x_0, const Schedule& schedule,
                                    RngStream& rng);

/// Extracts consistent noise maps from any T+1-state chain:
///   z_t = (x_{t-1} - mu_hat_t(x_t)) / sigma_t
/// walking t = T..1 (t = T..2 with z_1 = 0 under the zero_final_noise
/// convention), re-projecting x_{t-1} <- mu_hat + sigma_t z_t before the
/// next step so rounding cannot accumulate. Requires sigma_t > 0 on every
/// extracted step; eta = 0 raises NumericError naming ddim_invert as the
/// deterministic-scheme alternative.
///
/// `reproject` exists for the error-accumulation ablation; leave it on.
LatentCode noise_from_chain(const std::vector<Tensor>& chain, const DenoiserModel& model,
                            const Schedule& schedule,
                            const std::optional<std::string>& cond = {},
                            std::optional<double> strength = {}, bool reproject = true);

/// Edit-friendly inversion: build_aux_chain then noise_from_chain. The
/// auxiliary chain is stored in the returned code. Fresh randomness gives
/// a different consistent code on every call.
LatentCode edit_friendly_invert(const Tensor& x_0, const DenoiserModel& model,
                                const Schedule& schedule, RngStream& rng,
                                const std::optional<std::string>& cond = {},
                                std::optional<double> strength = {});

/// Baseline that samples the chain from the exact diffusion posterior:
/// x_T ~ N(0, I); walking down, the true eps_t isolated from x_t and the
/// real x_0 stands in for the model prediction inside mu_hat, then
/// x_{t-1} = mu_hat + sigma_t w_t with fresh w_t. The chain endpoint is
/// anchored to x_0 exactly, and the stored z_t are re-extracted against
/// the model's own predictor so the code is consistent.
LatentCode cyclediffusion_invert(const Tensor& x_0, const DenoiserModel& model,
                                 const Schedule& schedule, RngStream& rng,
                                 const std::optional<std::string>& cond = {},
                                 std::optional<double> strength = {});

/// Approximate deterministic inversion of the eta = 0 scheme: each upward
/// step reuses the epsilon prediction at the known endpoint (at that
/// endpoint's own noise level). All z_t are zero; consistency is
/// approximate, improving with larger T.
LatentCode ddim_invert(const Tensor& x_0, const DenoiserModel& model, const Schedule& schedule,
                       const std::optional<std::string>& cond = {},
                       std::optional<double> strength = {});

}  // namespace efnz

#endif  // EFNZ_INVERSION_HPP
