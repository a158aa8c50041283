#ifndef EFNZ_SCHEDULE_HPP
#define EFNZ_SCHEDULE_HPP

#include <cstdint>
#include <vector>

#include "efnz/error.hpp"

namespace efnz {

/// Diffusion variance timetable: beta_t, alpha_t, alpha_bar_t and the
/// eta-parameterized reverse-process noise scales sigma_t.
///
/// Arrays are 1-based in t: beta[t], alpha[t], sigma[t] are valid for
/// t in [1, T]; alpha_bar[t] for t in [0, T] with alpha_bar[0] = 1.
///
/// sigma_t = eta * sqrt(beta_t * (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t)),
/// the square root of the standard posterior variance: eta = 1 gives
/// ancestral (DDPM) sampling, eta = 0 the deterministic DDIM scheme.
///
/// The t = 1 boundary. The level that the reverse process maps x_1 onto is
/// alpha_bar_edge, not alpha_bar[0]:
///   - zero_final_noise = false (default): alpha_bar_edge = sqrt(alpha_bar[1]),
///     a level strictly between alpha_bar[1] and 1. sigma_1 > 0, so the final
///     step is stochastic and noise extraction covers every step; generated
///     samples carry a residual noise variance of 1 - alpha_bar_edge (about
///     beta_1 / 2). This is the convention used by the large pretrained
///     samplers whose final cumulative-alpha is pinned below 1.
///   - zero_final_noise = true: alpha_bar_edge = 1. sigma_1 = 0, the final
///     step adds no noise and returns the posterior x_0 estimate, and z_1 is
///     fixed to zero. Exact inversion of arbitrary inputs is impossible in
///     this mode since no step can absorb the final-step residual.
struct Schedule {
    int T = 0;
    double eta = 1.0;
    bool zero_final_noise = false;
    double alpha_bar_edge = 1.0;
    std::vector<double> beta;       // [0..T], index 0 unused
    std::vector<double> alpha;      // [0..T], index 0 unused
    std::vector<double> alpha_bar;  // [0..T], alpha_bar[0] = 1
    std::vector<double> sigma;      // [0..T], index 0 unused
    /// Base timesteps each step maps to; {1..T} when not respaced.
    std::vector<int> base_timesteps;

    /// alpha_bar of the level below t: alpha_bar[t-1] for t >= 2,
    /// alpha_bar_edge for t = 1.
    double alpha_bar_prev(int t) const;

    void require_valid_t(int t) const;

    /// Stable 64-bit hash of everything that affects the dynamics.
    std::uint64_t fingerprint() const;
};

/// Linear beta schedule from beta_start to beta_end inclusive over T steps.
/// Preconditions: T >= 1, 0 < beta_start <= beta_end < 1, eta in [0,1];
/// violations raise ConfigError.
Schedule make_linear_schedule(int T, double beta_start, double beta_end, double eta,
                              bool zero_final_noise = false);

/// sigma_t. Throws ConfigError for t outside [1, T].
double sigma_of(const Schedule& schedule, int t);

/// K-step schedule over the uniform base-timestep subsequence
/// tau_i = floor(i*T/K), i = 1..K. Retained alpha_bar values are copied
/// bitwise; per-step alpha is recomputed as the ratio of consecutive
/// retained alpha_bar. Throws ConfigError unless 1 <= K <= T.
Schedule respace(const Schedule& schedule, int K);

}  // namespace efnz

#endif  // EFNZ_SCHEDULE_HPP
