#include "efnz/schedule.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace efnz {

namespace {

// sigma_t for the step from level a_t up to the level a_prev above it.
double sigma_between(double eta, double a_prev, double a_t) {
    double posterior_var = (1.0 - a_prev) / (1.0 - a_t) * (1.0 - a_t / a_prev);
    return eta * std::sqrt(std::max(0.0, posterior_var));
}

void fill_sigmas(Schedule& s) {
    s.alpha_bar_edge = s.zero_final_noise ? 1.0 : std::sqrt(s.alpha_bar[1]);
    s.sigma.assign(static_cast<std::size_t>(s.T) + 1, 0.0);
    s.sigma[1] = sigma_between(s.eta, s.alpha_bar_edge, s.alpha_bar[1]);
    for (int t = 2; t <= s.T; ++t) {
        s.sigma[t] = s.eta * std::sqrt(s.beta[t] * (1.0 - s.alpha_bar[t - 1]) /
                                       (1.0 - s.alpha_bar[t]));
    }
}

std::uint64_t fnv1a_accumulate(std::uint64_t h, const void* bytes, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t fnv1a_double(std::uint64_t h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return fnv1a_accumulate(h, &bits, sizeof bits);
}

}  // namespace

double Schedule::alpha_bar_prev(int t) const {
    require_valid_t(t);
    return t >= 2 ? alpha_bar[t - 1] : alpha_bar_edge;
}

void Schedule::require_valid_t(int t) const {
    if (t < 1 || t > T) {
        throw ConfigError("timestep " + std::to_string(t) + " out of range [1, " +
                          std::to_string(T) + "]");
    }
}

std::uint64_t Schedule::fingerprint() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const char tag[] = "efnz-schedule-v1";
    h = fnv1a_accumulate(h, tag, sizeof tag - 1);
    std::uint32_t tt = static_cast<std::uint32_t>(T);
    h = fnv1a_accumulate(h, &tt, sizeof tt);
    h = fnv1a_double(h, eta);
    unsigned char zf = zero_final_noise ? 1 : 0;
    h = fnv1a_accumulate(h, &zf, 1);
    h = fnv1a_double(h, alpha_bar_edge);
    for (int t = 1; t <= T; ++t) h = fnv1a_double(h, beta[t]);
    for (int b : base_timesteps) {
        std::uint32_t v = static_cast<std::uint32_t>(b);
        h = fnv1a_accumulate(h, &v, sizeof v);
    }
    return h;
}

Schedule make_linear_schedule(int T, double beta_start, double beta_end, double eta,
                              bool zero_final_noise) {
    if (T < 1) {
        throw ConfigError("schedule needs T >= 1, got " + std::to_string(T));
    }
    if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
        throw ConfigError("beta endpoints must satisfy 0 < beta_start <= beta_end < 1");
    }
    if (!(eta >= 0.0) || !(eta <= 1.0)) {
        throw ConfigError("eta must lie in [0, 1]");
    }

    Schedule s;
    s.T = T;
    s.eta = eta;
    s.zero_final_noise = zero_final_noise;
    s.beta.assign(static_cast<std::size_t>(T) + 1, 0.0);
    s.alpha.assign(static_cast<std::size_t>(T) + 1, 0.0);
    s.alpha_bar.assign(static_cast<std::size_t>(T) + 1, 1.0);
    s.base_timesteps.resize(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        double frac = T == 1 ? 0.0 : static_cast<double>(t - 1) / static_cast<double>(T - 1);
        s.beta[t] = beta_start + (beta_end - beta_start) * frac;
        s.alpha[t] = 1.0 - s.beta[t];
        s.alpha_bar[t] = s.alpha_bar[t - 1] * s.alpha[t];
        s.base_timesteps[static_cast<std::size_t>(t) - 1] = t;
    }
    fill_sigmas(s);
    return s;
}

double sigma_of(const Schedule& schedule, int t) {
    schedule.require_valid_t(t);
    return schedule.sigma[t];
}

Schedule respace(const Schedule& schedule, int K) {
    if (K < 1 || K > schedule.T) {
        throw ConfigError("respace steps must lie in [1, T=" + std::to_string(schedule.T) +
                          "], got " + std::to_string(K));
    }
    Schedule s;
    s.T = K;
    s.eta = schedule.eta;
    s.zero_final_noise = schedule.zero_final_noise;
    s.beta.assign(static_cast<std::size_t>(K) + 1, 0.0);
    s.alpha.assign(static_cast<std::size_t>(K) + 1, 0.0);
    s.alpha_bar.assign(static_cast<std::size_t>(K) + 1, 1.0);
    s.base_timesteps.resize(static_cast<std::size_t>(K));
    for (int i = 1; i <= K; ++i) {
        int tau = static_cast<int>((static_cast<long long>(i) * schedule.T) / K);
        int base = schedule.base_timesteps[static_cast<std::size_t>(tau) - 1];
        s.base_timesteps[static_cast<std::size_t>(i) - 1] = base;
        s.alpha_bar[i] = schedule.alpha_bar[tau];  // copied, stays bitwise equal
        s.alpha[i] = s.alpha_bar[i] / s.alpha_bar[i - 1];
        s.beta[i] = 1.0 - s.alpha[i];
    }
    fill_sigmas(s);
    return s;
}

}  // namespace efnz
