#include "efnz/sampler.hpp"

#include <cmath>

namespace efnz {

Tensor step_eps(const DenoiserModel& model, const Tensor& x_t, int t, const Schedule& schedule,
                const std::optional<std::string>& cond, std::optional<double> strength) {
    if (strength) {
        if (!cond) {
            throw ConfigError("classifier-free strength requires a condition label");
        }
        return cfg_predict(model, x_t, t, schedule, *cond, *strength);
    }
    return predict_eps(model, x_t, t, schedule, cond);
}

Tensor mu_hat_from_eps(const Tensor& x_t, const Tensor& eps, int t, const Schedule& schedule) {
    double a_t = schedule.alpha_bar[t];
    double a_prev = schedule.alpha_bar_prev(t);
    double sigma = schedule.sigma[t];
    double p_in = 1.0 / std::sqrt(a_t);
    double p_eps = -std::sqrt(1.0 - a_t) / std::sqrt(a_t);
    double c_p = std::sqrt(a_prev);
    double c_d = std::sqrt(std::max(0.0, 1.0 - a_prev - sigma * sigma));
    Tensor out = x_t;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double pred_x0 = p_in * x_t[i] + p_eps * eps[i];
        out[i] = c_p * pred_x0 + c_d * eps[i];
    }
    return out;
}

Tensor mu_hat(const DenoiserModel& model, const Tensor& x_t, int t, const Schedule& schedule,
              const std::optional<std::string>& cond, std::optional<double> strength) {
    Tensor eps = step_eps(model, x_t, t, schedule, cond, strength);
    return mu_hat_from_eps(x_t, eps, t, schedule);
}

Tensor reverse_step(const Tensor& mu, double sigma, const Tensor& z) {
    require_same_shape(mu, z, "reverse_step");
    Tensor out = mu;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mu[i] + sigma * z[i];
    return out;
}

Trajectory ddpm_sample(const DenoiserModel& model, const Schedule& schedule, RngStream& rng,
                       const std::optional<std::string>& cond, std::optional<double> strength,
                       int T_skip, const std::optional<Tensor>& x_init) {
    const int T = schedule.T;
    if (T_skip < 0 || T_skip >= T) {
        throw ConfigError("ddpm_sample needs 0 <= T_skip < T, got " + std::to_string(T_skip));
    }
    if (T_skip > 0 && !x_init) {
        throw ConfigError("ddpm_sample with T_skip > 0 needs the starting state x_init");
    }
    const auto& shape = resolve_condition(model, cond).data_shape();
    const int start = T - T_skip;

    Trajectory traj;
    traj.T = T;
    traj.start_t = start;
    traj.cond = cond;
    traj.z1_is_zero = schedule.zero_final_noise;
    traj.schedule_fingerprint = schedule.fingerprint();
    traj.x.resize(static_cast<std::size_t>(T) + 1);
    traj.z.resize(static_cast<std::size_t>(T) + 1);

    Tensor x = x_init ? *x_init : randn(shape, rng);
    if (x.shape() != shape) {
        throw ShapeError("x_init shape does not match the model data shape");
    }
    traj.x[static_cast<std::size_t>(start)] = x;
    for (int t = start; t >= 1; --t) {
        Tensor z = (t == 1 && schedule.zero_final_noise) ? Tensor::zeros(shape)
                                                         : randn(shape, rng);
        Tensor mu = mu_hat(model, x, t, schedule, cond, strength);
        x = reverse_step(mu, schedule.sigma[t], z);
        traj.z[static_cast<std::size_t>(t)] = std::move(z);
        traj.x[static_cast<std::size_t>(t) - 1] = x;
    }
    return traj;
}

Tensor generate_from_latent(const DenoiserModel& model, const Schedule& schedule,
                            const LatentCode& latent, const std::optional<std::string>& cond,
                            std::optional<double> strength, int T_skip) {
    latent.require_compatible(schedule);
    const int T = schedule.T;
    if (T_skip < 0 || T_skip > T) {
        throw ConfigError("generate_from_latent needs 0 <= T_skip <= T");
    }
    const int start = T - T_skip;
    Tensor x;
    if (T_skip == 0) {
        x = latent.x_T;
    } else {
        if (!latent.has_aux_chain()) {
            throw ConfigError("T_skip > 0 requires a latent with an auxiliary chain");
        }
        x = latent.aux_chain[static_cast<std::size_t>(start)];
    }
    for (int t = start; t >= 1; --t) {
        Tensor mu = mu_hat(model, x, t, schedule, cond, strength);
        x = reverse_step(mu, schedule.sigma[t], latent.z[static_cast<std::size_t>(t)]);
    }
    return x;
}

LatentCode to_latent_code(const Trajectory& trajectory) {
    if (trajectory.start_t != trajectory.T) {
        throw ConfigError("only full trajectories (T_skip = 0) carry a complete latent code");
    }
    LatentCode code;
    code.x_T = trajectory.x[static_cast<std::size_t>(trajectory.T)];
    code.z = trajectory.z;
    code.aux_chain = trajectory.x;
    code.method = InversionMethod::Native;
    code.cond = trajectory.cond;
    code.schedule_fingerprint = trajectory.schedule_fingerprint;
    code.T = trajectory.T;
    code.z1_is_zero = trajectory.z1_is_zero;
    return code;
}

}  // namespace efnz
