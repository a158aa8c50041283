#include "efnz/inversion.hpp"

#include <cmath>

namespace efnz {

namespace {

// Epsilon prediction at an arbitrary alpha_bar level, honoring the
// classifier-free combination when strength is set.
Tensor level_eps(const DenoiserModel& model, const Tensor& x, double level,
                 const std::optional<std::string>& cond, std::optional<double> strength) {
    if (strength) {
        if (!cond) throw ConfigError("classifier-free strength requires a condition label");
        const auto* c = dynamic_cast<const ConditionalModel*>(&model);
        if (!c) throw ConfigError("classifier-free combination needs a conditional model");
        if (!c->unconditional()) {
            throw ConfigError("classifier-free combination needs an unconditional member");
        }
        Tensor eps_c = c->member(cond).predict_eps_at(x, level);
        Tensor eps_u = c->unconditional()->predict_eps_at(x, level);
        for (std::size_t i = 0; i < eps_u.size(); ++i) {
            eps_u[i] = eps_u[i] + *strength * (eps_c[i] - eps_u[i]);
        }
        return eps_u;
    }
    return resolve_condition(model, cond).predict_eps_at(x, level);
}

}  // namespace

std::vector<Tensor> build_aux_chain(const Tensor& x_0, const Schedule& schedule,
                                    RngStream& rng) {
    require_finite(x_0, "build_aux_chain input");
    std::vector<Tensor> chain(static_cast<std::size_t>(schedule.T) + 1);
    chain[0] = x_0;
    for (int t = 1; t <= schedule.T; ++t) {
        double a = schedule.alpha_bar[t];
        double c0 = std::sqrt(a);
        double ce = std::sqrt(1.0 - a);
        Tensor eps = randn(x_0.shape(), rng);
        Tensor xt = x_0;
        for (std::size_t i = 0; i < xt.size(); ++i) xt[i] = c0 * x_0[i] + ce * eps[i];
        chain[static_cast<std::size_t>(t)] = std::move(xt);
    }
    return chain;
}

LatentCode noise_from_chain(const std::vector<Tensor>& chain, const DenoiserModel& model,
                            const Schedule& schedule, const std::optional<std::string>& cond,
                            std::optional<double> strength, bool reproject) {
    const int T = schedule.T;
    if (chain.size() != static_cast<std::size_t>(T) + 1) {
        throw ConfigError("chain must have T+1 states, got " + std::to_string(chain.size()));
    }
    const int t_min = schedule.zero_final_noise ? 2 : 1;
    for (int t = t_min; t <= T; ++t) {
        if (!(schedule.sigma[t] > 0.0)) {
            throw NumericError("sigma_" + std::to_string(t) +
                               " is zero, so noise extraction would divide by zero; use "
                               "ddim_invert for the deterministic eta=0 scheme");
        }
    }

    LatentCode code;
    code.T = T;
    code.x_T = chain[static_cast<std::size_t>(T)];
    code.z.resize(static_cast<std::size_t>(T) + 1);
    code.aux_chain = chain;
    code.method = InversionMethod::EditFriendly;
    code.cond = cond;
    code.schedule_fingerprint = schedule.fingerprint();
    code.z1_is_zero = schedule.zero_final_noise;

    Tensor x_above = chain[static_cast<std::size_t>(T)];
    for (int t = T; t >= t_min; --t) {
        const Tensor& target = chain[static_cast<std::size_t>(t) - 1];
        Tensor mu = mu_hat(model, x_above, t, schedule, cond, strength);
        require_same_shape(mu, target, "noise_from_chain");
        double sigma = schedule.sigma[t];
        Tensor z = target;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = (target[i] - mu[i]) / sigma;
        if (t > t_min) {
            // Re-projection: walk on from the float-exact replay value,
            // not the chain value, so generation retraces every state bitwise.
            x_above = reproject ? reverse_step(mu, sigma, z) : target;
        }
        code.z[static_cast<std::size_t>(t)] = std::move(z);
    }
    if (t_min == 2) {
        code.z[1] = Tensor::zeros(chain[0].shape());
    }
    return code;
}

LatentCode edit_friendly_invert(const Tensor& x_0, const DenoiserModel& model,
                                const Schedule& schedule, RngStream& rng,
                                const std::optional<std::string>& cond,
                                std::optional<double> strength) {
    std::vector<Tensor> chain = build_aux_chain(x_0, schedule, rng);
    LatentCode code = noise_from_chain(chain, model, schedule, cond, strength);
    code.method = InversionMethod::EditFriendly;
    return code;
}

LatentCode cyclediffusion_invert(const Tensor& x_0, const DenoiserModel& model,
                                 const Schedule& schedule, RngStream& rng,
                                 const std::optional<std::string>& cond,
                                 std::optional<double> strength) {
    require_finite(x_0, "cyclediffusion_invert input");
    const int T = schedule.T;
    std::vector<Tensor> chain(static_cast<std::size_t>(T) + 1);
    chain[static_cast<std::size_t>(T)] = randn(x_0.shape(), rng);
    for (int t = T; t >= 1; --t) {
        const Tensor& xt = chain[static_cast<std::size_t>(t)];
        double a = schedule.alpha_bar[t];
        double c0 = std::sqrt(a);
        double ce = std::sqrt(1.0 - a);
        Tensor eps_true = xt;
        for (std::size_t i = 0; i < eps_true.size(); ++i) {
            eps_true[i] = (xt[i] - c0 * x_0[i]) / ce;
        }
        Tensor mu = mu_hat_from_eps(xt, eps_true, t, schedule);
        Tensor w = (t == 1 && schedule.zero_final_noise) ? Tensor::zeros(x_0.shape())
                                                         : randn(x_0.shape(), rng);
        chain[static_cast<std::size_t>(t) - 1] = reverse_step(mu, schedule.sigma[t], w);
    }
    // The endpoint is the recipe's own last posterior step. With the true
    // eps substituted it equals the input exactly when sigma_1 = 0, and sits
    // within the output-level residual sigma_1 otherwise; forcing it onto the
    // input instead would imprint the final-step information into z_1 and
    // break the native-like noise statistics this baseline is defined by.
    LatentCode code = noise_from_chain(chain, model, schedule, cond, strength);
    code.method = InversionMethod::CycleDiffusion;
    return code;
}

LatentCode ddim_invert(const Tensor& x_0, const DenoiserModel& model, const Schedule& schedule,
                       const std::optional<std::string>& cond,
                       std::optional<double> strength) {
    require_finite(x_0, "ddim_invert input");
    const int T = schedule.T;
    std::vector<Tensor> chain(static_cast<std::size_t>(T) + 1);
    chain[0] = x_0;
    Tensor x = x_0;
    for (int t = 1; t <= T; ++t) {
        double below = schedule.alpha_bar_prev(t);
        // The level-1 predictor is degenerate; fall back to the step's own
        // level, which only arises under the zero_final_noise convention.
        double eval_level = below < 1.0 ? below : schedule.alpha_bar[t];
        Tensor eps = level_eps(model, x, eval_level, cond, strength);
        double a_t = schedule.alpha_bar[t];
        double pred_in = 1.0 / std::sqrt(below);
        double pred_eps = -std::sqrt(1.0 - below) / std::sqrt(below);
        Tensor next = x;
        for (std::size_t i = 0; i < next.size(); ++i) {
            double pred_x0 = pred_in * x[i] + pred_eps * eps[i];
            next[i] = std::sqrt(a_t) * pred_x0 + std::sqrt(1.0 - a_t) * eps[i];
        }
        x = std::move(next);
        chain[static_cast<std::size_t>(t)] = x;
    }

    LatentCode code;
    code.T = T;
    code.x_T = chain[static_cast<std::size_t>(T)];
    code.z.resize(static_cast<std::size_t>(T) + 1);
    for (int t = 1; t <= T; ++t) {
        code.z[static_cast<std::size_t>(t)] = Tensor::zeros(x_0.shape());
    }
    code.aux_chain = std::move(chain);
    code.method = InversionMethod::Ddim;
    code.cond = cond;
    code.schedule_fingerprint = schedule.fingerprint();
    code.z1_is_zero = schedule.zero_final_noise;
    return code;
}

}  // namespace efnz
