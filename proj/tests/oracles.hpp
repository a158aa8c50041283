// Test-only oracles and canonical toy models, shared by the unit and
// acceptance suites. Everything here checks the library from the outside:
// finite differences against the log marginal, and Monte-Carlo regression
// against the best affine predictor.
#ifndef EFNZ_TESTS_ORACLES_HPP
#define EFNZ_TESTS_ORACLES_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "efnz/denoiser.hpp"
#include "efnz/linalg.hpp"
#include "efnz/schedule.hpp"

namespace efnz::testing {

inline ModelPtr toy2d_model() {
    return std::make_shared<IsotropicGaussianModel>(Tensor::filled({2}, 10.0), 1.0);
}

inline ModelPtr standard_normal_2d() {
    return std::make_shared<IsotropicGaussianModel>(Tensor::zeros({2}), 1.0);
}

inline ModelPtr full_gaussian_2d() {
    return std::make_shared<FullGaussianModel>(
        Tensor::from_values({2}, {1.5, -0.5}),
        Tensor::from_values({2, 2}, {2.0, 0.6, 0.6, 1.0}));
}

inline ModelPtr gmm_2d() {
    std::vector<ModelPtr> comps = {
        std::make_shared<FullGaussianModel>(
            Tensor::from_values({2}, {-6.0, -4.0}),
            Tensor::from_values({2, 2}, {2.0, 0.6, 0.6, 1.0})),
        std::make_shared<IsotropicGaussianModel>(Tensor::from_values({2}, {5.0, 3.0}), 0.5),
        std::make_shared<FullGaussianModel>(
            Tensor::from_values({2}, {8.0, -7.0}),
            Tensor::from_values({2, 2}, {1.0, -0.4, -0.4, 1.5}))};
    return std::make_shared<GmmModel>(std::vector<double>{0.5, 0.3, 0.2}, std::move(comps));
}

inline ModelPtr field_model(std::size_t n, double length_scale = 2.0) {
    std::vector<std::size_t> shape{n, n};
    Tensor k = StationaryFieldModel::squared_exponential_kernel(shape, length_scale, 1.0,
                                                                1e-4);
    return std::make_shared<StationaryFieldModel>(shape, std::move(k), 0.0);
}

/// Diagonally oriented texture; not equivariant under single-axis flips.
inline ModelPtr textured_field_model(std::size_t n) {
    std::vector<std::size_t> shape{n, n};
    Tensor k = StationaryFieldModel::anisotropic_diagonal_kernel(shape, 6.0, 1.5, 1.0, 1e-4);
    return std::make_shared<StationaryFieldModel>(shape, std::move(k), 0.0);
}

/// Central-difference gradient of the log marginal, step 1e-5 * (1 + |x_i|).
inline Tensor fd_score(const DenoiserModel& m, const Tensor& x, int t, const Schedule& s) {
    Tensor g = Tensor::zeros(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double h = 1e-5 * (1.0 + std::fabs(x[i]));
        Tensor hi = x, lo = x;
        hi[i] += h;
        lo[i] -= h;
        g[i] = (log_marginal(m, hi, t, s) - log_marginal(m, lo, t, s)) / (2.0 * h);
    }
    return g;
}

/// Worst norm-relative gap between predict_eps and -sqrt(1-abar) * fd_score
/// over `points` random (x, t) draws.
inline double score_identity_gap(const DenoiserModel& m, const Schedule& s, RngStream& rng,
                                 int points) {
    double worst = 0.0;
    for (int p = 0; p < points; ++p) {
        int t = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(s.T));
        Tensor x = randn(m.data_shape(), rng);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = 2.0 + 3.0 * x[i];
        Tensor eps = predict_eps(m, x, t, s);
        Tensor fd = fd_score(m, x, t, s);
        double scale = -std::sqrt(1.0 - s.alpha_bar[t]);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < eps.size(); ++i) {
            double e = scale * fd[i];
            num += (eps[i] - e) * (eps[i] - e);
            den += e * e;
        }
        worst = std::max(worst, std::sqrt(num) / (den > 1e-24 ? std::sqrt(den) : 1.0));
    }
    return worst;
}

struct MmseCheck {
    double predictor_mse = 0.0;
    double linear_mse = 0.0;
    double se = 0.0;
};

/// Regresses eps on x_t over Monte-Carlo pairs at fixed t and compares the
/// analytic predictor's residual against the best affine fit.
inline MmseCheck mmse_regression(const DenoiserModel& m, const Schedule& s, int t,
                                 std::size_t n, RngStream& rng) {
    std::size_t d = 1;
    for (std::size_t e : m.data_shape()) d *= e;
    double a = s.alpha_bar[t];
    double c0 = std::sqrt(a), ce = std::sqrt(1.0 - a);

    std::vector<Tensor> xs(n), epss(n), preds(n);
    for (std::size_t i = 0; i < n; ++i) {
        Tensor x0 = sample_x0(m, rng);
        Tensor eps = randn(m.data_shape(), rng);
        Tensor xt = x0;
        for (std::size_t k = 0; k < xt.size(); ++k) xt[k] = c0 * x0[k] + ce * eps[k];
        xs[i] = xt;
        epss[i] = eps;
        preds[i] = m.predict_eps_at(xt, a);
    }

    Tensor gram = Tensor::zeros({d + 1, d + 1});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r <= d; ++r) {
            double vr = r < d ? xs[i][r] : 1.0;
            for (std::size_t c = r; c <= d; ++c) {
                double vc = c < d ? xs[i][c] : 1.0;
                gram[r * (d + 1) + c] += vr * vc;
            }
        }
    }
    for (std::size_t r = 0; r <= d; ++r) {
        for (std::size_t c = 0; c < r; ++c) gram[r * (d + 1) + c] = gram[c * (d + 1) + r];
        gram[r * (d + 1) + r] += 1e-9;
    }
    Tensor chol = cholesky(gram);
    std::vector<Tensor> coef(d);
    for (std::size_t j = 0; j < d; ++j) {
        Tensor rhs = Tensor::zeros({d + 1});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t r = 0; r <= d; ++r) {
                rhs[r] += (r < d ? xs[i][r] : 1.0) * epss[i][j];
            }
        }
        coef[j] = solve_with_cholesky(chol, rhs);
    }

    MmseCheck out;
    std::vector<double> per_sample(n);
    for (std::size_t i = 0; i < n; ++i) {
        double pe = 0.0, le = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double dp = epss[i][j] - preds[i][j];
            pe += dp * dp;
            double fit = coef[j][d];
            for (std::size_t r = 0; r < d; ++r) fit += coef[j][r] * xs[i][r];
            le += (epss[i][j] - fit) * (epss[i][j] - fit);
        }
        per_sample[i] = pe / static_cast<double>(d);
        out.predictor_mse += pe / static_cast<double>(d);
        out.linear_mse += le / static_cast<double>(d);
    }
    out.predictor_mse /= static_cast<double>(n);
    out.linear_mse /= static_cast<double>(n);
    double var = 0.0;
    for (double v : per_sample) {
        var += (v - out.predictor_mse) * (v - out.predictor_mse);
    }
    out.se = std::sqrt(var / static_cast<double>(n - 1) / static_cast<double>(n));
    return out;
}

}  // namespace efnz::testing

#endif  // EFNZ_TESTS_ORACLES_HPP
