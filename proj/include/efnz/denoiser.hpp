#ifndef EFNZ_DENOISER_HPP
#define EFNZ_DENOISER_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "efnz/rng.hpp"
#include "efnz/schedule.hpp"
#include "efnz/tensor.hpp"

namespace efnz {

/// Closed-form MMSE epsilon-predictor over a declared data distribution.
///
/// For data x_0 ~ p and x = sqrt(a)*x_0 + sqrt(1-a)*eps with a = alpha_bar,
/// the predictor returns E[eps | x], which equals
/// -sqrt(1-a) * grad log p_a(x) for the marginal p_a of x. All models are
/// immutable after construction and the predict calls are pure and
/// thread-safe.
class DenoiserModel {
public:
    virtual ~DenoiserModel() = default;

    virtual const std::vector<std::size_t>& data_shape() const = 0;

    /// E[eps | x] at noise level alpha_bar in (0, 1].
    virtual Tensor predict_eps_at(const Tensor& x, double alpha_bar) const = 0;

    /// Log density of x under the level-alpha_bar marginal.
    virtual double log_marginal_at(const Tensor& x, double alpha_bar) const = 0;

    /// Draws x_0 from the data distribution.
    virtual Tensor sample_x0(RngStream& rng) const = 0;

    /// Mean of the data distribution.
    virtual Tensor mean_x0() const = 0;

    virtual bool is_conditional() const { return false; }
};

using ModelPtr = std::shared_ptr<const DenoiserModel>;

/// N(mu, s2 * I). s2 = 0 declares a point mass at mu; its epsilon
/// prediction is exact for alpha_bar < 1 and undefined at alpha_bar = 1.
class IsotropicGaussianModel final : public DenoiserModel {
public:
    IsotropicGaussianModel(Tensor mu, double s2);

    const std::vector<std::size_t>& data_shape() const override { return mu_.shape(); }
    Tensor predict_eps_at(const Tensor& x, double alpha_bar) const override;
    double log_marginal_at(const Tensor& x, double alpha_bar) const override;
    Tensor sample_x0(RngStream& rng) const override;
    Tensor mean_x0() const override { return mu_; }

    double variance() const { return s2_; }

private:
    Tensor mu_;
    double s2_;
};

/// N(mu, Sigma) with a full SPD covariance (validated at construction).
class FullGaussianModel final : public DenoiserModel {
public:
    FullGaussianModel(Tensor mu, Tensor sigma);

    const std::vector<std::size_t>& data_shape() const override { return mu_.shape(); }
    Tensor predict_eps_at(const Tensor& x, double alpha_bar) const override;
    double log_marginal_at(const Tensor& x, double alpha_bar) const override;
    Tensor sample_x0(RngStream& rng) const override;
    Tensor mean_x0() const override { return mu_; }

private:
    Tensor mu_;
    Tensor sigma_;
    Tensor chol_sigma_;  // for sampling
};

/// Mixture of Gaussian components. Responsibilities are carried in log
/// space with log-sum-exp; distant components underflow gracefully.
class GmmModel final : public DenoiserModel {
public:
    GmmModel(std::vector<double> weights, std::vector<ModelPtr> components);

    const std::vector<std::size_t>& data_shape() const override;
    Tensor predict_eps_at(const Tensor& x, double alpha_bar) const override;
    double log_marginal_at(const Tensor& x, double alpha_bar) const override;
    Tensor sample_x0(RngStream& rng) const override;
    Tensor mean_x0() const override;

    std::size_t component_count() const { return components_.size(); }

private:
    std::vector<double> weights_;
    std::vector<double> log_weights_;
    std::vector<ModelPtr> components_;
};

/// Zero-mean-structure Gaussian field on a cyclic 1D/2D grid whose
/// covariance is circulant: cov(i, j) depends only on the cyclic offset,
/// given by a symmetric kernel tensor over the grid. Diagonalized by the
/// DFT; the Fourier eigenvalues are cached at construction and every
/// per-level solve is elementwise in the spectral domain.
class StationaryFieldModel final : public DenoiserModel {
public:
    StationaryFieldModel(std::vector<std::size_t> grid_shape, Tensor kernel, double level);

    /// Same covariance structure with a spatially varying mean. A
    /// non-constant mean breaks the exact shift/flip equivariance of the
    /// constant-level field.
    StationaryFieldModel(std::vector<std::size_t> grid_shape, Tensor kernel, Tensor mean);

    const std::vector<std::size_t>& data_shape() const override { return kernel_.shape(); }
    Tensor predict_eps_at(const Tensor& x, double alpha_bar) const override;
    double log_marginal_at(const Tensor& x, double alpha_bar) const override;
    Tensor sample_x0(RngStream& rng) const override;
    Tensor mean_x0() const override;

    /// Covariance between two cells given by flat indices.
    double covariance_entry(std::size_t i, std::size_t j) const;

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    /// Cyclic squared-exponential kernel with a white nugget on the
    /// diagonal offset; marginal variance is `variance`.
    static Tensor squared_exponential_kernel(const std::vector<std::size_t>& grid_shape,
                                             double length_scale, double variance,
                                             double nugget);

    /// Anisotropic squared-exponential kernel on a 2D torus whose principal
    /// axes run along the main diagonal: correlation length `length_along`
    /// in the (1,1) direction and `length_across` in (1,-1). The oriented
    /// texture makes the field covariance asymmetric under a single-axis
    /// flip, unlike the isotropic kernel.
    static Tensor anisotropic_diagonal_kernel(const std::vector<std::size_t>& grid_shape,
                                              double length_along, double length_across,
                                              double variance, double nugget);

private:
    Tensor kernel_;
    Tensor mean_;
    std::vector<double> eigenvalues_;  // DFT of the kernel, all > 0

    mutable std::once_flag chol_once_;
    mutable Tensor chol_cov_;  // dense factor, built lazily for sampling

    const Tensor& cholesky_covariance() const;
};

/// Condition-keyed wrapper: label -> member model, plus an optional
/// unconditional member used when no label is given.
class ConditionalModel final : public DenoiserModel {
public:
    ConditionalModel(std::map<std::string, ModelPtr> members, ModelPtr unconditional);

    const std::vector<std::size_t>& data_shape() const override { return shape_; }
    Tensor predict_eps_at(const Tensor& x, double alpha_bar) const override;
    double log_marginal_at(const Tensor& x, double alpha_bar) const override;
    Tensor sample_x0(RngStream& rng) const override;
    Tensor mean_x0() const override;
    bool is_conditional() const override { return true; }

    /// Member for a label; nullopt label resolves to the unconditional
    /// member. Unknown labels raise ConditionError, as does a nullopt
    /// label with no unconditional member.
    const DenoiserModel& member(const std::optional<std::string>& cond) const;
    const DenoiserModel* unconditional() const { return unconditional_.get(); }

private:
    std::map<std::string, ModelPtr> members_;
    ModelPtr unconditional_;
    std::vector<std::size_t> shape_;
};

/// Resolves conditional wrappers; plain models ignore the label.
const DenoiserModel& resolve_condition(const DenoiserModel& model,
                                       const std::optional<std::string>& cond);

/// E[eps_t | x_t] under the level-alpha_bar_t marginal.
Tensor predict_eps(const DenoiserModel& model, const Tensor& x_t, int t,
                   const Schedule& schedule, const std::optional<std::string>& cond = {});

/// Exact posterior mean of x_0: (x_t - sqrt(1-a_t) * eps_hat) / sqrt(a_t).
Tensor posterior_x0(const DenoiserModel& model, const Tensor& x_t, int t,
                    const Schedule& schedule, const std::optional<std::string>& cond = {});

/// Log density of x_t under the level-alpha_bar_t marginal.
double log_marginal(const DenoiserModel& model, const Tensor& x_t, int t,
                    const Schedule& schedule, const std::optional<std::string>& cond = {});

/// Classifier-free combination eps_u + w * (eps_c - eps_u). The model must
/// be conditional; a missing unconditional member raises ConfigError.
Tensor cfg_predict(const DenoiserModel& model, const Tensor& x_t, int t,
                   const Schedule& schedule, const std::string& cond, double strength);

/// Draws x_0, resolving conditional wrappers first.
Tensor sample_x0(const DenoiserModel& model, RngStream& rng,
                 const std::optional<std::string>& cond = {});

}  // namespace efnz

#endif  // EFNZ_DENOISER_HPP
