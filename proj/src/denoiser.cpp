#include "efnz/denoiser.hpp"

#include <algorithm>
#include <cmath>

#include "efnz/linalg.hpp"

namespace efnz {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

Tensor with_shape(const std::vector<std::size_t>& shape, std::vector<double> values) {
    return Tensor::from_values(shape, std::move(values));
}

void require_level(double alpha_bar) {
    if (!(alpha_bar > 0.0) || !(alpha_bar <= 1.0)) {
        throw ConfigError("alpha_bar level must lie in (0, 1], got " +
                          std::to_string(alpha_bar));
    }
}

// In-place complex DFT along every axis of a row-major grid.
// forward: X_k = sum_j x_j e^{-2 pi i jk/n}; inverse carries the 1/n.
void dft_all_axes(const std::vector<std::size_t>& shape, std::vector<double>& re,
                  std::vector<double>& im, bool inverse) {
    const std::size_t total = re.size();
    std::size_t stride = 1;
    for (std::size_t axis = shape.size(); axis-- > 0;) {
        const std::size_t n = shape[axis];
        std::vector<double> cos_t(n * n), sin_t(n * n);
        const double sign = inverse ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                double ang = sign * 2.0 * M_PI * static_cast<double>(j * k % n) /
                             static_cast<double>(n);
                cos_t[j * n + k] = std::cos(ang);
                sin_t[j * n + k] = std::sin(ang);
            }
        }
        std::vector<double> line_re(n), line_im(n);
        const std::size_t block = stride * n;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t j = 0; j < n; ++j) {
                    line_re[j] = re[base + off + j * stride];
                    line_im[j] = im[base + off + j * stride];
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double acc_re = 0.0, acc_im = 0.0;
                    const double* ct = cos_t.data();
                    const double* st = sin_t.data();
                    for (std::size_t j = 0; j < n; ++j) {
                        double c = ct[j * n + k];
                        double s = st[j * n + k];
                        acc_re += line_re[j] * c - line_im[j] * s;
                        acc_im += line_re[j] * s + line_im[j] * c;
                    }
                    if (inverse) {
                        acc_re /= static_cast<double>(n);
                        acc_im /= static_cast<double>(n);
                    }
                    re[base + off + k * stride] = acc_re;
                    im[base + off + k * stride] = acc_im;
                }
            }
        }
        stride *= n;
    }
}

std::vector<std::size_t> flat_to_coords(std::size_t flat, const std::vector<std::size_t>& shape) {
    std::vector<std::size_t> c(shape.size());
    for (std::size_t axis = shape.size(); axis-- > 0;) {
        c[axis] = flat % shape[axis];
        flat /= shape[axis];
    }
    return c;
}

std::size_t coords_to_flat(const std::vector<std::size_t>& c,
                           const std::vector<std::size_t>& shape) {
    std::size_t flat = 0;
    for (std::size_t axis = 0; axis < shape.size(); ++axis) flat = flat * shape[axis] + c[axis];
    return flat;
}

}  // namespace

// ---------------------------------------------------------------------------
// IsotropicGaussianModel

IsotropicGaussianModel::IsotropicGaussianModel(Tensor mu, double s2)
    : mu_(std::move(mu)), s2_(s2) {
    if (mu_.empty()) throw ShapeError("isotropic gaussian needs a non-empty mean tensor");
    if (!(s2 >= 0.0) || !std::isfinite(s2)) {
        throw ConfigError("isotropic gaussian variance must be finite and >= 0");
    }
}

Tensor IsotropicGaussianModel::predict_eps_at(const Tensor& x, double alpha_bar) const {
    require_level(alpha_bar);
    double v = alpha_bar * s2_ + (1.0 - alpha_bar);
    if (!(v > 0.0)) {
        throw NumericError("epsilon prediction undefined: marginal variance is zero "
                           "(point mass at alpha_bar = 1)");
    }
    double scale = std::sqrt(1.0 - alpha_bar) / v;
    double m = std::sqrt(alpha_bar);
    Tensor out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * (x[i] - m * mu_[i]);
    return out;
}

double IsotropicGaussianModel::log_marginal_at(const Tensor& x, double alpha_bar) const {
    require_level(alpha_bar);
    double v = alpha_bar * s2_ + (1.0 - alpha_bar);
    if (!(v > 0.0)) throw NumericError("log marginal undefined: zero marginal variance");
    double m = std::sqrt(alpha_bar);
    double q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - m * mu_[i];
        q += d * d;
    }
    double d = static_cast<double>(x.size());
    return -0.5 * d * (kLog2Pi + std::log(v)) - 0.5 * q / v;
}

Tensor IsotropicGaussianModel::sample_x0(RngStream& rng) const {
    double sd = std::sqrt(s2_);
    Tensor out = mu_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += sd * rng.next_normal();
    return out;
}

// ---------------------------------------------------------------------------
// FullGaussianModel

FullGaussianModel::FullGaussianModel(Tensor mu, Tensor sigma)
    : mu_(std::move(mu)), sigma_(std::move(sigma)) {
    std::size_t n = mu_.size();
    if (sigma_.shape().size() != 2 || sigma_.shape()[0] != n || sigma_.shape()[1] != n) {
        throw ShapeError("covariance must be square over the mean size " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(sigma_[i * n + j] - sigma_[j * n + i]) > 1e-10) {
                throw NumericError("covariance is not symmetric within 1e-10");
            }
        }
    }
    chol_sigma_ = cholesky(sigma_);  // rejects non-SPD input
}

Tensor FullGaussianModel::predict_eps_at(const Tensor& x, double alpha_bar) const {
    require_level(alpha_bar);
    std::size_t n = mu_.size();
    double m = std::sqrt(alpha_bar);
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) resid[i] = x[i] - m * mu_[i];

    Tensor s = sigma_ * alpha_bar;
    for (std::size_t i = 0; i < n; ++i) s[i * n + i] += 1.0 - alpha_bar;
    Tensor sol = solve_with_cholesky(cholesky(s), with_shape({n}, std::move(resid)));
    double scale = std::sqrt(1.0 - alpha_bar);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * sol[i];
    return with_shape(mu_.shape(), std::move(out));
}

double FullGaussianModel::log_marginal_at(const Tensor& x, double alpha_bar) const {
    require_level(alpha_bar);
    std::size_t n = mu_.size();
    double m = std::sqrt(alpha_bar);
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) resid[i] = x[i] - m * mu_[i];

    Tensor s = sigma_ * alpha_bar;
    for (std::size_t i = 0; i < n; ++i) s[i * n + i] += 1.0 - alpha_bar;
    Tensor l = cholesky(s);
    Tensor y = forward_substitute(l, with_shape({n}, std::move(resid)));
    double q = dot(y, y);
    return -0.5 * static_cast<double>(n) * kLog2Pi - log_diag_sum(l) - 0.5 * q;
}

Tensor FullGaussianModel::sample_x0(RngStream& rng) const {
    std::size_t n = mu_.size();
    Tensor w = randn({n}, rng);
    Tensor out = mu_;
    const double* L = chol_sigma_.data();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += L[i * n + j] * w[j];
        out[i] += s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// GmmModel

GmmModel::GmmModel(std::vector<double> weights, std::vector<ModelPtr> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
    if (components_.empty() || components_.size() != weights_.size()) {
        throw ConfigError("mixture needs one weight per component");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw ConfigError("mixture weights must be nonnegative");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw ConfigError("mixture weights must sum to 1 within 1e-12");
    }
    for (const auto& c : components_) {
        if (!c) throw ConfigError("mixture component is null");
        if (c->is_conditional()) throw ConfigError("mixture components cannot be conditional");
        if (c->data_shape() != components_.front()->data_shape()) {
            throw ShapeError("mixture components disagree on data shape");
        }
    }
    log_weights_.resize(weights_.size());
    for (std::size_t k = 0; k < weights_.size(); ++k) log_weights_[k] = std::log(weights_[k]);
}

const std::vector<std::size_t>& GmmModel::data_shape() const {
    return components_.front()->data_shape();
}

Tensor GmmModel::predict_eps_at(const Tensor& x, double alpha_bar) const {
    std::size_t kc = components_.size();
    std::vector<double> logp(kc);
    double top = -HUGE_VAL;
    for (std::size_t k = 0; k < kc; ++k) {
        logp[k] = log_weights_[k] + components_[k]->log_marginal_at(x, alpha_bar);
        top = std::max(top, logp[k]);
    }
    double denom = 0.0;
    for (std::size_t k = 0; k < kc; ++k) denom += std::exp(logp[k] - top);

    Tensor out = Tensor::zeros(x.shape());
    for (std::size_t k = 0; k < kc; ++k) {
        double resp = std::exp(logp[k] - top) / denom;
        if (resp == 0.0) continue;
        Tensor e = components_[k]->predict_eps_at(x, alpha_bar);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += resp * e[i];
    }
    return out;
}

double GmmModel::log_marginal_at(const Tensor& x, double alpha_bar) const {
    double top = -HUGE_VAL;
    std::vector<double> logp(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) {
        logp[k] = log_weights_[k] + components_[k]->log_marginal_at(x, alpha_bar);
        top = std::max(top, logp[k]);
    }
    double acc = 0.0;
    for (double lp : logp) acc += std::exp(lp - top);
    return top + std::log(acc);
}

Tensor GmmModel::sample_x0(RngStream& rng) const {
    double u = rng.next_uniform();
    double cum = 0.0;
    std::size_t pick = components_.size() - 1;
    for (std::size_t k = 0; k < components_.size(); ++k) {
        cum += weights_[k];
        if (u < cum) {
            pick = k;
            break;
        }
    }
    return components_[pick]->sample_x0(rng);
}

Tensor GmmModel::mean_x0() const {
    Tensor out = Tensor::zeros(data_shape());
    for (std::size_t k = 0; k < components_.size(); ++k) {
        Tensor m = components_[k]->mean_x0();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights_[k] * m[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// StationaryFieldModel

StationaryFieldModel::StationaryFieldModel(std::vector<std::size_t> grid_shape, Tensor kernel,
                                           double level)
    : StationaryFieldModel(grid_shape, std::move(kernel),
                           Tensor::filled(grid_shape, level)) {}

StationaryFieldModel::StationaryFieldModel(std::vector<std::size_t> grid_shape, Tensor kernel,
                                           Tensor mean)
    : kernel_(std::move(kernel)), mean_(std::move(mean)) {
    if (mean_.shape() != grid_shape) {
        throw ShapeError("field mean must match the grid shape");
    }
    if (grid_shape.size() < 1 || grid_shape.size() > 2) {
        throw ShapeError("stationary field supports 1D and 2D grids");
    }
    if (kernel_.shape() != grid_shape) {
        throw ShapeError("kernel shape must equal the grid shape");
    }
    const auto& shape = kernel_.shape();
    std::size_t n = kernel_.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto c = flat_to_coords(i, shape);
        for (std::size_t a = 0; a < c.size(); ++a) c[a] = (shape[a] - c[a]) % shape[a];
        std::size_t mirror = coords_to_flat(c, shape);
        if (std::fabs(kernel_[i] - kernel_[mirror]) > 1e-12) {
            throw NumericError("stationary-field kernel is not symmetric under negation");
        }
    }

    std::vector<double> re(kernel_.values());
    std::vector<double> im(n, 0.0);
    dft_all_axes(shape, re, im, /*inverse=*/false);
    eigenvalues_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(im[i]) > 1e-9) {
            throw NumericError("kernel spectrum has a non-real component; kernel must be "
                               "symmetric");
        }
        if (!(re[i] > 0.0)) {
            throw NumericError("stationary-field covariance is not positive definite "
                               "(Fourier eigenvalue " + std::to_string(re[i]) + ")");
        }
        eigenvalues_[i] = re[i];
    }
}

Tensor StationaryFieldModel::predict_eps_at(const Tensor& x, double alpha_bar) const {
    require_level(alpha_bar);
    double c0 = std::sqrt(alpha_bar);
    std::size_t n = x.size();
    std::vector<double> re(n), im(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) re[i] = x[i] - c0 * mean_[i];
    dft_all_axes(x.shape(), re, im, /*inverse=*/false);
    for (std::size_t i = 0; i < n; ++i) {
        double s = alpha_bar * eigenvalues_[i] + (1.0 - alpha_bar);
        re[i] /= s;
        im[i] /= s;
    }
    dft_all_axes(x.shape(), re, im, /*inverse=*/true);
    double scale = std::sqrt(1.0 - alpha_bar);
    for (std::size_t i = 0; i < n; ++i) re[i] *= scale;
    return with_shape(x.shape(), std::move(re));
}

double StationaryFieldModel::log_marginal_at(const Tensor& x, double alpha_bar) const {
    require_level(alpha_bar);
    double c0 = std::sqrt(alpha_bar);
    std::size_t n = x.size();
    std::vector<double> re(n), im(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) re[i] = x[i] - c0 * mean_[i];
    dft_all_axes(x.shape(), re, im, /*inverse=*/false);
    double logdet = 0.0, q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = alpha_bar * eigenvalues_[i] + (1.0 - alpha_bar);
        logdet += std::log(s);
        q += (re[i] * re[i] + im[i] * im[i]) / s;
    }
    q /= static_cast<double>(n);
    return -0.5 * static_cast<double>(n) * kLog2Pi - 0.5 * logdet - 0.5 * q;
}

double StationaryFieldModel::covariance_entry(std::size_t i, std::size_t j) const {
    const auto& shape = kernel_.shape();
    auto ci = flat_to_coords(i, shape);
    auto cj = flat_to_coords(j, shape);
    for (std::size_t a = 0; a < ci.size(); ++a) {
        ci[a] = (ci[a] + shape[a] - cj[a]) % shape[a];
    }
    return kernel_[coords_to_flat(ci, shape)];
}

const Tensor& StationaryFieldModel::cholesky_covariance() const {
    std::call_once(chol_once_, [this] {
        std::size_t n = kernel_.size();
        if (n > kMaxDenseDim) {
            throw NumericError("field too large for dense sampling factorization");
        }
        Tensor cov = Tensor::zeros({n, n});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) cov[i * n + j] = covariance_entry(i, j);
        }
        chol_cov_ = cholesky(cov);
    });
    return chol_cov_;
}

Tensor StationaryFieldModel::sample_x0(RngStream& rng) const {
    const Tensor& l = cholesky_covariance();
    std::size_t n = kernel_.size();
    Tensor w = randn({n}, rng);
    std::vector<double> out(mean_.values());
    const double* L = l.data();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j) s += L[i * n + j] * w[j];
        out[i] += s;
    }
    return with_shape(kernel_.shape(), std::move(out));
}

Tensor StationaryFieldModel::mean_x0() const { return mean_; }

Tensor StationaryFieldModel::squared_exponential_kernel(
    const std::vector<std::size_t>& grid_shape, double length_scale, double variance,
    double nugget) {
    if (!(length_scale > 0.0) || !(variance > 0.0) || !(nugget >= 0.0) ||
        !(nugget < variance)) {
        throw ConfigError("squared-exponential kernel needs length_scale > 0 and "
                          "0 <= nugget < variance");
    }
    // Periodic summation per axis keeps the kernel positive definite on the
    // torus (the plain min-distance Gaussian is not); the product over axes
    // has a separable, strictly positive spectrum.
    auto wrapped = [&](std::size_t n) {
        std::vector<double> g(n, 0.0);
        for (std::size_t d = 0; d < n; ++d) {
            for (int wrap = -3; wrap <= 3; ++wrap) {
                double off = static_cast<double>(d) - wrap * static_cast<double>(n);
                g[d] += std::exp(-0.5 * off * off / (length_scale * length_scale));
            }
        }
        double g0 = g[0];
        for (double& v : g) v /= g0;
        return g;
    };
    std::vector<std::vector<double>> axis_kernels;
    for (std::size_t n : grid_shape) axis_kernels.push_back(wrapped(n));

    Tensor k = Tensor::zeros(grid_shape);
    double smooth = variance - nugget;
    for (std::size_t i = 0; i < k.size(); ++i) {
        auto c = flat_to_coords(i, grid_shape);
        double prod = 1.0;
        for (std::size_t a = 0; a < c.size(); ++a) prod *= axis_kernels[a][c[a]];
        k[i] = smooth * prod;
        if (i == 0) k[i] += nugget;
    }
    return k;
}

Tensor StationaryFieldModel::anisotropic_diagonal_kernel(
    const std::vector<std::size_t>& grid_shape, double length_along, double length_across,
    double variance, double nugget) {
    if (grid_shape.size() != 2) {
        throw ShapeError("the diagonal-texture kernel needs a 2D grid");
    }
    if (!(length_along > 0.0) || !(length_across > 0.0) || !(variance > 0.0) ||
        !(nugget >= 0.0) || !(nugget < variance)) {
        throw ConfigError("diagonal kernel needs positive lengths and 0 <= nugget < variance");
    }
    const std::size_t rows = grid_shape[0], cols = grid_shape[1];
    Tensor k = Tensor::zeros(grid_shape);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (int wr = -2; wr <= 2; ++wr) {
                for (int wc = -2; wc <= 2; ++wc) {
                    double dr = static_cast<double>(r) - wr * static_cast<double>(rows);
                    double dc = static_cast<double>(c) - wc * static_cast<double>(cols);
                    double u = (dr + dc) / std::sqrt(2.0);
                    double w = (dr - dc) / std::sqrt(2.0);
                    acc += std::exp(-0.5 * (u * u / (length_along * length_along) +
                                            w * w / (length_across * length_across)));
                }
            }
            k[r * cols + c] = acc;
        }
    }
    double k0 = k[0];
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = (variance - nugget) * k[i] / k0;
    k[0] += nugget;
    return k;
}

// ---------------------------------------------------------------------------
// ConditionalModel

ConditionalModel::ConditionalModel(std::map<std::string, ModelPtr> members,
                                   ModelPtr unconditional)
    : members_(std::move(members)), unconditional_(std::move(unconditional)) {
    if (members_.empty()) throw ConfigError("conditional model needs at least one member");
    for (const auto& [label, m] : members_) {
        if (!m) throw ConfigError("conditional member '" + label + "' is null");
        if (m->is_conditional()) {
            throw ConfigError("conditional members cannot nest conditional models");
        }
    }
    shape_ = members_.begin()->second->data_shape();
    for (const auto& [label, m] : members_) {
        if (m->data_shape() != shape_) {
            throw ShapeError("conditional member '" + label + "' disagrees on data shape");
        }
    }
    if (unconditional_ && unconditional_->data_shape() != shape_) {
        throw ShapeError("unconditional member disagrees on data shape");
    }
}

const DenoiserModel& ConditionalModel::member(const std::optional<std::string>& cond) const {
    if (!cond) {
        if (!unconditional_) {
            throw ConditionError("no condition given and the model has no unconditional "
                                 "member");
        }
        return *unconditional_;
    }
    auto it = members_.find(*cond);
    if (it == members_.end()) {
        throw ConditionError("unknown condition label '" + *cond + "'");
    }
    return *it->second;
}

Tensor ConditionalModel::predict_eps_at(const Tensor& x, double alpha_bar) const {
    return member(std::nullopt).predict_eps_at(x, alpha_bar);
}

double ConditionalModel::log_marginal_at(const Tensor& x, double alpha_bar) const {
    return member(std::nullopt).log_marginal_at(x, alpha_bar);
}

Tensor ConditionalModel::sample_x0(RngStream& rng) const {
    return member(std::nullopt).sample_x0(rng);
}

Tensor ConditionalModel::mean_x0() const { return member(std::nullopt).mean_x0(); }

// ---------------------------------------------------------------------------
// Free operations

const DenoiserModel& resolve_condition(const DenoiserModel& model,
                                       const std::optional<std::string>& cond) {
    if (const auto* c = dynamic_cast<const ConditionalModel*>(&model)) {
        return c->member(cond);
    }
    return model;
}

namespace {

const DenoiserModel& resolve_checked(const DenoiserModel& model, const Tensor& x_t,
                                     const std::optional<std::string>& cond) {
    const DenoiserModel& m = resolve_condition(model, cond);
    if (x_t.shape() != m.data_shape()) {
        throw ShapeError("input shape " + shape_to_string(x_t.shape()) +
                         " does not match model data shape " +
                         shape_to_string(m.data_shape()));
    }
    return m;
}

}  // namespace

Tensor predict_eps(const DenoiserModel& model, const Tensor& x_t, int t,
                   const Schedule& schedule, const std::optional<std::string>& cond) {
    schedule.require_valid_t(t);
    const DenoiserModel& m = resolve_checked(model, x_t, cond);
    Tensor eps = m.predict_eps_at(x_t, schedule.alpha_bar[t]);
    require_finite(eps, "predict_eps at t=" + std::to_string(t));
    return eps;
}

Tensor posterior_x0(const DenoiserModel& model, const Tensor& x_t, int t,
                    const Schedule& schedule, const std::optional<std::string>& cond) {
    Tensor eps = predict_eps(model, x_t, t, schedule, cond);
    double a = schedule.alpha_bar[t];
    double num = std::sqrt(1.0 - a);
    double den = std::sqrt(a);
    Tensor out = x_t;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x_t[i] - num * eps[i]) / den;
    return out;
}

double log_marginal(const DenoiserModel& model, const Tensor& x_t, int t,
                    const Schedule& schedule, const std::optional<std::string>& cond) {
    schedule.require_valid_t(t);
    const DenoiserModel& m = resolve_checked(model, x_t, cond);
    return m.log_marginal_at(x_t, schedule.alpha_bar[t]);
}

Tensor cfg_predict(const DenoiserModel& model, const Tensor& x_t, int t,
                   const Schedule& schedule, const std::string& cond, double strength) {
    const auto* c = dynamic_cast<const ConditionalModel*>(&model);
    if (!c) throw ConfigError("classifier-free combination needs a conditional model");
    if (!c->unconditional()) {
        throw ConfigError("classifier-free combination needs an unconditional member");
    }
    Tensor eps_c = predict_eps(model, x_t, t, schedule, cond);
    Tensor eps_u = predict_eps(model, x_t, t, schedule, std::nullopt);
    Tensor out = eps_u;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = eps_u[i] + strength * (eps_c[i] - eps_u[i]);
    }
    return out;
}

Tensor sample_x0(const DenoiserModel& model, RngStream& rng,
                 const std::optional<std::string>& cond) {
    return resolve_condition(model, cond).sample_x0(rng);
}

}  // namespace efnz
