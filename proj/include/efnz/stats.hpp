#ifndef EFNZ_STATS_HPP
#define EFNZ_STATS_HPP

#include <cstddef>
#include <vector>

#include "efnz/latent.hpp"
#include "efnz/latent.hpp"
#include "efnz/tensor.hpp"

namespace efnz {

/// Per-timestep scalar statistic with standard errors.
struct StatsSeries {
    std::vector<int> t;
    std::vector<double> value;
    std::vector<double> standard_error;
    std::size_t sample_count = 0;
};

/// Histogram of angles (degrees) over [0, 180].
struct AngleHistogram {
    std::vector<double> bin_edges;  // bins + 1 edges partitioning [0, 180]
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    /// Consecutive pairs skipped because one member had zero norm.
    std::size_t skipped = 0;
    double angle_sum = 0.0;

    double mean_angle() const { return total ? angle_sum / static_cast<double>(total) : 0.0; }
    std::size_t modal_bin() const;
};

/// Std of z_t pooled over coordinates and codes, per t. Codes must share
/// shape and schedule fingerprint. t starts at 2 when the codes carry a
/// zero z_1.
StatsSeries per_step_std(const std::vector<LatentCode>& codes);

/// Pearson correlation between z_t and z_{t-1} pooled over coordinates and
/// codes, for t >= 2 (t >= 3 when z_1 is the zero tensor).
StatsSeries consecutive_corr(const std::vector<LatentCode>& codes);

/// Angles between consecutive noise vectors (z_t, z_{t-1}) pooled over t
/// and codes. Zero-norm members are skipped and counted.
AngleHistogram angle_histogram(const std::vector<LatentCode>& codes, std::size_t bins);

/// Mean squared difference over the valid region of a d-shift: indices
/// >= d along the axis (the filled boundary is excluded).
double shift_mse(const Tensor& a, const Tensor& b, std::size_t d, std::size_t axis);

/// Mean pairwise RMS distance over all unordered pairs; needs >= 2 outputs.
double diversity(const std::vector<Tensor>& outputs);

/// Pearson correlation of two equally sized samples.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Upper-tail p-value of a chi-square statistic with k degrees of freedom.
double chi_square_p_value(double statistic, double dof);

/// Chi-square goodness-of-fit p-value of observed counts against the
/// uniform distribution over the bins.
double chi_square_uniformity_p(const std::vector<std::size_t>& counts);

}  // namespace efnz

#endif  // EFNZ_STATS_HPP
