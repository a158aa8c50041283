#include "efnz/stats.hpp"

#include <algorithm>
#include <cmath>

namespace efnz {

namespace {

void validate_codes(const std::vector<LatentCode>& codes, std::size_t minimum) {
    if (codes.size() < minimum) {
        throw ConfigError("need at least " + std::to_string(minimum) + " latent codes");
    }
    for (const auto& c : codes) {
        if (c.schedule_fingerprint != codes.front().schedule_fingerprint ||
            c.T != codes.front().T || c.shape() != codes.front().shape() ||
            c.z1_is_zero != codes.front().z1_is_zero) {
            throw IncompatibleLatentError(
                "latent codes mix schedules or shapes; statistics need a uniform batch");
        }
    }
}

// Series and continued-fraction evaluation of the regularized incomplete
// gamma functions, good to ~1e-12 for the dof range used here.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

std::size_t AngleHistogram::modal_bin() const {
    return static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
}

StatsSeries per_step_std(const std::vector<LatentCode>& codes) {
    validate_codes(codes, 2);
    const int T = codes.front().T;
    const int t0 = codes.front().z1_is_zero ? 2 : 1;
    StatsSeries s;
    s.sample_count = codes.size();
    for (int t = t0; t <= T; ++t) {
        double sum = 0.0, sum2 = 0.0;
        std::size_t n = 0;
        for (const auto& c : codes) {
            const Tensor& z = c.z[static_cast<std::size_t>(t)];
            for (std::size_t i = 0; i < z.size(); ++i) {
                sum += z[i];
                sum2 += z[i] * z[i];
                ++n;
            }
        }
        double m = sum / static_cast<double>(n);
        double var = (sum2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        double sd = std::sqrt(std::max(0.0, var));
        s.t.push_back(t);
        s.value.push_back(sd);
        s.standard_error.push_back(sd / std::sqrt(2.0 * static_cast<double>(n - 1)));
    }
    return s;
}

StatsSeries consecutive_corr(const std::vector<LatentCode>& codes) {
    validate_codes(codes, 2);
    const int T = codes.front().T;
    const int t0 = codes.front().z1_is_zero ? 3 : 2;
    StatsSeries s;
    s.sample_count = codes.size();
    for (int t = t0; t <= T; ++t) {
        double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
        std::size_t n = 0;
        for (const auto& c : codes) {
            const Tensor& a = c.z[static_cast<std::size_t>(t)];
            const Tensor& b = c.z[static_cast<std::size_t>(t) - 1];
            for (std::size_t i = 0; i < a.size(); ++i) {
                sa += a[i];
                sb += b[i];
                saa += a[i] * a[i];
                sbb += b[i] * b[i];
                sab += a[i] * b[i];
                ++n;
            }
        }
        double nn = static_cast<double>(n);
        double cov = sab / nn - (sa / nn) * (sb / nn);
        double va = saa / nn - (sa / nn) * (sa / nn);
        double vb = sbb / nn - (sb / nn) * (sb / nn);
        double r = cov / std::sqrt(va * vb);
        s.t.push_back(t);
        s.value.push_back(r);
        s.standard_error.push_back((1.0 - r * r) / std::sqrt(nn - 3.0));
    }
    return s;
}

AngleHistogram angle_histogram(const std::vector<LatentCode>& codes, std::size_t bins) {
    if (bins < 2) throw ConfigError("angle histogram needs at least 2 bins");
    validate_codes(codes, 1);
    AngleHistogram h;
    h.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        h.bin_edges[b] = 180.0 * static_cast<double>(b) / static_cast<double>(bins);
    }
    h.counts.assign(bins, 0);
    const int T = codes.front().T;
    for (const auto& c : codes) {
        for (int t = 2; t <= T; ++t) {
            const Tensor& a = c.z[static_cast<std::size_t>(t)];
            const Tensor& b = c.z[static_cast<std::size_t>(t) - 1];
            double na = norm2(a);
            double nb = norm2(b);
            if (na == 0.0 || nb == 0.0) {
                ++h.skipped;
                continue;
            }
            double cosv = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
            double angle = std::acos(cosv) * 180.0 / M_PI;
            std::size_t bin = std::min(bins - 1, static_cast<std::size_t>(
                                                     angle / 180.0 * static_cast<double>(bins)));
            ++h.counts[bin];
            ++h.total;
            h.angle_sum += angle;
        }
    }
    return h;
}

double shift_mse(const Tensor& a, const Tensor& b, std::size_t d, std::size_t axis) {
    require_same_shape(a, b, "shift_mse");
    const auto& shape = a.shape();
    if (axis >= shape.size()) throw ConfigError("shift_mse axis out of range");
    if (d >= shape[axis]) {
        throw ConfigError("shift_mse distance must be smaller than the extent");
    }
    std::size_t stride = 1;
    for (std::size_t ax = axis + 1; ax < shape.size(); ++ax) stride *= shape[ax];
    std::size_t extent = shape[axis];
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t pos = (i / stride) % extent;
        if (pos < d) continue;  // filled boundary, not a valid pixel
        double diff = a[i] - b[i];
        acc += diff * diff;
        ++n;
    }
    return acc / static_cast<double>(n);
}

double diversity(const std::vector<Tensor>& outputs) {
    if (outputs.size() < 2) throw ConfigError("diversity needs at least 2 outputs");
    double acc = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        for (std::size_t j = i + 1; j < outputs.size(); ++j) {
            acc += rms_diff(outputs[i], outputs[j]);
            ++pairs;
        }
    }
    return acc / static_cast<double>(pairs);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw ConfigError("pearson needs two equally sized samples of length >= 2");
    }
    double n = static_cast<double>(a.size());
    double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        saa += a[i] * a[i];
        sbb += b[i] * b[i];
        sab += a[i] * b[i];
    }
    double cov = sab / n - (sa / n) * (sb / n);
    double va = saa / n - (sa / n) * (sa / n);
    double vb = sbb / n - (sb / n) * (sb / n);
    return cov / std::sqrt(va * vb);
}

double chi_square_p_value(double statistic, double dof) {
    if (statistic < 0.0 || dof <= 0.0) {
        throw ConfigError("chi-square needs statistic >= 0 and dof > 0");
    }
    double a = 0.5 * dof;
    double x = 0.5 * statistic;
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_square_uniformity_p(const std::vector<std::size_t>& counts) {
    if (counts.size() < 2) throw ConfigError("uniformity test needs at least 2 bins");
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) throw ConfigError("uniformity test needs a non-empty histogram");
    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::size_t c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return chi_square_p_value(stat, static_cast<double>(counts.size() - 1));
}

}  // namespace efnz
