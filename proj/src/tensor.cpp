#include "efnz/tensor.hpp"

#include <cmath>
#include <sstream>

namespace efnz {

std::size_t checked_element_count(const std::vector<std::size_t>& shape) {
    if (shape.empty()) {
        throw ShapeError("tensor shape must have at least one extent");
    }
    std::size_t n = 1;
    for (std::size_t e : shape) {
        if (e == 0) {
            throw ShapeError("tensor extents must be >= 1, got " + shape_to_string(shape));
        }
        n *= e;
    }
    return n;
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    std::size_t n = checked_element_count(shape);
    return Tensor(std::move(shape), std::vector<double>(n, 0.0));
}

Tensor Tensor::filled(std::vector<std::size_t> shape, double value) {
    std::size_t n = checked_element_count(shape);
    return Tensor(std::move(shape), std::vector<double>(n, value));
}

Tensor Tensor::from_values(std::vector<std::size_t> shape, std::vector<double> values) {
    std::size_t n = checked_element_count(shape);
    if (values.size() != n) {
        throw ShapeError("value count " + std::to_string(values.size()) +
                         " does not match shape " + shape_to_string(shape));
    }
    Tensor t(std::move(shape), std::move(values));
    require_finite(t, "Tensor::from_values");
    return t;
}

bool Tensor::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

Tensor& Tensor::operator+=(const Tensor& rhs) {
    require_same_shape(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& rhs) {
    require_same_shape(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Tensor& Tensor::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

void require_same_shape(const Tensor& a, const Tensor& b, const std::string& context) {
    if (!a.same_shape(b)) {
        throw ShapeError(context + ": shape mismatch " + shape_to_string(a.shape()) +
                         " vs " + shape_to_string(b.shape()));
    }
}

void require_finite(const Tensor& t, const std::string& context) {
    if (!t.all_finite()) {
        throw NumericError(context + ": tensor contains non-finite values");
    }
}

double dot(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sum(const Tensor& t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) acc += t[i];
    return acc;
}

double mean(const Tensor& t) { return sum(t) / static_cast<double>(t.size()); }

double variance(const Tensor& t) {
    double m = mean(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double d = t[i] - m;
        acc += d * d;
    }
    return acc / static_cast<double>(t.size());
}

double max_abs(const Tensor& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::fabs(t[i]));
    return m;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double rms_diff(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "rms_diff");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

double norm2(const Tensor& t) { return std::sqrt(dot(t, t)); }

Tensor hadamard(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "hadamard");
    Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
    return out;
}

std::string shape_to_string(const std::vector<std::size_t>& shape) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << ", ";
        os << shape[i];
    }
    os << "]";
    return os.str();
}

}  // namespace efnz
