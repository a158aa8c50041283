#ifndef EFNZ_TENSOR_HPP
#define EFNZ_TENSOR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "efnz/error.hpp"

namespace efnz {

/// Dense n-dimensional array of 64-bit floats, row-major.
///
/// Tensors have value semantics. A constructed tensor is safe to share
/// read-only across threads; mutate only tensors you own exclusively.
class Tensor {
public:
    Tensor() = default;

    /// Zero-filled tensor. Throws ShapeError on empty shape or zero extents.
    static Tensor zeros(std::vector<std::size_t> shape);

    /// Constant-filled tensor.
    static Tensor filled(std::vector<std::size_t> shape, double value);

    /// Tensor from explicit values. Length must equal the shape product and
    /// every element must be finite.
    static Tensor from_values(std::vector<std::size_t> shape, std::vector<double> values);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    const std::vector<double>& values() const { return data_; }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool all_finite() const;

    Tensor& operator+=(const Tensor& rhs);
    Tensor& operator-=(const Tensor& rhs);
    Tensor& operator*=(double s);

    friend Tensor operator+(Tensor lhs, const Tensor& rhs) { return lhs += rhs; }
    friend Tensor operator-(Tensor lhs, const Tensor& rhs) { return lhs -= rhs; }
    friend Tensor operator*(Tensor lhs, double s) { return lhs *= s; }
    friend Tensor operator*(double s, Tensor rhs) { return rhs *= s; }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.shape_ == b.shape_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

private:
    Tensor(std::vector<std::size_t> shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {}

    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

/// Product of extents after validating that all extents are >= 1.
std::size_t checked_element_count(const std::vector<std::size_t>& shape);

/// Throws ShapeError mentioning `context` when the shapes differ.
void require_same_shape(const Tensor& a, const Tensor& b, const std::string& context);

/// Throws NumericError mentioning `context` if any element is non-finite.
void require_finite(const Tensor& t, const std::string& context);

double dot(const Tensor& a, const Tensor& b);
double sum(const Tensor& t);
double mean(const Tensor& t);
/// Population variance (divides by n).
double variance(const Tensor& t);
double max_abs(const Tensor& t);
/// Max abs difference; shapes must match.
double max_abs_diff(const Tensor& a, const Tensor& b);
/// Root mean squared difference; shapes must match.
double rms_diff(const Tensor& a, const Tensor& b);
double norm2(const Tensor& t);
Tensor hadamard(const Tensor& a, const Tensor& b);

std::string shape_to_string(const std::vector<std::size_t>& shape);

}  // namespace efnz

#endif  // EFNZ_TENSOR_HPP
