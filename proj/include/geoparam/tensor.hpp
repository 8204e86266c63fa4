#ifndef GEOPARAM_TENSOR_HPP
#define GEOPARAM_TENSOR_HPP

#include <cstdint>
#include <vector>

#include "geoparam/common.hpp"

namespace geoparam {

/// Dense n-dimensional array of doubles, row-major. Network activations use
/// rank 3 (channels, height, width); filters use rank 4.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape);
    Tensor(std::vector<int> shape, double fill);
    Tensor(std::vector<int> shape, std::vector<double> data);

    static Tensor scalar(double v) { return Tensor({1}, {v}); }

    int rank() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    int extent(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
    std::int64_t numel() const { return static_cast<std::int64_t>(data_.size()); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    double& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }

    /// (c, i, j) access for rank-3 tensors: data[c*H*W + i*W + j].
    double& at(int c, int i, int j);
    double at(int c, int i, int j) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    void fill(double v);
    /// Value of a single-element tensor.
    double item() const;

private:
    std::vector<int> shape_;
    std::vector<double> data_;
};

std::int64_t shape_numel(const std::vector<int>& shape);

} // namespace geoparam

#endif
