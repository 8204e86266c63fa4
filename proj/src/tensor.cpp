#include "geoparam/tensor.hpp"

#include <algorithm>

namespace geoparam {

std::int64_t shape_numel(const std::vector<int>& shape) {
    std::int64_t n = 1;
    for (int e : shape) {
        if (e < 1) throw ShapeError("tensor extents must be >= 1");
        n *= e;
    }
    return n;
}

Tensor::Tensor(std::vector<int> shape) : Tensor(std::move(shape), 0.0) {}

Tensor::Tensor(std::vector<int> shape, double fill)
    : shape_(std::move(shape)), data_(static_cast<std::size_t>(shape_numel(shape_)), fill) {}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_numel(shape_) != static_cast<std::int64_t>(data_.size()))
        throw ShapeError("tensor data length does not match shape");
}

double& Tensor::at(int c, int i, int j) {
    const int H = shape_[1], W = shape_[2];
    return data_[static_cast<std::size_t>((c * H + i) * W + j)];
}

double Tensor::at(int c, int i, int j) const {
    const int H = shape_[1], W = shape_[2];
    return data_[static_cast<std::size_t>((c * H + i) * W + j)];
}

void Tensor::fill(double v) {
    std::fill(data_.begin(), data_.end(), v);
}

double Tensor::item() const {
    if (numel() != 1) throw ShapeError("item() on non-scalar tensor");
    return data_[0];
}

} // namespace geoparam
