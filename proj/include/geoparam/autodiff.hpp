#ifndef GEOPARAM_AUTODIFF_HPP
#define GEOPARAM_AUTODIFF_HPP

#include <functional>
#include <span>
#include <vector>

#include "geoparam/tensor.hpp"

namespace geoparam {

/// Trainable tensor with an accumulated gradient and Adam moment buffers.
struct Parameter {
    Tensor value;
    Tensor grad;
    Tensor moment1;
    Tensor moment2;
    std::int64_t steps = 0;

    Parameter() = default;
    explicit Parameter(Tensor v)
        : value(std::move(v)), grad(value.shape()), moment1(value.shape()),
          moment2(value.shape()) {}

    void zero_grad() { grad.fill(0.0); }
};

/// One bias-corrected Adam update from the accumulated gradients.
void adam_step(std::span<Parameter* const> params, double lr, double beta1, double beta2,
               double eps = 1e-8);

/// Clamp every weight into [-bound, bound].
void clip_weights(std::span<Parameter* const> params, double bound);

void zero_grads(std::span<Parameter* const> params);

/// Reverse-mode tape over the layer op set. Records a forward pass eagerly;
/// backward() sweeps the recorded nodes once, in reverse, and adds the
/// resulting parameter adjoints into Parameter::grad (accumulating across
/// calls until zero_grad).
class Tape {
public:
    using NodeId = std::size_t;

    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    NodeId input(Tensor value);
    NodeId param(Parameter& p);

    NodeId conv(NodeId x, NodeId filters, int stride, int pad);
    NodeId tconv(NodeId x, NodeId filters, int stride, int pad);
    NodeId add_channel_bias(NodeId x, NodeId bias);

    NodeId relu(NodeId x);
    NodeId leaky_relu(NodeId x, double slope);
    NodeId tanh(NodeId x);
    NodeId sigmoid(NodeId x);

    /// Mean over all elements -> scalar node.
    NodeId mean_all(NodeId x);
    /// Mean of scalar nodes -> scalar node.
    NodeId mean_of(std::span<const NodeId> scalars);
    NodeId sub(NodeId a, NodeId b);
    NodeId neg(NodeId x);
    NodeId scale(NodeId x, double factor);
    /// log(clamp(x, eps, 1-eps)), elementwise; zero gradient where clamped.
    NodeId log_clamped(NodeId x, double eps = 1e-7);
    NodeId one_minus(NodeId x);

    const Tensor& value(NodeId id) const { return nodes_[id].value; }
    const Tensor& adjoint(NodeId id) const { return nodes_[id].adjoint; }

    /// Seed must be scalar. No-op on an empty tape.
    void backward(NodeId seed);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }

private:
    struct Node {
        Tensor value;
        Tensor adjoint;
        std::function<void(Tape&)> back; // null for leaves
        Parameter* bound = nullptr;
    };

    NodeId push(Tensor value, std::function<void(Tape&)> back);

    std::vector<Node> nodes_;
};

} // namespace geoparam

#endif
