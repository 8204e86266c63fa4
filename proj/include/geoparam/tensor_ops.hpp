#ifndef GEOPARAM_TENSOR_OPS_HPP
#define GEOPARAM_TENSOR_OPS_HPP

#include "geoparam/tensor.hpp"

namespace geoparam {

// 2-D layer kernels, cross-correlation convention (no kernel flip).
// conv2d:           input [C,H,W] x filters [F,C,k,k] -> [F,H',W'],
//                   H' = floor((H + 2*pad - k)/stride) + 1
// conv2d_transpose: input [C,H,W] x filters [C,F,k,k] -> [F,H',W'],
//                   H' = (H-1)*stride - 2*pad + k   (adjoint map of conv2d)

Tensor conv2d(const Tensor& input, const Tensor& filters, int stride, int pad);
Tensor conv2d_transpose(const Tensor& input, const Tensor& filters, int stride, int pad);

int conv2d_out_extent(int in, int kernel, int stride, int pad);
int conv2d_transpose_out_extent(int in, int kernel, int stride, int pad);

// Backward rules: accumulate (+=) into pre-sized grad tensors.
void conv2d_grad_input(const Tensor& grad_out, const Tensor& filters, int stride, int pad,
                       Tensor& grad_in);
void conv2d_grad_filters(const Tensor& grad_out, const Tensor& input, int stride, int pad,
                         Tensor& grad_filters);
void conv2d_transpose_grad_input(const Tensor& grad_out, const Tensor& filters, int stride,
                                 int pad, Tensor& grad_in);
void conv2d_transpose_grad_filters(const Tensor& grad_out, const Tensor& input, int stride,
                                   int pad, Tensor& grad_filters);

// Elementwise nonlinearities. leaky_relu is x for x>0, slope*x otherwise.
Tensor relu(const Tensor& x);
Tensor leaky_relu(const Tensor& x, double slope = 0.01);
Tensor tanh_map(const Tensor& x);
Tensor sigmoid_map(const Tensor& x);

double dot(const Tensor& a, const Tensor& b);

} // namespace geoparam

#endif
