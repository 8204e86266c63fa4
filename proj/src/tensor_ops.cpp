#include "geoparam/tensor_ops.hpp"

#include <algorithm>
#include <cmath>

namespace geoparam {

namespace {

// Inclusive index range {lo..hi} of i in [0, count) with 0 <= i*stride + offset < limit.
struct IdxRange {
    int lo, hi;
};

IdxRange valid_range(int offset, int stride, int limit, int count) {
    int lo = offset < 0 ? (-offset + stride - 1) / stride : 0;
    int top = limit - 1 - offset;
    if (top < 0) return {1, 0};
    int hi = std::min(count - 1, top / stride);
    return {lo, hi};
}

void check_conv_args(const Tensor& input, const Tensor& filters, int stride, int pad) {
    if (input.rank() != 3) throw ShapeError("conv: input must be rank 3 (C,H,W)");
    if (filters.rank() != 4) throw ShapeError("conv: filters must be rank 4");
    if (stride < 1) throw ShapeError("conv: stride must be >= 1");
    if (pad < 0) throw ShapeError("conv: pad must be >= 0");
    if (filters.extent(2) != filters.extent(3))
        throw ShapeError("conv: only square kernels supported");
}

} // namespace

int conv2d_out_extent(int in, int kernel, int stride, int pad) {
    if (kernel > in + 2 * pad) throw ShapeError("conv2d: kernel larger than padded input");
    return (in + 2 * pad - kernel) / stride + 1;
}

int conv2d_transpose_out_extent(int in, int kernel, int stride, int pad) {
    int out = (in - 1) * stride - 2 * pad + kernel;
    if (out < 1) throw ShapeError("conv2d_transpose: non-positive output extent");
    return out;
}

Tensor conv2d(const Tensor& input, const Tensor& filters, int stride, int pad) {
    check_conv_args(input, filters, stride, pad);
    const int C = input.extent(0), H = input.extent(1), W = input.extent(2);
    const int F = filters.extent(0), k = filters.extent(2);
    if (filters.extent(1) != C)
        throw ShapeError("conv2d: filter channel count does not match input channels");
    const int Ho = conv2d_out_extent(H, k, stride, pad);
    const int Wo = conv2d_out_extent(W, k, stride, pad);

    Tensor out({F, Ho, Wo});
    const double* in = input.data();
    const double* w = filters.data();
    double* o = out.data();

#pragma omp parallel for schedule(static) num_threads(thread_budget())
    for (int f = 0; f < F; ++f) {
        for (int c = 0; c < C; ++c) {
            const double* wfc = w + (static_cast<std::ptrdiff_t>(f) * C + c) * k * k;
            for (int a = 0; a < k; ++a) {
                const IdxRange ri = valid_range(a - pad, stride, H, Ho);
                for (int b = 0; b < k; ++b) {
                    const double wv = wfc[a * k + b];
                    const IdxRange rj = valid_range(b - pad, stride, W, Wo);
                    for (int i = ri.lo; i <= ri.hi; ++i) {
                        const double* irow =
                            in + (static_cast<std::ptrdiff_t>(c) * H + (i * stride + a - pad)) * W +
                            (b - pad);
                        double* orow = o + (static_cast<std::ptrdiff_t>(f) * Ho + i) * Wo;
                        for (int j = rj.lo; j <= rj.hi; ++j) orow[j] += wv * irow[j * stride];
                    }
                }
            }
        }
    }
    return out;
}

Tensor conv2d_transpose(const Tensor& input, const Tensor& filters, int stride, int pad) {
    check_conv_args(input, filters, stride, pad);
    const int C = input.extent(0), H = input.extent(1), W = input.extent(2);
    const int F = filters.extent(1), k = filters.extent(2);
    if (filters.extent(0) != C)
        throw ShapeError("conv2d_transpose: filter channel count does not match input channels");
    const int Ho = conv2d_transpose_out_extent(H, k, stride, pad);
    const int Wo = conv2d_transpose_out_extent(W, k, stride, pad);

    Tensor out({F, Ho, Wo});
    const double* in = input.data();
    const double* w = filters.data();
    double* o = out.data();

#pragma omp parallel for schedule(static) num_threads(thread_budget())
    for (int f = 0; f < F; ++f) {
        for (int c = 0; c < C; ++c) {
            const double* wcf = w + (static_cast<std::ptrdiff_t>(c) * F + f) * k * k;
            for (int a = 0; a < k; ++a) {
                const IdxRange ri = valid_range(a - pad, stride, Ho, H);
                for (int b = 0; b < k; ++b) {
                    const double wv = wcf[a * k + b];
                    const IdxRange rj = valid_range(b - pad, stride, Wo, W);
                    for (int i = ri.lo; i <= ri.hi; ++i) {
                        const double* irow = in + (static_cast<std::ptrdiff_t>(c) * H + i) * W;
                        double* orow =
                            o + (static_cast<std::ptrdiff_t>(f) * Ho + (i * stride + a - pad)) * Wo +
                            (b - pad);
                        for (int j = rj.lo; j <= rj.hi; ++j) orow[j * stride] += wv * irow[j];
                    }
                }
            }
        }
    }
    return out;
}

void conv2d_grad_input(const Tensor& grad_out, const Tensor& filters, int stride, int pad,
                       Tensor& grad_in) {
    const int C = grad_in.extent(0), H = grad_in.extent(1), W = grad_in.extent(2);
    const int F = filters.extent(0), k = filters.extent(2);
    const int Ho = grad_out.extent(1), Wo = grad_out.extent(2);
    const double* go = grad_out.data();
    const double* w = filters.data();
    double* gi = grad_in.data();

#pragma omp parallel for schedule(static) num_threads(thread_budget())
    for (int c = 0; c < C; ++c) {
        for (int f = 0; f < F; ++f) {
            const double* wfc = w + (static_cast<std::ptrdiff_t>(f) * C + c) * k * k;
            for (int a = 0; a < k; ++a) {
                const IdxRange ri = valid_range(a - pad, stride, H, Ho);
                for (int b = 0; b < k; ++b) {
                    const double wv = wfc[a * k + b];
                    const IdxRange rj = valid_range(b - pad, stride, W, Wo);
                    for (int i = ri.lo; i <= ri.hi; ++i) {
                        const double* gorow = go + (static_cast<std::ptrdiff_t>(f) * Ho + i) * Wo;
                        double* girow =
                            gi + (static_cast<std::ptrdiff_t>(c) * H + (i * stride + a - pad)) * W +
                            (b - pad);
                        for (int j = rj.lo; j <= rj.hi; ++j) girow[j * stride] += wv * gorow[j];
                    }
                }
            }
        }
    }
}

void conv2d_grad_filters(const Tensor& grad_out, const Tensor& input, int stride, int pad,
                         Tensor& grad_filters) {
    const int C = input.extent(0), H = input.extent(1), W = input.extent(2);
    const int F = grad_filters.extent(0), k = grad_filters.extent(2);
    const int Ho = grad_out.extent(1), Wo = grad_out.extent(2);
    const double* go = grad_out.data();
    const double* in = input.data();
    double* gw = grad_filters.data();

#pragma omp parallel for schedule(static) num_threads(thread_budget())
    for (int f = 0; f < F; ++f) {
        for (int c = 0; c < C; ++c) {
            for (int a = 0; a < k; ++a) {
                const IdxRange ri = valid_range(a - pad, stride, H, Ho);
                for (int b = 0; b < k; ++b) {
                    const IdxRange rj = valid_range(b - pad, stride, W, Wo);
                    double acc = 0.0;
                    for (int i = ri.lo; i <= ri.hi; ++i) {
                        const double* gorow = go + (static_cast<std::ptrdiff_t>(f) * Ho + i) * Wo;
                        const double* irow =
                            in + (static_cast<std::ptrdiff_t>(c) * H + (i * stride + a - pad)) * W +
                            (b - pad);
                        for (int j = rj.lo; j <= rj.hi; ++j) acc += gorow[j] * irow[j * stride];
                    }
                    gw[((static_cast<std::ptrdiff_t>(f) * C + c) * k + a) * k + b] += acc;
                }
            }
        }
    }
}

void conv2d_transpose_grad_input(const Tensor& grad_out, const Tensor& filters, int stride,
                                 int pad, Tensor& grad_in) {
    const int C = grad_in.extent(0), H = grad_in.extent(1), W = grad_in.extent(2);
    const int F = filters.extent(1), k = filters.extent(2);
    const int Ho = grad_out.extent(1), Wo = grad_out.extent(2);
    const double* go = grad_out.data();
    const double* w = filters.data();
    double* gi = grad_in.data();

#pragma omp parallel for schedule(static) num_threads(thread_budget())
    for (int c = 0; c < C; ++c) {
        for (int f = 0; f < F; ++f) {
            const double* wcf = w + (static_cast<std::ptrdiff_t>(c) * F + f) * k * k;
            for (int a = 0; a < k; ++a) {
                const IdxRange ri = valid_range(a - pad, stride, Ho, H);
                for (int b = 0; b < k; ++b) {
                    const double wv = wcf[a * k + b];
                    const IdxRange rj = valid_range(b - pad, stride, Wo, W);
                    for (int i = ri.lo; i <= ri.hi; ++i) {
                        double* girow = gi + (static_cast<std::ptrdiff_t>(c) * H + i) * W;
                        const double* gorow =
                            go + (static_cast<std::ptrdiff_t>(f) * Ho + (i * stride + a - pad)) * Wo +
                            (b - pad);
                        for (int j = rj.lo; j <= rj.hi; ++j) girow[j] += wv * gorow[j * stride];
                    }
                }
            }
        }
    }
}

void conv2d_transpose_grad_filters(const Tensor& grad_out, const Tensor& input, int stride,
                                   int pad, Tensor& grad_filters) {
    const int C = input.extent(0), H = input.extent(1), W = input.extent(2);
    const int F = grad_filters.extent(1), k = grad_filters.extent(2);
    const int Ho = grad_out.extent(1), Wo = grad_out.extent(2);
    const double* go = grad_out.data();
    const double* in = input.data();
    double* gw = grad_filters.data();

#pragma omp parallel for collapse(2) schedule(static) num_threads(thread_budget())
    for (int c = 0; c < C; ++c) {
        for (int f = 0; f < F; ++f) {
            for (int a = 0; a < k; ++a) {
                const IdxRange ri = valid_range(a - pad, stride, Ho, H);
                for (int b = 0; b < k; ++b) {
                    const IdxRange rj = valid_range(b - pad, stride, Wo, W);
                    double acc = 0.0;
                    for (int i = ri.lo; i <= ri.hi; ++i) {
                        const double* irow = in + (static_cast<std::ptrdiff_t>(c) * H + i) * W;
                        const double* gorow =
                            go + (static_cast<std::ptrdiff_t>(f) * Ho + (i * stride + a - pad)) * Wo +
                            (b - pad);
                        for (int j = rj.lo; j <= rj.hi; ++j) acc += irow[j] * gorow[j * stride];
                    }
                    gw[((static_cast<std::ptrdiff_t>(c) * F + f) * k + a) * k + b] += acc;
                }
            }
        }
    }
}

namespace {

template <typename Fn>
Tensor elementwise(const Tensor& x, Fn fn) {
    Tensor out(x.shape());
    const double* src = x.data();
    double* dst = out.data();
    const std::int64_t n = x.numel();
    for (std::int64_t i = 0; i < n; ++i) dst[i] = fn(src[i]);
    return out;
}

} // namespace

Tensor relu(const Tensor& x) {
    return elementwise(x, [](double v) { return v > 0.0 ? v : 0.0; });
}

Tensor leaky_relu(const Tensor& x, double slope) {
    return elementwise(x, [slope](double v) { return v > 0.0 ? v : slope * v; });
}

Tensor tanh_map(const Tensor& x) {
    return elementwise(x, [](double v) { return std::tanh(v); });
}

Tensor sigmoid_map(const Tensor& x) {
    return elementwise(x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

double dot(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw ShapeError("dot: shape mismatch");
    const double* pa = a.data();
    const double* pb = b.data();
    double acc = 0.0;
    for (std::int64_t i = 0, n = a.numel(); i < n; ++i) acc += pa[i] * pb[i];
    return acc;
}

} // namespace geoparam
