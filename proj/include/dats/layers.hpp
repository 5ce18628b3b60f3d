#ifndef DATS_LAYERS_HPP
#define DATS_LAYERS_HPP

#include <string>
#include <vector>

#include "dats/rng.hpp"
#include "dats/tensor.hpp"

namespace dats {

/// A named, checkpointable parameter tensor with its gradient accumulator.
struct Param {
  std::string name;
  std::vector<int> shape;
  std::vector<double> w;
  std::vector<double> g;

  Param() = default;
  Param(std::string n, std::vector<int> s);
  std::size_t size() const { return w.size(); }
  void zero_grad() { std::fill(g.begin(), g.end(), 0.0); }
};

/// 2-D convolution, zero padding, square kernel. Weight layout
/// (out_c, ky, kx, in_c) so the innermost index runs over the interleaved
/// input channels, matching Tensor storage.
struct Conv2d {
  int in_c = 0, out_c = 0, k = 1, stride = 1, pad = 0;
  Param weight;
  Param bias;

  Conv2d() = default;
  Conv2d(const std::string& name, int in_c, int out_c, int k, int stride, int pad);

  void init_kaiming(Rng& rng);
  int out_dim(int n) const { return (n + 2 * pad - k) / stride + 1; }

  Tensor forward(const Tensor& x) const;
  /// Accumulates weight/bias gradients, returns the input gradient.
  Tensor backward(const Tensor& x, const Tensor& grad_out);
};

/// Transposed 2-D convolution (fractionally strided). Weight layout
/// (in_c, ky, kx, out_c). Output size (n-1)*stride - 2*pad + k.
struct ConvTranspose2d {
  int in_c = 0, out_c = 0, k = 1, stride = 1, pad = 0;
  Param weight;
  Param bias;

  ConvTranspose2d() = default;
  ConvTranspose2d(const std::string& name, int in_c, int out_c, int k, int stride, int pad);

  void init_kaiming(Rng& rng);
  int out_dim(int n) const { return (n - 1) * stride - 2 * pad + k; }

  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& grad_out);
};

Tensor relu(const Tensor& x);
/// Mask of x > 0 applied to grad_out; x is the pre-activation.
Tensor relu_backward(const Tensor& x, const Tensor& grad_out);

Tensor sigmoid(const Tensor& x);
/// y is the sigmoid output.
Tensor sigmoid_backward(const Tensor& y, const Tensor& grad_out);

/// Spatial mean per channel: H x W x C -> 1 x 1 x C.
Tensor global_mean_pool(const Tensor& x);
Tensor global_mean_pool_backward(const Tensor& grad_pooled, int height, int width);

/// out(i,j,c) = x(i,j,c) * gate(0,0,c)
Tensor scale_channels(const Tensor& x, const Tensor& gate);
void scale_channels_backward(const Tensor& x, const Tensor& gate, const Tensor& grad_out, Tensor& grad_x,
                             Tensor& grad_gate);

/// out(i,j,c) = x(i,j,c) * gate(i,j,0)
Tensor scale_pixels(const Tensor& x, const Tensor& gate);
void scale_pixels_backward(const Tensor& x, const Tensor& gate, const Tensor& grad_out, Tensor& grad_x,
                           Tensor& grad_gate);

void add_inplace(Tensor& dst, const Tensor& src);

}  // namespace dats

#endif
