#include "dats/layers.hpp"

#include <cmath>

#include <Eigen/Core>

#include "dats/errors.hpp"

namespace dats {

namespace {

using MatRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<MatRM>;
using CMapRM = Eigen::Map<const MatRM>;

/// Unfold conv receptive fields: one row per output pixel, columns ordered
/// (ky, kx, channel). Zero padding.
MatRM im2col(const Tensor& img, int k, int stride, int pad, int oh, int ow) {
  const int c = img.channels;
  MatRM cols(static_cast<Eigen::Index>(oh) * ow, static_cast<Eigen::Index>(k) * k * c);
  cols.setZero();
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      double* row = cols.data() + (static_cast<std::size_t>(oy) * ow + ox) * cols.cols();
      for (int ky = 0; ky < k; ++ky) {
        const int iy = oy * stride + ky - pad;
        if (iy < 0 || iy >= img.height) continue;
        for (int kx = 0; kx < k; ++kx) {
          const int ix = ox * stride + kx - pad;
          if (ix < 0 || ix >= img.width) continue;
          const double* src = img.data() + (static_cast<std::size_t>(iy) * img.width + ix) * c;
          std::copy(src, src + c, row + (static_cast<std::size_t>(ky) * k + kx) * c);
        }
      }
    }
  }
  return cols;
}

/// Fold columns back, accumulating overlaps. Inverse layout of im2col.
void col2im_add(const MatRM& cols, Tensor& img, int k, int stride, int pad, int oh, int ow) {
  const int c = img.channels;
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      const double* row = cols.data() + (static_cast<std::size_t>(oy) * ow + ox) * cols.cols();
      for (int ky = 0; ky < k; ++ky) {
        const int iy = oy * stride + ky - pad;
        if (iy < 0 || iy >= img.height) continue;
        for (int kx = 0; kx < k; ++kx) {
          const int ix = ox * stride + kx - pad;
          if (ix < 0 || ix >= img.width) continue;
          double* dst = img.data() + (static_cast<std::size_t>(iy) * img.width + ix) * c;
          const double* src = row + (static_cast<std::size_t>(ky) * k + kx) * c;
          for (int i = 0; i < c; ++i) dst[i] += src[i];
        }
      }
    }
  }
}

}  // namespace

Param::Param(std::string n, std::vector<int> s) : name(std::move(n)), shape(std::move(s)) {
  std::size_t total = 1;
  for (int d : shape) total *= static_cast<std::size_t>(d);
  w.assign(total, 0.0);
  g.assign(total, 0.0);
}

Conv2d::Conv2d(const std::string& name, int in_c_, int out_c_, int k_, int stride_, int pad_)
    : in_c(in_c_),
      out_c(out_c_),
      k(k_),
      stride(stride_),
      pad(pad_),
      weight(name + ".w", {out_c_, k_, k_, in_c_}),
      bias(name + ".b", {out_c_}) {}

void Conv2d::init_kaiming(Rng& rng) {
  const double std = std::sqrt(2.0 / (static_cast<double>(k) * k * in_c));
  for (double& x : weight.w) x = rng.gaussian() * std;
  std::fill(bias.w.begin(), bias.w.end(), 0.0);
}

Tensor Conv2d::forward(const Tensor& x) const {
  if (x.channels != in_c) throw ValueError(weight.name + ": channel mismatch");
  const int oh = out_dim(x.height), ow = out_dim(x.width);
  if (oh < 1 || ow < 1) throw ValueError(weight.name + ": input smaller than kernel");
  const MatRM cols = im2col(x, k, stride, pad, oh, ow);
  CMapRM w(weight.w.data(), out_c, static_cast<Eigen::Index>(k) * k * in_c);
  Tensor out(oh, ow, out_c);
  MapRM y(out.data(), cols.rows(), out_c);
  y.noalias() = cols * w.transpose();
  CMapRM b(bias.w.data(), 1, out_c);
  y.rowwise() += b.row(0);
  return out;
}

Tensor Conv2d::backward(const Tensor& x, const Tensor& grad_out) {
  const int oh = grad_out.height, ow = grad_out.width;
  const MatRM cols = im2col(x, k, stride, pad, oh, ow);
  CMapRM gy(grad_out.data(), static_cast<Eigen::Index>(oh) * ow, out_c);
  CMapRM w(weight.w.data(), out_c, static_cast<Eigen::Index>(k) * k * in_c);

  MapRM gw(weight.g.data(), out_c, static_cast<Eigen::Index>(k) * k * in_c);
  gw.noalias() += gy.transpose() * cols;
  Eigen::Map<Eigen::VectorXd> gb(bias.g.data(), out_c);
  gb.noalias() += gy.colwise().sum().transpose();

  const MatRM gcols = gy * w;
  Tensor gx(x.height, x.width, in_c);
  col2im_add(gcols, gx, k, stride, pad, oh, ow);
  return gx;
}

ConvTranspose2d::ConvTranspose2d(const std::string& name, int in_c_, int out_c_, int k_, int stride_, int pad_)
    : in_c(in_c_),
      out_c(out_c_),
      k(k_),
      stride(stride_),
      pad(pad_),
      weight(name + ".w", {in_c_, k_, k_, out_c_}),
      bias(name + ".b", {out_c_}) {}

void ConvTranspose2d::init_kaiming(Rng& rng) {
  const double std = std::sqrt(2.0 / (static_cast<double>(k) * k * in_c));
  for (double& x : weight.w) x = rng.gaussian() * std;
  std::fill(bias.w.begin(), bias.w.end(), 0.0);
}

Tensor ConvTranspose2d::forward(const Tensor& x) const {
  if (x.channels != in_c) throw ValueError(weight.name + ": channel mismatch");
  const int oh = out_dim(x.height), ow = out_dim(x.width);
  if (oh < 1 || ow < 1) throw ValueError(weight.name + ": degenerate output");
  CMapRM xm(x.data(), static_cast<Eigen::Index>(x.height) * x.width, in_c);
  CMapRM w(weight.w.data(), in_c, static_cast<Eigen::Index>(k) * k * out_c);
  const MatRM cols = xm * w;
  Tensor out(oh, ow, out_c);
  // the input grid plays the role of a conv's output grid over the result
  col2im_add(cols, out, k, stride, pad, x.height, x.width);
  for (int i = 0; i < oh; ++i) {
    for (int j = 0; j < ow; ++j) {
      for (int c = 0; c < out_c; ++c) out.at(i, j, c) += bias.w[c];
    }
  }
  return out;
}

Tensor ConvTranspose2d::backward(const Tensor& x, const Tensor& grad_out) {
  const MatRM gcols = im2col(grad_out, k, stride, pad, x.height, x.width);
  CMapRM xm(x.data(), static_cast<Eigen::Index>(x.height) * x.width, in_c);
  CMapRM w(weight.w.data(), in_c, static_cast<Eigen::Index>(k) * k * out_c);

  MapRM gw(weight.g.data(), in_c, static_cast<Eigen::Index>(k) * k * out_c);
  gw.noalias() += xm.transpose() * gcols;
  Eigen::Map<Eigen::VectorXd> gb(bias.g.data(), out_c);
  CMapRM gy(grad_out.data(), static_cast<Eigen::Index>(grad_out.height) * grad_out.width, out_c);
  gb.noalias() += gy.colwise().sum().transpose();

  Tensor gx(x.height, x.width, in_c);
  MapRM gxm(gx.data(), static_cast<Eigen::Index>(x.height) * x.width, in_c);
  gxm.noalias() = gcols * w.transpose();
  return gx;
}

Tensor relu(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.v) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor relu_backward(const Tensor& x, const Tensor& grad_out) {
  Tensor g = grad_out;
  for (std::size_t i = 0; i < g.v.size(); ++i) {
    if (x.v[i] <= 0.0) g.v[i] = 0.0;
  }
  return g;
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.v) v = 1.0 / (1.0 + std::exp(-v));
  return out;
}

Tensor sigmoid_backward(const Tensor& y, const Tensor& grad_out) {
  Tensor g = grad_out;
  for (std::size_t i = 0; i < g.v.size(); ++i) g.v[i] *= y.v[i] * (1.0 - y.v[i]);
  return g;
}

Tensor global_mean_pool(const Tensor& x) {
  Tensor out(1, 1, x.channels);
  const std::size_t pixels = static_cast<std::size_t>(x.height) * x.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* src = x.data() + p * x.channels;
    for (int c = 0; c < x.channels; ++c) out.v[c] += src[c];
  }
  for (int c = 0; c < x.channels; ++c) out.v[c] /= static_cast<double>(pixels);
  return out;
}

Tensor global_mean_pool_backward(const Tensor& grad_pooled, int height, int width) {
  Tensor g(height, width, grad_pooled.channels);
  const double inv = 1.0 / (static_cast<double>(height) * width);
  const std::size_t pixels = static_cast<std::size_t>(height) * width;
  for (std::size_t p = 0; p < pixels; ++p) {
    double* dst = g.data() + p * g.channels;
    for (int c = 0; c < g.channels; ++c) dst[c] = grad_pooled.v[c] * inv;
  }
  return g;
}

Tensor scale_channels(const Tensor& x, const Tensor& gate) {
  if (gate.channels != x.channels || gate.height != 1 || gate.width != 1) {
    throw ValueError("scale_channels: gate must be 1x1xC");
  }
  Tensor out = x;
  const std::size_t pixels = static_cast<std::size_t>(x.height) * x.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    double* dst = out.data() + p * x.channels;
    for (int c = 0; c < x.channels; ++c) dst[c] *= gate.v[c];
  }
  return out;
}

void scale_channels_backward(const Tensor& x, const Tensor& gate, const Tensor& grad_out, Tensor& grad_x,
                             Tensor& grad_gate) {
  grad_x = grad_out;
  grad_gate = Tensor(1, 1, x.channels);
  const std::size_t pixels = static_cast<std::size_t>(x.height) * x.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    double* gx = grad_x.data() + p * x.channels;
    const double* go = grad_out.data() + p * x.channels;
    const double* xv = x.data() + p * x.channels;
    for (int c = 0; c < x.channels; ++c) {
      grad_gate.v[c] += go[c] * xv[c];
      gx[c] = go[c] * gate.v[c];
    }
  }
}

Tensor scale_pixels(const Tensor& x, const Tensor& gate) {
  if (gate.channels != 1 || gate.height != x.height || gate.width != x.width) {
    throw ValueError("scale_pixels: gate must be HxWx1");
  }
  Tensor out = x;
  const std::size_t pixels = static_cast<std::size_t>(x.height) * x.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    double* dst = out.data() + p * x.channels;
    for (int c = 0; c < x.channels; ++c) dst[c] *= gate.v[p];
  }
  return out;
}

void scale_pixels_backward(const Tensor& x, const Tensor& gate, const Tensor& grad_out, Tensor& grad_x,
                           Tensor& grad_gate) {
  grad_x = grad_out;
  grad_gate = Tensor(x.height, x.width, 1);
  const std::size_t pixels = static_cast<std::size_t>(x.height) * x.width;
  for (std::size_t p = 0; p < pixels; ++p) {
    double* gx = grad_x.data() + p * x.channels;
    const double* go = grad_out.data() + p * x.channels;
    const double* xv = x.data() + p * x.channels;
    double acc = 0.0;
    for (int c = 0; c < x.channels; ++c) {
      acc += go[c] * xv[c];
      gx[c] = go[c] * gate.v[p];
    }
    grad_gate.v[p] = acc;
  }
}

void add_inplace(Tensor& dst, const Tensor& src) {
  if (!dst.same_shape(src)) throw ValueError("add_inplace: shape mismatch");
  for (std::size_t i = 0; i < dst.v.size(); ++i) dst.v[i] += src.v[i];
}

}  // namespace dats
