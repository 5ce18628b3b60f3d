#ifndef DATS_MODEL_HPP
#define DATS_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dats/layers.hpp"
#include "dats/tensor.hpp"

namespace dats {

/// Architecture hyperparameters. The paper-level constraints are fixed in
/// code (two stride-2 encoder stages, concatenation fusion, global residual
/// from the upsampled MS input); everything sizeable lives here so reduced
/// configurations can be built for tests and experiments. base_width 32
/// reproduces the published stage plan 32/64/128 with a 256-channel fusion.
struct ModelSpec {
  int base_width = 32;
  int cla_reduction = 8;
  int fusion_units = 3;
  int pan_channels = 1;
  int ms_channels = 4;
  int out_channels = 4;

  /// Spatial reduction of the encoders; fixed by the two stride-2 stages.
  static constexpr int kScale = 4;

  int width1() const { return base_width; }
  int width2() const { return 2 * base_width; }
  int width3() const { return 4 * base_width; }
  int fused_width() const { return 2 * width3(); }
  int gate_mid() const { return std::max(1, width3() / cla_reduction); }

  void validate() const;
  std::string to_json() const;
  static ModelSpec from_json(const std::string& text);

  bool operator==(const ModelSpec&) const = default;
};

enum class Stream { Pan, Ms };

/// Per-stage encoder activations; `half` and `full` feed the decoder skip
/// concatenations.
struct EncoderStages {
  Tensor full;     // stride 1, width1 channels
  Tensor half;     // stride 2, width2 channels
  Tensor quarter;  // stride 4, width3 channels
};

/// The dual attention two-stream network. Parameters are owned by the layer
/// objects and exposed through a stable, construction-ordered registry for
/// the optimizer and the checkpoint container.
class DatsNet {
 public:
  explicit DatsNet(const ModelSpec& spec, std::uint64_t init_seed = 2026);

  DatsNet(const DatsNet&) = delete;
  DatsNet& operator=(const DatsNet&) = delete;
  DatsNet(DatsNet&&) = delete;

  const ModelSpec& spec() const { return spec_; }
  const std::vector<Param*>& params() const { return params_; }
  std::vector<Param*>& params() { return params_; }
  std::size_t param_count() const;
  void zero_grads();

  /// Everything backward() needs; produced by forward_raw.
  struct Cache {
    Tensor pan_in, ms_in;
    struct Enc {
      Tensor z1, a1, z2, a2, z3, a3;
    } pan_enc, ms_enc;
    Tensor cla_pooled, cla_z1, cla_a1, cla_z2, cla_w, cla_out;
    struct Pla {
      Tensor in, z1, a1, z2, w, out;
    } pla_ms, pla_pan;
    Tensor fused;
    struct FusionUnit {
      Tensor in, z, sum;
    };
    std::vector<FusionUnit> fusion;
    Tensor fusion_out;
    Tensor t1z, t1a, cat1, m1z, m1a, t2z, t2a, cat2, m2z, m2a, yz, out_raw;
  };

  /// Inference: full pipeline, output clamped to [0,1].
  Tensor forward(const Tensor& pan, const Tensor& lrms_up) const;

  /// Training-path forward: unclamped output, intermediates cached.
  Tensor forward_raw(const Tensor& pan, const Tensor& lrms_up, Cache* cache = nullptr) const;

  /// Accumulate parameter gradients for d(loss)/d(out_raw) = grad_out.
  void backward(const Cache& cache, const Tensor& grad_out);

  // stage-level entry points, used by the python bindings and the tests
  EncoderStages encode_pan(const Tensor& pan) const;
  EncoderStages encode_ms(const Tensor& lrms_up) const;
  Tensor channel_attention_weights(const Tensor& f) const;
  Tensor channel_attention(const Tensor& f) const;
  Tensor pixel_attention_weights(const Tensor& f, Stream which) const;
  Tensor pixel_attention(const Tensor& f, Stream which) const;
  static Tensor fuse(const Tensor& ms_att, const Tensor& pan_att);
  Tensor fusion_network(const Tensor& f) const;
  Tensor reconstruct(const Tensor& f, const EncoderStages& pan_feats, const EncoderStages& ms_feats,
                     const Tensor& lrms_up) const;

 private:
  void check_inputs(const Tensor& pan, const Tensor& lrms_up) const;
  EncoderStages run_encoder(const Tensor& x, Stream which, Cache::Enc* cache) const;

  ModelSpec spec_;

  Conv2d pan_c1_, pan_c2_, pan_c3_;
  Conv2d ms_c1_, ms_c2_, ms_c3_;
  Conv2d cla_fc1_, cla_fc2_;
  Conv2d pla_pan_g1_, pla_pan_g2_;
  Conv2d pla_ms_g1_, pla_ms_g2_;
  std::vector<Conv2d> fusion_;
  ConvTranspose2d up1_, up2_;
  Conv2d merge1_, merge2_, out_;

  std::vector<Param*> params_;
};

}  // namespace dats

#endif
