#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "evdet/ad/tensor.hpp"

namespace evdet::ad {

// Trainable parameter. The gradient buffer persists across graphs and is
// accumulated into by every backward pass until zero_grads().
struct Param {
  std::string name;
  Tensor value;
  Tensor grad;

  Param(std::string n, Tensor v)
      : name(std::move(n)), value(std::move(v)), grad(value.shape()) {}
};

class ParamStore {
 public:
  Param& add(const std::string& name, Tensor init);
  Param* find(const std::string& name);
  const Param* find(const std::string& name) const;

  std::span<const std::unique_ptr<Param>> items() const { return items_; }
  std::span<std::unique_ptr<Param>> items() { return items_; }
  size_t size() const { return items_.size(); }
  int64_t total_parameters() const;
  void zero_grads();

 private:
  std::vector<std::unique_ptr<Param>> items_;
  std::unordered_map<std::string, Param*> by_name_;
};

// Non-trainable BatchNorm state. Running statistics follow
// running = momentum * running + (1 - momentum) * batch.
struct BatchNormState {
  Tensor running_mean;
  Tensor running_var;
  double momentum = 0.9;
  float eps = 1e-5f;

  explicit BatchNormState(int channels = 0)
      : running_mean(Shape{channels}), running_var(Shape{channels}) {
    running_var.fill(1.f);
  }
};

struct Node;
using NodeRef = std::shared_ptr<Node>;

struct Node {
  Tensor value;
  Tensor grad;  // lazily allocated, same shape as value
  bool requires_grad = false;
  Param* param = nullptr;
  int id = 0;
  std::vector<NodeRef> parents;
  std::function<void(Node&)> backward_fn;

  Tensor& ensure_grad();
};

enum class Reduction { mean, sum };

// Reverse-mode tape. Nodes are created in topological order by construction;
// backward() walks the reachable set in reverse creation order.
//
// recording=false skips closure capture entirely (inference mode).
// training toggles BatchNorm between batch statistics and running averages.
class Graph {
 public:
  explicit Graph(bool recording = true, bool training = false)
      : recording(recording), training(training) {}

  bool recording;
  bool training;

  NodeRef leaf(Tensor v, bool requires_grad = false);
  NodeRef scalar(float v);
  NodeRef use(Param& p);  // one node per param per graph

  // -- convolution / dense ------------------------------------------------
  // Same-padding with ceil(in/stride) output size. x:(N,Cin,H,W),
  // w:(Cout,Cin,kh,kw), b:(Cout) or undefined for no bias.
  NodeRef conv2d(NodeRef x, NodeRef w, NodeRef b, int stride);
  // x:(N,Cin) @ w:(Cin,Cout) + b
  NodeRef dense(NodeRef x, NodeRef w, NodeRef b);

  // -- normalization / activations ----------------------------------------
  NodeRef batchnorm2d(NodeRef x, NodeRef gamma, NodeRef beta, BatchNormState& state);
  NodeRef relu(NodeRef x);
  NodeRef sigmoid(NodeRef x);
  NodeRef tanh_(NodeRef x);
  NodeRef log_(NodeRef x);
  NodeRef pow_scalar(NodeRef x, float exponent);

  // -- pooling -------------------------------------------------------------
  // Same-style ceil(in/stride) output; windows clipped at borders, average
  // divides by the clipped window size.
  NodeRef max_pool(NodeRef x, int k, int stride);
  NodeRef avg_pool(NodeRef x, int k, int stride);
  NodeRef global_avg_pool(NodeRef x);  // (N,C,H,W) -> (N,C)

  // -- elementwise / broadcast ---------------------------------------------
  NodeRef add(NodeRef a, NodeRef b);
  NodeRef sub(NodeRef a, NodeRef b);
  NodeRef mul(NodeRef a, NodeRef b);
  NodeRef add_scalar(NodeRef x, float v);
  NodeRef mul_scalar(NodeRef x, float v);
  // (N,C,H,W) scaled per channel by gates (N,C): the squeeze-excite gating.
  NodeRef scale_channels(NodeRef x, NodeRef gates);

  // -- shape plumbing -------------------------------------------------------
  NodeRef reshape(NodeRef x, Shape s);  // same numel, shares the buffer
  NodeRef narrow_channels(NodeRef x, int from, int len);  // NCHW channel slice
  NodeRef narrow_axis0(NodeRef x, int from, int len);
  NodeRef concat_axis0(const std::vector<NodeRef>& xs);
  NodeRef concat_axis1(const std::vector<NodeRef>& xs);  // rank-3 (N,R,K)
  // (N, A*K, H, W) -> (N, H*W*A, K); row (y*W + x)*A + a, channel a*K + k.
  NodeRef flatten_preds(NodeRef x, int values_per_anchor);
  NodeRef gather_rows(NodeRef x, std::vector<int> rows);  // (R,K) row subset

  // -- reductions / losses --------------------------------------------------
  NodeRef sum(NodeRef x);
  NodeRef mean(NodeRef x);
  NodeRef softmax(NodeRef x);  // rank-2, over last axis
  // Softmax focal loss over rows of (R, K) logits; targets in [0, K).
  NodeRef softmax_focal_loss(NodeRef logits, std::vector<int> targets, float gamma,
                             Reduction red = Reduction::mean);
  // Piecewise-smooth L1 against a constant target, beta-quadratic core.
  NodeRef smooth_l1(NodeRef pred, Tensor target, float beta,
                    Reduction red = Reduction::mean);

  // Seeds d(out)=1 and propagates to every reachable node requiring grad.
  // out must be scalar.
  void backward(const NodeRef& out);

  size_t num_nodes() const { return tape_.size(); }

 private:
  friend struct OpBuilder;
  NodeRef make(Tensor value, std::vector<NodeRef> parents,
               std::function<void(Node&)> backward_fn);

  int next_id_ = 0;
  std::vector<NodeRef> tape_;
  std::unordered_map<const Param*, NodeRef> param_nodes_;
};

// Finite-difference verification. Rebuilds the graph via `builder` for each
// probe, so the builder must be deterministic. Samples up to
// max_elems_per_param coordinates per parameter (all when the parameter is
// small). Relative error uses max(|analytic|, |numeric|, 1e-3) as the
// denominator.
struct GradCheckReport {
  struct Entry {
    std::string name;
    double max_rel_err = 0;
  };
  std::vector<Entry> entries;
  double worst = 0;
  bool ok(double tol) const { return worst <= tol; }
};

GradCheckReport check_gradients(ParamStore& params,
                                const std::function<NodeRef(Graph&)>& builder,
                                double eps = 1e-3, int max_elems_per_param = 40,
                                Rng* rng = nullptr);

}  // namespace evdet::ad
