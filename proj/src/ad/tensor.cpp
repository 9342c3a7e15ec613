#include "evdet/ad/tensor.hpp"

#include <cmath>
#include <sstream>

namespace evdet::ad {

std::string Shape::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < rank; ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

Tensor Tensor::from(Shape s, std::vector<float> values) {
  if (int64_t(values.size()) != s.numel())
    throw ArgumentError("Tensor::from: value count does not match shape " + s.str());
  Tensor t;
  t.shape_ = s;
  t.data_ = std::make_shared<std::vector<float>>(std::move(values));
  return t;
}

Tensor Tensor::clone() const {
  Tensor t;
  t.shape_ = shape_;
  t.data_ = std::make_shared<std::vector<float>>(*data_);
  return t;
}

Tensor Tensor::reshaped(Shape s) const {
  if (s.numel() != numel())
    throw ArgumentError("Tensor::reshaped: numel mismatch " + shape_.str() + " -> " + s.str());
  Tensor t;
  t.shape_ = s;
  t.data_ = data_;
  return t;
}

void Tensor::fill(float v) {
  for (float& x : *data_) x = v;
}

void Tensor::add_(const Tensor& other) {
  if (shape_ != other.shape_) throw ArgumentError("Tensor::add_: shape mismatch");
  const float* src = other.data();
  float* dst = data();
  for (int64_t i = 0, n = numel(); i < n; ++i) dst[i] += src[i];
}

bool Tensor::all_finite() const {
  for (float x : *data_)
    if (!std::isfinite(x)) return false;
  return true;
}

double Tensor::abs_max() const {
  double m = 0;
  for (float x : *data_) m = std::max(m, double(std::fabs(x)));
  return m;
}

void Tensor::randn(Rng& rng, float stddev) {
  std::normal_distribution<float> dist(0.f, stddev);
  for (float& x : *data_) x = dist(rng);
}

}  // namespace evdet::ad
