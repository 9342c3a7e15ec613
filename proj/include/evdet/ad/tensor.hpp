#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "evdet/common.hpp"

namespace evdet::ad {

// Up to 5 axes, f32 throughout.
struct Shape {
  std::array<int, 5> d{1, 1, 1, 1, 1};
  int rank = 0;

  Shape() = default;
  Shape(std::initializer_list<int> dims) {
    rank = int(dims.size());
    int i = 0;
    for (int v : dims) d[i++] = v;
  }

  int operator[](int i) const { return d[i]; }
  int64_t numel() const {
    int64_t n = 1;
    for (int i = 0; i < rank; ++i) n *= d[i];
    return rank == 0 ? 0 : n;
  }
  bool operator==(const Shape& o) const {
    if (rank != o.rank) return false;
    for (int i = 0; i < rank; ++i)
      if (d[i] != o.d[i]) return false;
    return true;
  }
  bool operator!=(const Shape& o) const { return !(*this == o); }
  std::string str() const;
};

// Value buffer with shared ownership; copies are shallow views of the same
// storage (clone() for a deep copy).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape s) : shape_(s), data_(std::make_shared<std::vector<float>>(s.numel(), 0.f)) {}
  Tensor(Shape s, float fill)
      : shape_(s), data_(std::make_shared<std::vector<float>>(s.numel(), fill)) {}

  static Tensor zeros(Shape s) { return Tensor(s); }
  static Tensor from(Shape s, std::vector<float> values);

  bool defined() const { return data_ != nullptr; }
  const Shape& shape() const { return shape_; }
  int64_t numel() const { return shape_.numel(); }

  float* data() { return data_->data(); }
  const float* data() const { return data_->data(); }
  float& operator[](int64_t i) { return (*data_)[size_t(i)]; }
  float operator[](int64_t i) const { return (*data_)[size_t(i)]; }

  Tensor clone() const;
  // Same storage under a new shape (numel must match).
  Tensor reshaped(Shape s) const;
  void fill(float v);
  void add_(const Tensor& other);         // elementwise in-place add
  bool all_finite() const;
  double abs_max() const;

  // Gaussian fill, mean 0 / given stddev.
  void randn(Rng& rng, float stddev);

 private:
  Shape shape_;
  std::shared_ptr<std::vector<float>> data_;
};

}  // namespace evdet::ad
