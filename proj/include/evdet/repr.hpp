#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evdet/events.hpp"

namespace evdet {

enum class ReprKind { histogram, time_surface, event_volume };

std::string repr_kind_name(ReprKind k);
ReprKind repr_kind_from_name(const std::string& name);

struct ReprConfig {
  ReprKind kind = ReprKind::histogram;
  int clamp_count = 20;                            // m, histogram saturation
  std::vector<int64_t> taus_us = {10000, 100000};  // time-surface decays
  int bins = 5;                                    // B, event-volume bins

  int channels() const;
  void validate() const;
};

// Dense C x N x M float32 map of one time slice, indexed (c, y, x).
struct ReprTensor {
  int channels = 0;
  int height = 0;  // N
  int width = 0;   // M
  std::vector<float> data;
  int64_t t_start = 0;
  int64_t t_end = 0;

  float& at(int c, int y, int x) { return data[(size_t(c) * height + y) * width + x]; }
  float at(int c, int y, int x) const { return data[(size_t(c) * height + y) * width + x]; }
};

// Per-pixel per-polarity event counts, clamped: min(1, count / m).
// The clamp is the hot-pixel guard; no separate filtering happens.
ReprTensor build_histogram(const TimeSlice& slice, const ReprConfig& cfg,
                           int width, int height);

// Exponentially decayed latest-timestamp map per polarity and decay:
//   exp((ts[p,x,y] - max_xy ts[p,...]) / tau_j), 0 where the polarity never
// fired at that pixel. Channel = p * |taus| + j.
ReprTensor build_time_surface(const TimeSlice& slice, const ReprConfig& cfg,
                              int width, int height);

// Bilinear temporal binning: each event deposits max(0, 1 - |b - t*|) into
// the bins of its polarity, t* = (B-1)(t_i - t_first)/(t_last - t_first)
// over the slice's own first/last event (all in bin 0 when they coincide).
// Channel = b * 2 + p.
ReprTensor build_event_volume(const TimeSlice& slice, const ReprConfig& cfg,
                              int width, int height);

ReprTensor build_repr(const TimeSlice& slice, const ReprConfig& cfg,
                      int width, int height);

// Raw dump for external cross-checks: u32 C,N,M then row-major f32 payload,
// little-endian.
void write_npyish(const std::filesystem::path& path, const ReprTensor& t);
ReprTensor read_npyish(const std::filesystem::path& path);

}  // namespace evdet
