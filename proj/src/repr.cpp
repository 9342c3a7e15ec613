#include "evdet/repr.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace evdet {

std::string repr_kind_name(ReprKind k) {
  switch (k) {
    case ReprKind::histogram: return "histogram";
    case ReprKind::time_surface: return "time_surface";
    case ReprKind::event_volume: return "event_volume";
  }
  return "?";
}

ReprKind repr_kind_from_name(const std::string& name) {
  if (name == "histogram") return ReprKind::histogram;
  if (name == "time_surface") return ReprKind::time_surface;
  if (name == "event_volume") return ReprKind::event_volume;
  throw ArgumentError("unknown representation kind: " + name);
}

int ReprConfig::channels() const {
  switch (kind) {
    case ReprKind::histogram: return 2;
    case ReprKind::time_surface: return 2 * int(taus_us.size());
    case ReprKind::event_volume: return 2 * bins;
  }
  return 0;
}

void ReprConfig::validate() const {
  if (clamp_count < 1) throw ArgumentError("repr: clamp count m must be >= 1");
  if (taus_us.empty()) throw ArgumentError("repr: need at least one decay");
  for (int64_t tau : taus_us)
    if (tau <= 0) throw ArgumentError("repr: decays must be > 0");
  if (bins < 2) throw ArgumentError("repr: event volume needs B >= 2");
}

namespace {

ReprTensor make_zero(int channels, int width, int height, const TimeSlice& slice) {
  ReprTensor t;
  t.channels = channels;
  t.height = height;
  t.width = width;
  t.data.assign(size_t(channels) * height * width, 0.f);
  t.t_start = slice.t_start;
  t.t_end = slice.t_end;
  return t;
}

}  // namespace

ReprTensor build_histogram(const TimeSlice& slice, const ReprConfig& cfg,
                           int width, int height) {
  cfg.validate();
  ReprTensor out = make_zero(2, width, height, slice);
  const uint32_t m = uint32_t(cfg.clamp_count);
  std::vector<uint32_t> counts(size_t(2) * height * width, 0);
  for (const Event& e : slice.events) {
    uint32_t& c = counts[(size_t(e.p) * height + e.y) * width + e.x];
    if (c < m) ++c;  // saturating count: min(1, count/m) after division
  }
  for (size_t i = 0; i < counts.size(); ++i)
    out.data[i] = float(counts[i]) / float(m);
  return out;
}

ReprTensor build_time_surface(const TimeSlice& slice, const ReprConfig& cfg,
                              int width, int height) {
  cfg.validate();
  const int num_taus = int(cfg.taus_us.size());
  ReprTensor out = make_zero(2 * num_taus, width, height, slice);

  // Latest timestamp per pixel per polarity; -1 marks "never fired".
  std::vector<int64_t> latest(size_t(2) * height * width, -1);
  int64_t max_ts[2] = {-1, -1};
  for (const Event& e : slice.events) {
    int64_t& cell = latest[(size_t(e.p) * height + e.y) * width + e.x];
    cell = std::max(cell, e.t);
    max_ts[e.p] = std::max(max_ts[e.p], e.t);
  }

  for (int p = 0; p < 2; ++p) {
    if (max_ts[p] < 0) continue;  // polarity never fired: channels stay zero
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        int64_t ts = latest[(size_t(p) * height + y) * width + x];
        if (ts < 0) continue;
        for (int j = 0; j < num_taus; ++j) {
          float v = std::exp(float(ts - max_ts[p]) / float(cfg.taus_us[j]));
          out.at(p * num_taus + j, y, x) = v;
        }
      }
    }
  }
  return out;
}

ReprTensor build_event_volume(const TimeSlice& slice, const ReprConfig& cfg,
                              int width, int height) {
  cfg.validate();
  const int B = cfg.bins;
  ReprTensor out = make_zero(2 * B, width, height, slice);
  if (slice.events.empty()) return out;

  const int64_t t_first = slice.events.front().t;
  const int64_t t_last = slice.events.back().t;
  const double span = double(t_last - t_first);
  const size_t plane = size_t(height) * width;

  float* base = out.data.data();
  for (const Event& e : slice.events) {
    double tstar = span > 0 ? (B - 1) * double(e.t - t_first) / span : 0.0;
    int b0 = int(std::floor(tstar));
    // Deposit into the two adjacent bins; at the top end b0 == B-1 exactly.
    for (int b = std::max(0, b0); b <= std::min(B - 1, b0 + 1); ++b) {
      float w = float(1.0 - std::abs(double(b) - tstar));
      if (w <= 0.f) continue;
      base[(size_t(b) * 2 + e.p) * plane + size_t(e.y) * width + e.x] += w;
    }
  }
  return out;
}

ReprTensor build_repr(const TimeSlice& slice, const ReprConfig& cfg,
                      int width, int height) {
  switch (cfg.kind) {
    case ReprKind::histogram: return build_histogram(slice, cfg, width, height);
    case ReprKind::time_surface: return build_time_surface(slice, cfg, width, height);
    case ReprKind::event_volume: return build_event_volume(slice, cfg, width, height);
  }
  throw ArgumentError("build_repr: bad kind");
}

void write_npyish(const std::filesystem::path& path, const ReprTensor& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot open for writing: " + path.string());
  uint32_t dims[3] = {uint32_t(t.channels), uint32_t(t.height), uint32_t(t.width)};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  out.write(reinterpret_cast<const char*>(t.data.data()),
            std::streamsize(t.data.size() * sizeof(float)));
  if (!out) throw ArgumentError("write failed: " + path.string());
}

ReprTensor read_npyish(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError(path.string() + ": cannot open file");
  uint32_t dims[3];
  if (!in.read(reinterpret_cast<char*>(dims), sizeof(dims)))
    throw DecodeError(path.string() + ": truncated header at byte offset 0");
  ReprTensor t;
  t.channels = int(dims[0]);
  t.height = int(dims[1]);
  t.width = int(dims[2]);
  t.data.resize(size_t(t.channels) * t.height * t.width);
  if (!in.read(reinterpret_cast<char*>(t.data.data()),
               std::streamsize(t.data.size() * sizeof(float))))
    throw DecodeError(path.string() + ": truncated payload at byte offset 12");
  return t;
}

}  // namespace evdet
