#include "evdet/events.hpp"

#include <cstring>

namespace evdet {
namespace {

constexpr char kMagic[4] = {'E', 'V', 'T', '1'};
constexpr size_t kHeaderBytes = 16;
constexpr size_t kEventBytes = 16;

uint16_t load_u16(const char* p) {
  return uint16_t(uint8_t(p[0])) | uint16_t(uint8_t(p[1])) << 8;
}

uint64_t load_u64(const char* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = v << 8 | uint8_t(p[i]);
  return v;
}

void store_u16(char* p, uint16_t v) {
  p[0] = char(v & 0xff);
  p[1] = char(v >> 8);
}

void store_u64(char* p, uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = char(v >> (8 * i) & 0xff);
}

[[noreturn]] void decode_fail(const std::filesystem::path& path, uint64_t offset,
                              const std::string& what) {
  throw DecodeError(path.string() + ": " + what + " at byte offset " +
                    std::to_string(offset));
}

// Decodes one event record, validating bounds and monotonicity.
Event decode_event(const char* rec, uint64_t offset, uint16_t w, uint16_t h,
                   int64_t prev_t, const std::filesystem::path& path) {
  Event e;
  uint64_t t = load_u64(rec);
  if (t > uint64_t(INT64_MAX)) decode_fail(path, offset, "timestamp overflows int64");
  e.t = int64_t(t);
  e.x = load_u16(rec + 8);
  e.y = load_u16(rec + 10);
  e.p = uint8_t(rec[12]);
  if (e.x >= w) decode_fail(path, offset + 8, "x coordinate out of bounds");
  if (e.y >= h) decode_fail(path, offset + 10, "y coordinate out of bounds");
  if (e.p > 1) decode_fail(path, offset + 12, "polarity not in {0,1}");
  if (e.t < prev_t) decode_fail(path, offset, "non-monotone timestamp");
  return e;
}

}  // namespace

void EventStream::validate() const {
  int64_t prev = -1;
  for (const Event& e : events) {
    if (e.x >= width || e.y >= height)
      throw ArgumentError("event coordinate out of sensor bounds");
    if (e.p > 1) throw ArgumentError("event polarity not in {0,1}");
    if (e.t < 0 || e.t < prev) throw ArgumentError("event timestamps not monotone");
    prev = e.t;
  }
}

EventStream read_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError(path.string() + ": cannot open file");

  char header[kHeaderBytes];
  if (!in.read(header, kHeaderBytes))
    decode_fail(path, 0, "truncated header (need 16 bytes)");
  if (std::memcmp(header, kMagic, 4) != 0) decode_fail(path, 0, "bad magic");

  EventStream s;
  s.width = load_u16(header + 4);
  s.height = load_u16(header + 6);
  uint64_t count = load_u64(header + 8);
  if (s.width == 0 || s.height == 0) decode_fail(path, 4, "zero sensor dimension");

  s.events.reserve(count);
  std::vector<char> rec(kEventBytes);
  int64_t prev_t = -1;
  for (uint64_t i = 0; i < count; ++i) {
    uint64_t offset = kHeaderBytes + i * kEventBytes;
    if (!in.read(rec.data(), kEventBytes)) decode_fail(path, offset, "truncated event record");
    Event e = decode_event(rec.data(), offset, s.width, s.height, prev_t, path);
    prev_t = e.t;
    s.events.push_back(e);
  }
  return s;
}

void write_stream(const std::filesystem::path& path, const EventStream& s) {
  s.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot open for writing: " + path.string());

  char header[kHeaderBytes] = {};
  std::memcpy(header, kMagic, 4);
  store_u16(header + 4, s.width);
  store_u16(header + 6, s.height);
  store_u64(header + 8, s.events.size());
  out.write(header, kHeaderBytes);

  char rec[kEventBytes];
  for (const Event& e : s.events) {
    std::memset(rec, 0, kEventBytes);
    store_u64(rec, uint64_t(e.t));
    store_u16(rec + 8, e.x);
    store_u16(rec + 10, e.y);
    rec[12] = char(e.p);
    out.write(rec, kEventBytes);
  }
  if (!out) throw ArgumentError("write failed: " + path.string());
}

ChunkedReader::ChunkedReader(const std::filesystem::path& path, size_t buffer_events)
    : in_(path, std::ios::binary), path_(path), buffer_events_(buffer_events) {
  if (!in_) throw DecodeError(path.string() + ": cannot open file");
  char header[kHeaderBytes];
  if (!in_.read(header, kHeaderBytes))
    decode_fail(path, 0, "truncated header (need 16 bytes)");
  if (std::memcmp(header, kMagic, 4) != 0) decode_fail(path, 0, "bad magic");
  width_ = load_u16(header + 4);
  height_ = load_u16(header + 6);
  count_ = load_u64(header + 8);
  if (width_ == 0 || height_ == 0) decode_fail(path, 4, "zero sensor dimension");
  buf_.resize(buffer_events_ * kEventBytes);
}

void ChunkedReader::refill() {
  size_t want = std::min<uint64_t>(buffer_events_, count_ - read_);
  in_.read(buf_.data(), std::streamsize(want * kEventBytes));
  size_t got = size_t(in_.gcount());
  if (got < want * kEventBytes)
    decode_fail(path_, kHeaderBytes + read_ * kEventBytes + got, "truncated event record");
  buf_len_ = want;
  buf_pos_ = 0;
}

bool ChunkedReader::next(Event& e) {
  if (read_ >= count_) return false;
  if (buf_pos_ >= buf_len_) refill();
  uint64_t offset = kHeaderBytes + read_ * kEventBytes;
  e = decode_event(buf_.data() + buf_pos_ * kEventBytes, offset, width_, height_,
                   prev_t_, path_);
  prev_t_ = e.t;
  ++buf_pos_;
  ++read_;
  return true;
}

std::vector<TimeSlice> slice_by_time(const EventStream& s, int64_t delta_t_us) {
  if (delta_t_us <= 0) throw ArgumentError("slice_by_time: delta_t must be > 0");
  std::vector<TimeSlice> out;
  if (s.events.empty()) return out;

  int64_t t_last = s.events.back().t;
  size_t num_slices = size_t(t_last / delta_t_us) + 1;
  out.reserve(num_slices);
  size_t begin = 0;
  for (size_t k = 0; k < num_slices; ++k) {
    int64_t lo = int64_t(k) * delta_t_us;
    int64_t hi = lo + delta_t_us;
    size_t end = begin;
    while (end < s.events.size() && s.events[end].t < hi) ++end;
    out.push_back(TimeSlice{lo, hi, std::span(s.events).subspan(begin, end - begin)});
    begin = end;
  }
  return out;
}

std::vector<TimeSlice> slice_by_count(const EventStream& s, size_t n) {
  if (n == 0) throw ArgumentError("slice_by_count: n must be >= 1");
  std::vector<TimeSlice> out;
  for (size_t begin = 0; begin < s.events.size(); begin += n) {
    size_t len = std::min(n, s.events.size() - begin);
    auto ev = std::span(s.events).subspan(begin, len);
    out.push_back(TimeSlice{ev.front().t, ev.back().t + 1, ev});
  }
  return out;
}

}  // namespace evdet
