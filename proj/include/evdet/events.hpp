#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <vector>

#include "evdet/common.hpp"

namespace evdet {

// One sensor event: pixel (x,y), polarity p in {0,1}, timestamp t in
// integer microseconds. Streams keep events ordered by t (stable on ties).
struct Event {
  int64_t t = 0;
  uint16_t x = 0;
  uint16_t y = 0;
  uint8_t p = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

struct EventStream {
  uint16_t width = 0;   // M
  uint16_t height = 0;  // N
  std::vector<Event> events;

  // Throws ArgumentError on out-of-bounds coordinates, bad polarity or
  // non-monotone timestamps.
  void validate() const;
};

// Half-open window [t_start, t_end) viewing events of a parent stream.
struct TimeSlice {
  int64_t t_start = 0;
  int64_t t_end = 0;
  std::span<const Event> events;
};

// Slice owning its event buffer, produced by the streaming slicer.
struct OwnedSlice {
  int64_t t_start = 0;
  int64_t t_end = 0;
  std::vector<Event> events;

  TimeSlice view() const { return TimeSlice{t_start, t_end, events}; }
};

// ---- .evt binary container ----
// Little-endian. 16-byte header: magic "EVT1", u16 width, u16 height,
// u64 event count. Then 16 bytes per event:
// u64 t (us), u16 x, u16 y, u8 p, 5 zero pad bytes.

EventStream read_stream(const std::filesystem::path& path);
void write_stream(const std::filesystem::path& path, const EventStream& s);

// Sequential reader for streams too large to materialize.
class ChunkedReader {
 public:
  explicit ChunkedReader(const std::filesystem::path& path,
                         size_t buffer_events = 1 << 16);

  uint16_t width() const { return width_; }
  uint16_t height() const { return height_; }
  uint64_t total_events() const { return count_; }

  // Pulls the next event; returns false at end of stream.
  bool next(Event& e);

 private:
  void refill();

  std::ifstream in_;
  std::filesystem::path path_;
  uint16_t width_ = 0, height_ = 0;
  uint64_t count_ = 0;
  uint64_t read_ = 0;
  int64_t prev_t_ = -1;
  std::vector<char> buf_;
  size_t buf_pos_ = 0, buf_len_ = 0;
  size_t buffer_events_;
};

// Slice k covers [k*dt, (k+1)*dt). Every event lands in exactly one slice;
// the returned slices jointly cover [0, t_last]. Gap windows come back
// empty rather than being skipped.
std::vector<TimeSlice> slice_by_time(const EventStream& s, int64_t delta_t_us);

// Fixed-count slicing: every slice has n events except possibly the last.
// Slice bounds are [first event t, last event t + 1) so the contained
// events satisfy the half-open invariant.
std::vector<TimeSlice> slice_by_count(const EventStream& s, size_t n);

// Streaming variant of slice_by_time over a ChunkedReader: invokes fn on
// each OwnedSlice in order without materializing the whole stream.
template <typename Fn>
void for_each_time_slice(ChunkedReader& reader, int64_t delta_t_us, Fn&& fn) {
  if (delta_t_us <= 0) throw ArgumentError("slice_by_time: delta_t must be > 0");
  OwnedSlice cur;
  cur.t_start = 0;
  cur.t_end = delta_t_us;
  bool any = false;
  Event e;
  while (reader.next(e)) {
    any = true;
    while (e.t >= cur.t_end) {
      fn(const_cast<const OwnedSlice&>(cur));
      cur.events.clear();
      cur.t_start = cur.t_end;
      cur.t_end += delta_t_us;
    }
    cur.events.push_back(e);
  }
  if (any) fn(const_cast<const OwnedSlice&>(cur));
}

}  // namespace evdet
