#pragma once

#include <cstddef>
#include <vector>

#include "lsvc/frame.hpp"

namespace lsvc {

inline constexpr std::size_t kDefaultDpbCapacity = 4;

struct DpbEntry {
  Frame frame;
  int poc = 0;
  bool is_synthetic = false;
};

class DecodedPictureBuffer {
 public:
  explicit DecodedPictureBuffer(std::size_t capacity = kDefaultDpbCapacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<DpbEntry>& entries() const { return entries_; }

  /// Stores a decoded picture. When full, the entry with the smallest POC
  /// is evicted. Throws if a real picture with the same POC is present.
  void insert(Frame frame);
  /// Adds an entry without eviction; used for reference-list views.
  void push(DpbEntry entry);
  void remove(int poc);
  const DpbEntry* find(int poc) const;

  std::vector<DpbEntry>& mutable_entries() { return entries_; }

 private:
  std::size_t capacity_;
  std::vector<DpbEntry> entries_;
};

/// Replaces the entry with the largest |poc - current_poc| (ties: smaller
/// POC) by `synthetic`, marked synthetic and stamped with current_poc.
DecodedPictureBuffer replace_reference(DecodedPictureBuffer dpb, Frame synthetic, int current_poc);

}  // namespace lsvc
