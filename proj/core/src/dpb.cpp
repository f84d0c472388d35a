#include "lsvc/dpb.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "lsvc/error.hpp"

namespace lsvc {

DecodedPictureBuffer::DecodedPictureBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw DataError("DPB capacity must be positive");
}

void DecodedPictureBuffer::insert(Frame frame) {
  const int poc = frame.poc();
  for (const auto& e : entries_) {
    if (!e.is_synthetic && e.poc == poc) throw InvariantError("DPB already holds POC " + std::to_string(poc));
  }
  if (entries_.size() >= capacity_) {
    auto oldest = std::min_element(entries_.begin(), entries_.end(),
                                   [](const DpbEntry& a, const DpbEntry& b) { return a.poc < b.poc; });
    entries_.erase(oldest);
  }
  entries_.push_back({std::move(frame), poc, false});
}

void DecodedPictureBuffer::push(DpbEntry entry) {
  if (entries_.size() >= capacity_) throw InvariantError("DPB view over capacity");
  entries_.push_back(std::move(entry));
}

void DecodedPictureBuffer::remove(int poc) {
  std::erase_if(entries_, [poc](const DpbEntry& e) { return e.poc == poc && !e.is_synthetic; });
}

const DpbEntry* DecodedPictureBuffer::find(int poc) const {
  for (const auto& e : entries_) {
    if (e.poc == poc && !e.is_synthetic) return &e;
  }
  return nullptr;
}

DecodedPictureBuffer replace_reference(DecodedPictureBuffer dpb, Frame synthetic, int current_poc) {
  auto& entries = dpb.mutable_entries();
  if (entries.empty()) throw DataError("cannot replace a reference in an empty DPB");
  std::size_t victim = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const int d = std::abs(entries[i].poc - current_poc);
    const int best = std::abs(entries[victim].poc - current_poc);
    if (d > best || (d == best && entries[i].poc < entries[victim].poc)) victim = i;
  }
  synthetic.set_poc(current_poc);
  entries[victim] = {std::move(synthetic), current_poc, true};
  return dpb;
}

}  // namespace lsvc
