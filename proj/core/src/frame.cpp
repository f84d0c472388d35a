#include "lsvc/frame.hpp"

#include <string>

#include "lsvc/error.hpp"

namespace lsvc {

void require_block_aligned(int width, int height) {
  if (width <= 0 || height <= 0 || width % kBlockSize != 0 || height % kBlockSize != 0) {
    throw DataError("frame dimensions " + std::to_string(width) + "x" + std::to_string(height) +
                    " are not positive multiples of " + std::to_string(kBlockSize));
  }
}

Frame::Frame(int width, int height, int poc, std::uint8_t fill)
    : width_(width), height_(height), poc_(poc) {
  require_block_aligned(width, height);
  if (poc < 0) throw DataError("negative picture order count");
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Frame::Frame(int width, int height, int poc, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), poc_(poc), samples_(std::move(samples)) {
  require_block_aligned(width, height);
  if (poc < 0) throw DataError("negative picture order count");
  if (samples_.size() != static_cast<std::size_t>(width) * height) {
    throw DataError("sample count " + std::to_string(samples_.size()) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

void Frame::set_poc(int poc) {
  if (poc < 0) throw DataError("negative picture order count");
  poc_ = poc;
}

void validate_sequence(const Sequence& seq) {
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    if (f.poc() != static_cast<int>(i)) {
      throw DataError("sequence POCs must be 0..n-1 in display order");
    }
    if (!f.same_geometry(seq.frames.front())) {
      throw DataError("sequence frames differ in dimensions");
    }
  }
}

}  // namespace lsvc
