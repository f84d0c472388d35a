#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lsvc {

inline constexpr int kBlockSize = 16;
inline constexpr int kBitDepth = 8;

/// 8-bit luma picture with a picture order count. Dimensions are multiples
/// of kBlockSize; samples are row-major with a top-left origin.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, int poc = 0, std::uint8_t fill = 0);
  Frame(int width, int height, int poc, std::vector<std::uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  int poc() const { return poc_; }
  void set_poc(int poc);
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  std::uint8_t at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }
  const std::uint8_t* row(int y) const { return samples_.data() + static_cast<std::size_t>(y) * width_; }

  bool same_geometry(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.samples_ == b.samples_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  int poc_ = 0;
  std::vector<std::uint8_t> samples_;
};

/// Throws DataError unless both dimensions are positive multiples of kBlockSize.
void require_block_aligned(int width, int height);

struct Sequence {
  std::string name;
  double frame_rate = 30.0;
  std::vector<Frame> frames;

  int width() const { return frames.empty() ? 0 : frames.front().width(); }
  int height() const { return frames.empty() ? 0 : frames.front().height(); }
  std::size_t frame_count() const { return frames.size(); }
};

/// Checks POCs are 0..n-1 and all frames share dimensions.
void validate_sequence(const Sequence& seq);

struct GroundTruthBox {
  int poc = 0;
  int class_id = 0;
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const GroundTruthBox&, const GroundTruthBox&) = default;
};

}  // namespace lsvc
