#include "lsvc/interpolation.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

// Half-pel grid scaled by 4, padded so that any candidate of the +-16
// search lands inside without bounds checks. Grid point (hx, hy) maps to
// pixel position (hx/2, hy/2).
class HalfPelPlane {
 public:
  static constexpr int kPad = 2 * kSearchRange + 2 * kBlockSize;

  explicit HalfPelPlane(const Frame& f) : width_(2 * f.width() - 1), height_(2 * f.height() - 1) {
    stride_ = width_ + 2 * kPad;
    data_.resize(static_cast<std::size_t>(stride_) * (height_ + 2 * kPad));
    for (int hy = -kPad; hy < height_ + kPad; ++hy) {
      const int cy = std::clamp(hy, 0, height_ - 1);
      const int y0 = cy / 2;
      const int y1 = (cy + 1) / 2;
      for (int hx = -kPad; hx < width_ + kPad; ++hx) {
        const int cx = std::clamp(hx, 0, width_ - 1);
        const int x0 = cx / 2;
        const int x1 = (cx + 1) / 2;
        const int v = f.at(x0, y0) + f.at(x1, y0) + f.at(x0, y1) + f.at(x1, y1);
        data_[index(hx, hy)] = static_cast<std::int16_t>(v);
      }
    }
  }

  std::int16_t at(int hx, int hy) const { return data_[index(hx, hy)]; }
  const std::int16_t* ptr(int hx, int hy) const { return data_.data() + index(hx, hy); }

 private:
  std::size_t index(int hx, int hy) const {
    return static_cast<std::size_t>(hy + kPad) * stride_ + static_cast<std::size_t>(hx + kPad);
  }

  int width_;
  int height_;
  int stride_ = 0;
  std::vector<std::int16_t> data_;
};

MotionVector search_block(const HalfPelPlane& a, const HalfPelPlane& b, int bx, int by) {
  MotionVector best;
  long best_sad = std::numeric_limits<long>::max();
  int best_len = 0;
  for (int dy = -kSearchRange; dy <= kSearchRange; ++dy) {
    for (int dx = -kSearchRange; dx <= kSearchRange; ++dx) {
      long sad = 0;
      for (int y = 0; y < kBlockSize && sad <= best_sad; ++y) {
        const std::int16_t* pa = a.ptr(2 * bx - dx, 2 * (by + y) - dy);
        const std::int16_t* pb = b.ptr(2 * bx + dx, 2 * (by + y) + dy);
        for (int x = 0; x < kBlockSize; ++x) sad += std::abs(pa[2 * x] - pb[2 * x]);
      }
      const int len = std::abs(dx) + std::abs(dy);
      if (sad < best_sad || (sad == best_sad && len < best_len)) {
        best_sad = sad;
        best_len = len;
        best = {dx, dy};
      }
    }
  }
  return best;
}

void check_pair(const Frame& f1, const Frame& f2) {
  if (!f1.same_geometry(f2)) throw DataError("interpolation inputs differ in dimensions");
}

}  // namespace

std::vector<MotionVector> interpolation_motion(const Frame& f1, const Frame& f2) {
  check_pair(f1, f2);
  const HalfPelPlane a(f1);
  const HalfPelPlane b(f2);
  std::vector<MotionVector> field;
  for (int by = 0; by < f1.height(); by += kBlockSize) {
    for (int bx = 0; bx < f1.width(); bx += kBlockSize) field.push_back(search_block(a, b, bx, by));
  }
  return field;
}

Frame interpolate_frame(const Frame& f1, const Frame& f2, int poc) {
  check_pair(f1, f2);
  if (!(f1.poc() < poc && poc < f2.poc()) || 2 * poc != f1.poc() + f2.poc()) {
    throw DataError("interpolation target must be the midpoint between its anchors");
  }
  const HalfPelPlane a(f1);
  const HalfPelPlane b(f2);
  Frame out(f1.width(), f1.height(), poc);
  for (int by = 0; by < f1.height(); by += kBlockSize) {
    for (int bx = 0; bx < f1.width(); bx += kBlockSize) {
      const MotionVector mv = search_block(a, b, bx, by);
      for (int y = 0; y < kBlockSize; ++y) {
        for (int x = 0; x < kBlockSize; ++x) {
          const int hx = 2 * (bx + x);
          const int hy = 2 * (by + y);
          const int sum = a.at(hx - mv.dx, hy - mv.dy) + b.at(hx + mv.dx, hy + mv.dy);
          out.at(bx + x, by + y) = static_cast<std::uint8_t>((sum + 4) >> 3);
        }
      }
    }
  }
  return out;
}

}  // namespace lsvc
