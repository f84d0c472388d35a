#include "lsvc/raw_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "lsvc/error.hpp"

namespace lsvc {

Sequence load_raw(const std::filesystem::path& path, int width, int height) {
  require_block_aligned(width, height);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const std::size_t frame_bytes = static_cast<std::size_t>(width) * height;
  if (bytes.empty()) throw DataError(path.string() + " is empty");
  if (bytes.size() % frame_bytes != 0) {
    throw DataError(path.string() + ": size " + std::to_string(bytes.size()) +
                    " is not a multiple of " + std::to_string(frame_bytes));
  }

  Sequence seq;
  seq.name = path.stem().string();
  const std::size_t n = bytes.size() / frame_bytes;
  seq.frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto first = bytes.begin() + static_cast<std::ptrdiff_t>(i * frame_bytes);
    seq.frames.emplace_back(width, height, static_cast<int>(i),
                            std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(frame_bytes)));
  }
  return seq;
}

void save_raw(const Sequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  for (const Frame& f : seq.frames) {
    out.write(reinterpret_cast<const char*>(f.samples().data()), static_cast<std::streamsize>(f.size()));
  }
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<GroundTruthBox> load_ground_truth_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<GroundTruthBox> boxes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind("poc", 0) == 0) continue;
    std::istringstream fields(line);
    GroundTruthBox b;
    char c1, c2, c3, c4, c5;
    if (!(fields >> b.poc >> c1 >> b.class_id >> c2 >> b.x >> c3 >> b.y >> c4 >> b.w >> c5 >> b.h) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed box row");
    }
    if (b.w <= 0 || b.h <= 0) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty box");
    }
    boxes.push_back(b);
  }
  return boxes;
}

void save_ground_truth_csv(const std::vector<GroundTruthBox>& boxes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << "poc,class_id,x,y,w,h\n";
  for (const auto& b : boxes) {
    out << b.poc << ',' << b.class_id << ',' << b.x << ',' << b.y << ',' << b.w << ',' << b.h << '\n';
  }
}

}  // namespace lsvc
