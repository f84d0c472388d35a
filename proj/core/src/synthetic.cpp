#include "lsvc/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

struct Wave {
  double amplitude;
  double fx;
  double fy;
  double phase;
};

// Band-limited background texture: a handful of plane waves with random
// orientation and periods between 12 and 48 pixels. Continuous in (x, y),
// so sub-pixel pans stay well defined.
std::vector<Wave> make_texture(const SceneSpec& spec) {
  std::vector<Wave> waves;
  if (spec.texture_amplitude <= 0) return waves;
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> period(12.0, 48.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  constexpr int kWaves = 6;
  for (int k = 0; k < kWaves; ++k) {
    const double p = period(rng);
    const double a = angle(rng);
    waves.push_back({static_cast<double>(spec.texture_amplitude) / std::sqrt(static_cast<double>(kWaves)),
                     std::cos(a) / p, std::sin(a) / p, angle(rng)});
  }
  return waves;
}

bool inside_shape(const SceneObject& obj, int left, int top, int x, int y) {
  if (x < left || y < top || x >= left + obj.width || y >= top + obj.height) return false;
  if (obj.shape == ObjectShape::kRectangle) return true;
  const double rx = obj.width / 2.0;
  const double ry = obj.height / 2.0;
  const double dx = (x + 0.5 - left - rx) / rx;
  const double dy = (y + 0.5 - top - ry) / ry;
  return dx * dx + dy * dy <= 1.0;
}

void validate_spec(const SceneSpec& spec) {
  if (spec.frame_count <= 0) throw DataError("scene frame_count must be positive");
  require_block_aligned(spec.width, spec.height);
  if (spec.noise_sigma < 0.0) throw DataError("noise sigma must be non-negative");
  for (const auto& obj : spec.objects) {
    if (obj.width <= 0 || obj.height <= 0) throw DataError("scene object with empty size");
    const auto left = static_cast<int>(std::lround(obj.x0));
    const auto top = static_cast<int>(std::lround(obj.y0));
    if (left < 0 || top < 0 || left + obj.width > spec.width || top + obj.height > spec.height) {
      throw DataError("scene object does not fit in the frame at t=0");
    }
  }
}

}  // namespace

std::pair<Sequence, std::vector<GroundTruthBox>> generate_synthetic(const SceneSpec& spec) {
  validate_spec(spec);
  const auto waves = make_texture(spec);
  std::mt19937_64 noise_rng(spec.seed);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma > 0.0 ? spec.noise_sigma : 1.0);

  Sequence seq;
  seq.name = spec.name;
  std::vector<GroundTruthBox> boxes;
  std::vector<double> plane(static_cast<std::size_t>(spec.width) * spec.height);

  for (int t = 0; t < spec.frame_count; ++t) {
    const double ox = spec.pan_x * t;
    const double oy = spec.pan_y * t;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        double v = spec.background_level + spec.background_slope_x * x + spec.background_slope_y * y;
        for (const auto& w : waves) {
          v += w.amplitude * std::sin(2.0 * std::numbers::pi * (w.fx * (x + ox) + w.fy * (y + oy)) + w.phase);
        }
        plane[static_cast<std::size_t>(y) * spec.width + x] = v;
      }
    }

    for (const auto& obj : spec.objects) {
      const auto left = static_cast<int>(std::lround(obj.x0 + obj.vx * t));
      const auto top = static_cast<int>(std::lround(obj.y0 + obj.vy * t));
      const int x_begin = std::max(left, 0);
      const int y_begin = std::max(top, 0);
      const int x_end = std::min(left + obj.width, spec.width);
      const int y_end = std::min(top + obj.height, spec.height);
      if (x_begin >= x_end || y_begin >= y_end) continue;
      for (int y = y_begin; y < y_end; ++y) {
        for (int x = x_begin; x < x_end; ++x) {
          if (inside_shape(obj, left, top, x, y)) {
            plane[static_cast<std::size_t>(y) * spec.width + x] = obj.intensity;
          }
        }
      }
      boxes.push_back({t, obj.class_id, x_begin, y_begin, x_end - x_begin, y_end - y_begin});
    }

    Frame frame(spec.width, spec.height, t);
    auto out = frame.samples();
    for (std::size_t i = 0; i < plane.size(); ++i) {
      double v = plane[i];
      if (spec.noise_sigma > 0.0) v += noise(noise_rng);
      out[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
    seq.frames.push_back(std::move(frame));
  }
  return {std::move(seq), std::move(boxes)};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

SceneObject parse_object(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 8 && parts.size() != 9) {
    throw DataError("object expects shape,x0,y0,w,h,vx,vy,intensity[,class]: " + value);
  }
  SceneObject obj;
  if (parts[0] == "rect" || parts[0] == "rectangle") {
    obj.shape = ObjectShape::kRectangle;
  } else if (parts[0] == "ellipse") {
    obj.shape = ObjectShape::kEllipse;
  } else {
    throw DataError("unknown object shape '" + parts[0] + "'");
  }
  try {
    obj.x0 = std::stod(parts[1]);
    obj.y0 = std::stod(parts[2]);
    obj.width = std::stoi(parts[3]);
    obj.height = std::stoi(parts[4]);
    obj.vx = std::stod(parts[5]);
    obj.vy = std::stod(parts[6]);
    obj.intensity = std::stoi(parts[7]);
    if (parts.size() == 9) obj.class_id = std::stoi(parts[8]);
  } catch (const std::exception&) {
    throw DataError("malformed object: " + value);
  }
  return obj;
}

}  // namespace

SceneSpec parse_scene_spec(const std::string& text) {
  SceneSpec spec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("expected key=value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "width") spec.width = std::stoi(value);
      else if (key == "height") spec.height = std::stoi(value);
      else if (key == "frames") spec.frame_count = std::stoi(value);
      else if (key == "background") spec.background_level = std::stoi(value);
      else if (key == "slope_x") spec.background_slope_x = std::stod(value);
      else if (key == "slope_y") spec.background_slope_y = std::stod(value);
      else if (key == "texture") spec.texture_amplitude = std::stoi(value);
      else if (key == "pan_x") spec.pan_x = std::stod(value);
      else if (key == "pan_y") spec.pan_y = std::stod(value);
      else if (key == "noise") spec.noise_sigma = std::stod(value);
      else if (key == "seed") spec.seed = std::stoull(value);
      else if (key == "name") spec.name = value;
      else if (key == "object") spec.objects.push_back(parse_object(value));
      else throw DataError("unknown scene key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw DataError("bad value for '" + key + "': " + value);
    } catch (const std::out_of_range&) {
      throw DataError("value out of range for '" + key + "': " + value);
    }
  }
  return spec;
}

SceneSpec load_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scene_spec(buf.str());
}

}  // namespace lsvc
