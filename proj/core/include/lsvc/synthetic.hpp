#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lsvc/frame.hpp"

namespace lsvc {

enum class ObjectShape { kRectangle, kEllipse };

/// One foreground object moving along a straight line. Position is the
/// top-left corner of the bounding box at frame 0.
struct SceneObject {
  ObjectShape shape = ObjectShape::kRectangle;
  int width = 16;
  int height = 16;
  int intensity = 255;
  double x0 = 0.0;
  double y0 = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  int class_id = 0;
};

struct SceneSpec {
  int width = 192;
  int height = 176;
  int frame_count = 8;
  std::vector<SceneObject> objects;
  int background_level = 128;
  // Optional horizontal/vertical background gradient, luma per pixel.
  double background_slope_x = 0.0;
  double background_slope_y = 0.0;
  // Static background texture amplitude; zero disables it.
  int texture_amplitude = 0;
  // Whole-scene pan in pixels per frame, applied to background texture.
  double pan_x = 0.0;
  double pan_y = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  std::string name = "synthetic";
};

/// Renders the scene and the per-frame ground-truth boxes. Boxes are
/// clipped to the frame; objects entirely outside a frame emit no box.
std::pair<Sequence, std::vector<GroundTruthBox>> generate_synthetic(const SceneSpec& spec);

/// Reads a flat key=value scene description (see README for keys).
SceneSpec parse_scene_spec(const std::string& text);
SceneSpec load_scene_spec(const std::string& path);

}  // namespace lsvc
