#pragma once

#include <filesystem>
#include <vector>

#include "lsvc/frame.hpp"

namespace lsvc {

// Raw planar 8-bit luma, frames concatenated, no header.
Sequence load_raw(const std::filesystem::path& path, int width, int height);
void save_raw(const Sequence& seq, const std::filesystem::path& path);

// CSV with header line `poc,class_id,x,y,w,h`.
std::vector<GroundTruthBox> load_ground_truth_csv(const std::filesystem::path& path);
void save_ground_truth_csv(const std::vector<GroundTruthBox>& boxes, const std::filesystem::path& path);

}  // namespace lsvc
