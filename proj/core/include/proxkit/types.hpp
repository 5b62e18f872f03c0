#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prox {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;

inline constexpr int kLandmarkCount = 68;

// 50th percentile bitragion breadth for children, in cm. Anchors the
// conversion from detector-local model units to metric distance.
inline constexpr double kBitragionBreadthCm = 10.6;

// Traces never exceed 80 s of 30 fps video.
inline constexpr int kMaxTraceFrames = 2400;

enum class ClassLabel { TD = 0, ASD = 1, ID = 2 };
inline constexpr int kClassCount = 3;

const char* to_string(ClassLabel label);
std::optional<ClassLabel> parse_label(std::string_view text);

// One video frame worth of facial landmarks. 2D points are in pixels;
// 3D points are in the detector's per-frame local units and are not
// comparable across frames.
struct LandmarkFrame {
  int frame_index = 0;
  bool detected = false;
  std::vector<Vec2> points2d;
  std::optional<std::vector<Vec3>> points3d;
};

// Per-frame viewer-to-camera distance in cm. A disengaged entry (face not
// detected, resection failed) is std::nullopt.
struct DistanceTrace {
  std::string subject_id;
  std::optional<ClassLabel> label;
  std::vector<std::optional<double>> values_cm;

  std::size_t frame_count() const { return values_cm.size(); }
};

}  // namespace prox
