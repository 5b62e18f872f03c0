#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>

#include "proxkit/types.hpp"

namespace prox {

// Index semantics of the 68-point landmark scheme.
namespace landmarks {

// The scheme has no tragion point; the jaw endpoints are the closest
// stable proxies for the ears.
inline constexpr int kTragionRight = 0;
inline constexpr int kTragionLeft = 16;

inline constexpr int kChin = 8;
inline constexpr int kNoseBridgeTop = 27;

inline constexpr int kRightEyeBegin = 36;  // [36, 42)
inline constexpr int kLeftEyeBegin = 42;   // [42, 48)
inline constexpr int kEyePointCount = 6;

// (right, left) index pairs that mirror across the sagittal plane.
inline constexpr std::array<std::pair<int, int>, 29> kSymmetricPairs{{
    {0, 16},  {1, 15},  {2, 14},  {3, 13},  {4, 12},  {5, 11},  {6, 10},
    {7, 9},   {17, 26}, {18, 25}, {19, 24}, {20, 23}, {21, 22}, {31, 35},
    {32, 34}, {36, 45}, {37, 44}, {38, 43}, {39, 42}, {40, 47}, {41, 46},
    {48, 54}, {49, 53}, {50, 52}, {55, 59}, {56, 58}, {60, 64}, {61, 63},
    {65, 67},
}};

// Landmarks lying on the sagittal plane of a symmetric face.
inline constexpr std::array<int, 10> kMidline{8,  27, 28, 29, 30,
                                              33, 51, 57, 62, 66};

}  // namespace landmarks

// Rigid reference model built from the most frontal frame of a stream.
struct FaceModel {
  int reference_frame = -1;
  std::vector<Vec3> points3d;
  double bitragion_model_units = 0.0;
  double scale_cm_per_unit = 0.0;
};

// DLT resection result. The projection matrix is normalized to unit
// Frobenius norm with its largest-magnitude coefficient positive.
struct CameraPose {
  Mat34 projection = Mat34::Zero();
  Vec3 center = Vec3::Zero();
  double reprojection_rms = 0.0;
};

struct ResectionOptions {
  // Reject when sigma[second smallest] / sigma[smallest] of the design
  // matrix falls below this: the null vector is then ambiguous
  // (near-coplanar landmarks, too few effective constraints).
  double min_conditioning_ratio = 10.0;
};

enum class EyeTarget { kMidpoint, kLeftEye, kRightEye };

struct TraceOptions {
  ResectionOptions resection{};
  EyeTarget eye_target = EyeTarget::kMidpoint;
};

// Squared yaw+pitch deviation (rad^2) of a 68-point set from a frontal
// pose. Head axes come from the set's own symmetry: the lateral axis is
// the dominant direction of the symmetric-pair differences, the up axis
// the chin-to-nose-bridge line. Invariant to translation and uniform
// scaling. Throws DegenerateLandmarksError when the symmetric-pair fit is
// rank-deficient.
double frontality_score(std::span<const Vec3> points3d);

// Yaw and pitch (radians) under the same rule; score = yaw^2 + pitch^2.
std::pair<double, double> frontality_angles(std::span<const Vec3> points3d);

// Frame index of the detected frame (with 3D present) minimizing the
// frontality score; ties go to the smallest frame index. Throws
// EmptyStreamError when no such frame exists.
int select_reference_frame(std::span<const LandmarkFrame> stream);

// cm per model unit from the tragion-proxy distance.
double bitragion_scale(std::span<const Vec3> points3d);

// Reference model from the most frontal frame of `stream`.
FaceModel build_face_model(std::span<const LandmarkFrame> stream);

// Homogeneous least-squares DLT from 3D model points to the frame's 2D
// observations, with Hartley normalization on both sides. The camera
// center is the projection's right null vector, dehomogenized.
CameraPose resect_camera(const FaceModel& model, const LandmarkFrame& frame,
                         const ResectionOptions& options = {});

Vec3 eye_midpoint(std::span<const Vec3> points3d,
                  EyeTarget target = EyeTarget::kMidpoint);

// Full per-frame pipeline: reference model, per-frame resection, bitragion
// scaling. Undetected frames and failed resections become missing entries;
// output length equals stream length.
DistanceTrace estimate_distance_trace(std::span<const LandmarkFrame> stream,
                                      const TraceOptions& options = {});

}  // namespace prox
