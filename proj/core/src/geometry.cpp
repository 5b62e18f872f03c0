#include "proxkit/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

#include "proxkit/errors.hpp"

namespace prox {

const char* to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::TD: return "TD";
    case ClassLabel::ASD: return "ASD";
    case ClassLabel::ID: return "ID";
  }
  return "?";
}

std::optional<ClassLabel> parse_label(std::string_view text) {
  if (text == "TD") return ClassLabel::TD;
  if (text == "ASD") return ClassLabel::ASD;
  if (text == "ID") return ClassLabel::ID;
  return std::nullopt;
}

namespace {

bool finite(const Vec3& p) {
  return std::isfinite(p.x()) && std::isfinite(p.y()) && std::isfinite(p.z());
}

bool finite(const Vec2& p) {
  return std::isfinite(p.x()) && std::isfinite(p.y());
}

void require_full_set(std::span<const Vec3> points) {
  if (points.size() != static_cast<std::size_t>(kLandmarkCount))
    throw DegenerateLandmarksError("expected 68 3D landmarks, got " +
                                   std::to_string(points.size()));
  for (const auto& p : points)
    if (!finite(p)) throw DegenerateLandmarksError("non-finite 3D landmark");
}

}  // namespace

std::pair<double, double> frontality_angles(std::span<const Vec3> points3d) {
  require_full_set(points3d);

  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points3d) centroid += p;
  centroid /= static_cast<double>(points3d.size());

  double rms = 0.0;
  for (const auto& p : points3d) rms += (p - centroid).squaredNorm();
  rms = std::sqrt(rms / static_cast<double>(points3d.size()));
  if (rms < 1e-12)
    throw DegenerateLandmarksError("landmark set has zero spatial extent");

  // Lateral axis: dominant direction of the symmetric-pair differences.
  Mat3 scatter = Mat3::Zero();
  double weight = 0.0;
  for (const auto& [right, left] : landmarks::kSymmetricPairs) {
    const Vec3 d = (points3d[left] - points3d[right]) / rms;
    scatter += d * d.transpose();
    weight += d.squaredNorm();
  }
  if (weight < 1e-10)
    throw DegenerateLandmarksError("symmetric pairs are coincident");

  Eigen::SelfAdjointEigenSolver<Mat3> eig(scatter);
  Vec3 lateral = eig.eigenvectors().col(2);
  const Vec3 jaw_span =
      points3d[landmarks::kTragionLeft] - points3d[landmarks::kTragionRight];
  if (lateral.dot(jaw_span) < 0.0) lateral = -lateral;

  // Up axis: chin to nose-bridge top, orthogonalized against the lateral
  // axis. Both live on the midline so the projection is small for a
  // symmetric face.
  const Vec3 spine =
      points3d[landmarks::kNoseBridgeTop] - points3d[landmarks::kChin];
  Vec3 up = spine - spine.dot(lateral) * lateral;
  if (up.norm() < 1e-9 * rms)
    throw DegenerateLandmarksError("midline axis is degenerate");
  up.normalize();

  const Vec3 forward = lateral.cross(up);

  Mat3 rotation;
  rotation.col(0) = lateral;
  rotation.col(1) = up;
  rotation.col(2) = forward;

  // rotation = R_y(yaw) * R_x(pitch) for a head rotated from the frontal
  // pose: yaw from (-R20, R00), pitch from (-R12, R11).
  const double yaw = std::atan2(-rotation(2, 0), rotation(0, 0));
  const double pitch = std::atan2(-rotation(1, 2), rotation(1, 1));
  return {yaw, pitch};
}

double frontality_score(std::span<const Vec3> points3d) {
  const auto [yaw, pitch] = frontality_angles(points3d);
  return yaw * yaw + pitch * pitch;
}

int select_reference_frame(std::span<const LandmarkFrame> stream) {
  int best_index = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (const auto& frame : stream) {
    if (!frame.detected || !frame.points3d.has_value()) continue;
    double score;
    try {
      score = frontality_score(*frame.points3d);
    } catch (const DegenerateLandmarksError&) {
      continue;
    }
    if (score < best_score) {
      best_score = score;
      best_index = frame.frame_index;
    }
  }
  if (best_index < 0)
    throw EmptyStreamError("no detected frame with usable 3D landmarks");
  return best_index;
}

double bitragion_scale(std::span<const Vec3> points3d) {
  require_full_set(points3d);
  const double span = (points3d[landmarks::kTragionRight] -
                       points3d[landmarks::kTragionLeft])
                          .norm();
  if (span < 1e-9)
    throw DegenerateLandmarksError("tragion-proxy landmarks coincide");
  return kBitragionBreadthCm / span;
}

FaceModel build_face_model(std::span<const LandmarkFrame> stream) {
  const int reference = select_reference_frame(stream);
  const LandmarkFrame* chosen = nullptr;
  for (const auto& frame : stream) {
    if (frame.frame_index == reference) {
      chosen = &frame;
      break;
    }
  }

  FaceModel model;
  model.reference_frame = reference;
  model.points3d = *chosen->points3d;
  model.bitragion_model_units =
      (model.points3d[landmarks::kTragionRight] -
       model.points3d[landmarks::kTragionLeft])
          .norm();
  model.scale_cm_per_unit = bitragion_scale(model.points3d);

  // The model must span 3 dimensions or per-frame resection is ambiguous.
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : model.points3d) centroid += p;
  centroid /= static_cast<double>(model.points3d.size());
  Eigen::MatrixXd centered(model.points3d.size(), 3);
  for (std::size_t i = 0; i < model.points3d.size(); ++i)
    centered.row(static_cast<Eigen::Index>(i)) =
        (model.points3d[i] - centroid).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  const auto& sv = svd.singularValues();
  if (sv(2) < 1e-6 * sv(0))
    throw DegenerateLandmarksError("reference landmarks are near-coplanar");

  return model;
}

CameraPose resect_camera(const FaceModel& model, const LandmarkFrame& frame,
                         const ResectionOptions& options) {
  if (!frame.detected) throw NotDetectedError("frame not detected");

  std::vector<std::pair<Vec3, Vec2>> pairs;
  const std::size_t n =
      std::min(model.points3d.size(), frame.points2d.size());
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (finite(model.points3d[i]) && finite(frame.points2d[i]))
      pairs.emplace_back(model.points3d[i], frame.points2d[i]);
  }
  if (pairs.size() < 6)
    throw IllConditionedError("fewer than 6 usable correspondences");

  // Hartley normalization: centroids to the origin, RMS distance sqrt(2)
  // in the image and sqrt(3) in space.
  Vec2 mean2 = Vec2::Zero();
  Vec3 mean3 = Vec3::Zero();
  for (const auto& [X, x] : pairs) {
    mean3 += X;
    mean2 += x;
  }
  mean2 /= static_cast<double>(pairs.size());
  mean3 /= static_cast<double>(pairs.size());

  double rms2 = 0.0, rms3 = 0.0;
  for (const auto& [X, x] : pairs) {
    rms3 += (X - mean3).squaredNorm();
    rms2 += (x - mean2).squaredNorm();
  }
  rms2 = std::sqrt(rms2 / static_cast<double>(pairs.size()));
  rms3 = std::sqrt(rms3 / static_cast<double>(pairs.size()));
  if (rms2 < 1e-12 || rms3 < 1e-12)
    throw IllConditionedError("correspondences have zero spread");

  const double s2 = std::sqrt(2.0) / rms2;
  const double s3 = std::sqrt(3.0) / rms3;

  Eigen::MatrixXd design(2 * pairs.size(), 12);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Vec3 Xn = s3 * (pairs[i].first - mean3);
    const Vec2 xn = s2 * (pairs[i].second - mean2);
    Eigen::RowVector4d Xh(Xn.x(), Xn.y(), Xn.z(), 1.0);
    auto row_u = design.row(static_cast<Eigen::Index>(2 * i));
    auto row_v = design.row(static_cast<Eigen::Index>(2 * i + 1));
    row_u << Xh, Eigen::RowVector4d::Zero(), -xn.x() * Xh;
    row_v << Eigen::RowVector4d::Zero(), Xh, -xn.y() * Xh;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double smallest = sigma(11);
  const double second = sigma(10);
  if (smallest > 0.0 && second / smallest < options.min_conditioning_ratio)
    throw IllConditionedError("ambiguous resection: sigma ratio " +
                              std::to_string(second / smallest));

  const Eigen::VectorXd p = svd.matrixV().col(11);
  Mat34 normalized;
  normalized.row(0) = p.segment<4>(0).transpose();
  normalized.row(1) = p.segment<4>(4).transpose();
  normalized.row(2) = p.segment<4>(8).transpose();

  // Undo the normalizing similarities.
  Mat3 T;
  T << s2, 0, -s2 * mean2.x(), 0, s2, -s2 * mean2.y(), 0, 0, 1;
  Eigen::Matrix4d U = Eigen::Matrix4d::Identity();
  U(0, 0) = U(1, 1) = U(2, 2) = s3;
  U.block<3, 1>(0, 3) = -s3 * mean3;

  Mat34 projection = T.inverse() * normalized * U;
  projection /= projection.norm();

  Eigen::Index max_row = 0, max_col = 0;
  projection.cwiseAbs().maxCoeff(&max_row, &max_col);
  if (projection(max_row, max_col) < 0.0) projection = -projection;

  Eigen::JacobiSVD<Mat34> null_svd(projection, Eigen::ComputeFullV);
  const Eigen::Vector4d center_h = null_svd.matrixV().col(3);
  if (std::abs(center_h(3)) < 1e-12 * center_h.norm())
    throw IllConditionedError("camera center at infinity");

  CameraPose pose;
  pose.projection = projection;
  pose.center = center_h.head<3>() / center_h(3);

  double err = 0.0;
  for (const auto& [X, x] : pairs) {
    const Eigen::Vector3d proj =
        projection * Eigen::Vector4d(X.x(), X.y(), X.z(), 1.0);
    const Vec2 uv(proj.x() / proj.z(), proj.y() / proj.z());
    err += (uv - x).squaredNorm();
  }
  pose.reprojection_rms = std::sqrt(err / static_cast<double>(pairs.size()));
  return pose;
}

Vec3 eye_midpoint(std::span<const Vec3> points3d, EyeTarget target) {
  require_full_set(points3d);
  auto eye_center = [&](int begin) {
    Vec3 sum = Vec3::Zero();
    for (int i = 0; i < landmarks::kEyePointCount; ++i)
      sum += points3d[static_cast<std::size_t>(begin + i)];
    return Vec3(sum / landmarks::kEyePointCount);
  };
  const Vec3 right = eye_center(landmarks::kRightEyeBegin);
  const Vec3 left = eye_center(landmarks::kLeftEyeBegin);
  switch (target) {
    case EyeTarget::kLeftEye: return left;
    case EyeTarget::kRightEye: return right;
    case EyeTarget::kMidpoint: break;
  }
  return 0.5 * (left + right);
}

DistanceTrace estimate_distance_trace(std::span<const LandmarkFrame> stream,
                                      const TraceOptions& options) {
  if (stream.empty()) throw EmptyStreamError("empty landmark stream");

  const FaceModel model = build_face_model(stream);
  const Vec3 target = eye_midpoint(model.points3d, options.eye_target);

  DistanceTrace trace;
  trace.values_cm.resize(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto& frame = stream[i];
    if (!frame.detected) continue;
    try {
      const CameraPose pose = resect_camera(model, frame, options.resection);
      const double distance =
          model.scale_cm_per_unit * (pose.center - target).norm();
      if (std::isfinite(distance) && distance > 0.0)
        trace.values_cm[i] = distance;
    } catch (const Error&) {
      // failed frames stay missing
    }
  }
  return trace;
}

}  // namespace prox
