#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxkit/types.hpp"

namespace prox {

// Series with explicit missing entries, as produced by the distance
// estimator.
using OptSeries = std::vector<std::optional<double>>;

// Reserved sentinel for intervals with no distance estimate. Inserted
// after filtering and kept exactly 0.0 through normalization so the
// network can learn the event.
inline constexpr double kGapMarker = 0.0;

struct PreprocessOptions {
  int median_window = 11;
  double gaussian_sigma = 2.0;
  bool normalize = false;  // schemes 2 and 3
  std::size_t chunk_length = 100;
};

struct ProcessedTrace {
  std::string subject_id;
  std::optional<ClassLabel> label;
  std::vector<double> values;  // finite; 0.0 entries are gap markers
  std::size_t frame_count_original = 0;
};

struct ChunkSet {
  std::string subject_id;
  std::optional<ClassLabel> label;
  std::vector<std::vector<double>> chunks;  // each exactly chunk_length long
  std::size_t frame_count_original = 0;

  bool usable() const { return !chunks.empty(); }
};

// Windowed median over the finite entries of a centered window (truncated
// at the boundaries). Positions whose window holds no finite value stay
// missing. Window must be odd and >= 3.
OptSeries median_filter(const OptSeries& values, int window);

// Discrete Gaussian convolution, kernel truncated at ceil(4*sigma) and
// renormalized per position over the finite entries in range. Missing
// entries stay missing; constants pass through exactly.
OptSeries gaussian_smooth(const OptSeries& values, double sigma);

// Remaining missing entries become gap markers, then every maximal run of
// markers collapses to a single one.
std::vector<double> encode_gaps(const OptSeries& values);
// Marker-run collapse on an already-encoded series (idempotent).
std::vector<double> collapse_gap_runs(std::span<const double> values);

// Z-score over the non-marker entries (population stddev); markers stay
// exactly 0.0. Throws DegenerateTraceError on zero variance or fewer than
// two non-marker entries.
std::vector<double> normalize_subject(std::span<const double> values);

// Contiguous non-overlapping windows; a trailing remainder shorter than
// `length` is dropped. An empty result is valid and flags the subject
// unusable upstream.
ChunkSet chunk(std::span<const double> values, std::size_t length = 100);
ChunkSet chunk(const ProcessedTrace& trace, std::size_t length = 100);

// filter -> encode gaps -> optional per-subject normalization.
ProcessedTrace preprocess_trace(const DistanceTrace& trace,
                                const PreprocessOptions& options = {});

}  // namespace prox
