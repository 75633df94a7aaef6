#pragma once

#include <cstdint>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "rankproj/dataset.hpp"
#include "rankproj/geometry.hpp"
#include "rankproj/matrix.hpp"

namespace rankproj {

enum class ProjectionMethod { pca, tsne };

std::string_view to_string(ProjectionMethod method);
ProjectionMethod parse_method(std::string_view text);

struct TsneParams {
  double perplexity = 15.0;
  int iterations = 1000;
  double learning_rate = 200.0;

  friend bool operator==(const TsneParams&, const TsneParams&) = default;
};

struct ProjectionConfig {
  ProjectionMethod method = ProjectionMethod::tsne;
  std::uint64_t seed = 0;
  TsneParams tsne;

  /// Throws ErrorKind::invalid_input when the config cannot run on
  /// `item_count` rows (t-SNE needs perplexity < N and >= 250 iterations).
  void validate(std::size_t item_count) const;

  friend bool operator==(const ProjectionConfig&, const ProjectionConfig&) = default;
};

struct Projection {
  std::vector<std::string> ids;
  std::vector<Point2> coords;
  ProjectionConfig config;
  std::string weights_fingerprint;
  std::vector<std::string> warnings;

  std::size_t index_of(std::string_view id) const;
  Point2 at(std::string_view id) const { return coords[index_of(id)]; }
  std::string fingerprint() const;
};

/// entry(i, j) = weights[j] * normalized(i, j); the matrix that gets projected.
Matrix weighted_matrix(const Dataset& dataset, std::span<const double> weights);

/// Top-2 principal component scores. Components follow descending variance;
/// each eigenvector is flipped so its largest-magnitude loading is positive.
/// Sets `degenerate` when every row is identical (all points at the origin).
std::vector<Point2> pca_2d(const Matrix& data, bool* degenerate = nullptr);

/// Exact O(N^2) t-SNE. Same input, params and seed give identical output.
/// Checks `stop` once per iteration and throws ErrorKind::cancelled.
std::vector<Point2> tsne_2d(const Matrix& data, const TsneParams& params, std::uint64_t seed,
                            std::stop_token stop = {});

Projection project(const Matrix& weighted, std::vector<std::string> ids,
                   const ProjectionConfig& config, std::stop_token stop = {});

/// Convenience: weighted_matrix + project, fingerprinting the weights.
Projection project_dataset(const Dataset& dataset, std::span<const double> weights,
                           const ProjectionConfig& config, std::stop_token stop = {});

double projection_distance(const Projection& projection, std::string_view id_a,
                           std::string_view id_b);

}  // namespace rankproj
