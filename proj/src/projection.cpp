#include "rankproj/projection.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rankproj/error.hpp"

namespace rankproj {

std::string_view to_string(ProjectionMethod method) {
  return method == ProjectionMethod::pca ? "pca" : "tsne";
}

ProjectionMethod parse_method(std::string_view text) {
  if (text == "pca") return ProjectionMethod::pca;
  if (text == "tsne" || text == "t-sne") return ProjectionMethod::tsne;
  throw Error(ErrorKind::invalid_input, "unknown projection method '" + std::string(text) + "'");
}

void ProjectionConfig::validate(std::size_t item_count) const {
  if (item_count < 3) throw Error(ErrorKind::invalid_input, "projection needs at least 3 items");
  if (method != ProjectionMethod::tsne) return;
  if (!(tsne.perplexity > 0.0) || !(tsne.perplexity < static_cast<double>(item_count)))
    throw Error(ErrorKind::invalid_input,
                "perplexity must be in (0, " + std::to_string(item_count) + ")");
  if (tsne.iterations < 250) throw Error(ErrorKind::invalid_input, "t-SNE needs at least 250 iterations");
  if (!(tsne.learning_rate > 0.0)) throw Error(ErrorKind::invalid_input, "learning rate must be positive");
}

std::size_t Projection::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return i;
  throw Error(ErrorKind::not_found, "unknown item id '" + std::string(id) + "'");
}

std::string Projection::fingerprint() const {
  std::vector<double> flat;
  flat.reserve(2 * coords.size());
  for (const auto& p : coords) {
    flat.push_back(p.x);
    flat.push_back(p.y);
  }
  return fingerprint_of(flat);
}

Matrix weighted_matrix(const Dataset& dataset, std::span<const double> weights) {
  return attribute_contributions(dataset, weights);
}

std::vector<Point2> pca_2d(const Matrix& data, bool* degenerate) {
  const auto n = static_cast<Eigen::Index>(data.rows());
  const auto m = static_cast<Eigen::Index>(data.cols());
  Eigen::MatrixXd x(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) x(i, j) = data(i, j);
  Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  std::vector<Point2> out(data.rows());
  const bool flat = x.cwiseAbs().maxCoeff() == 0.0;
  if (degenerate) *degenerate = flat;
  if (flat || n < 2) return out;

  Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  // Eigenvalues ascend; take the last two columns in reverse.
  const Eigen::Index components = std::min<Eigen::Index>(2, m);
  for (Eigen::Index c = 0; c < components; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(m - 1 - c);
    Eigen::Index lead = 0;
    for (Eigen::Index j = 1; j < m; ++j)
      if (std::abs(v(j)) > std::abs(v(lead))) lead = j;
    if (v(lead) < 0.0) v = -v;
    Eigen::VectorXd scores = x * v;
    for (Eigen::Index i = 0; i < n; ++i) (c == 0 ? out[i].x : out[i].y) = scores(i);
  }
  return out;
}

Projection project(const Matrix& weighted, std::vector<std::string> ids,
                   const ProjectionConfig& config, std::stop_token stop) {
  if (ids.size() != weighted.rows())
    throw Error(ErrorKind::invalid_input, "ids and matrix rows differ in count");
  config.validate(weighted.rows());
  Projection p;
  p.ids = std::move(ids);
  p.config = config;
  if (config.method == ProjectionMethod::pca) {
    bool degenerate = false;
    p.coords = pca_2d(weighted, &degenerate);
    if (degenerate) p.warnings.push_back("all rows identical; every item placed at the origin");
  } else {
    p.coords = tsne_2d(weighted, config.tsne, config.seed, stop);
  }
  for (const auto& c : p.coords)
    if (!std::isfinite(c.x) || !std::isfinite(c.y))
      throw Error(ErrorKind::invalid_input, "projection produced non-finite coordinates");
  return p;
}

Projection project_dataset(const Dataset& dataset, std::span<const double> weights,
                           const ProjectionConfig& config, std::stop_token stop) {
  auto p = project(weighted_matrix(dataset, weights), dataset.ids(), config, stop);
  p.weights_fingerprint = fingerprint_of(weights);
  return p;
}

double projection_distance(const Projection& projection, std::string_view id_a,
                           std::string_view id_b) {
  return distance(projection.at(id_a), projection.at(id_b));
}

}  // namespace rankproj
