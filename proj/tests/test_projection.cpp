#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "rankproj/error.hpp"
#include "rankproj/projection.hpp"
#include "test_support.hpp"

using namespace rankproj;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<std::string> ids_for(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(testing::item_name(i));
  return ids;
}

ProjectionConfig pca() {
  ProjectionConfig c;
  c.method = ProjectionMethod::pca;
  return c;
}

ProjectionConfig small_tsne(std::uint64_t seed, double perplexity = 5.0) {
  ProjectionConfig c;
  c.seed = seed;
  c.tsne = {perplexity, 300, 200.0};
  return c;
}

}  // namespace

TEST_CASE("weighted matrix") {
  std::mt19937_64 rng(1);
  auto d = testing::make_dataset(testing::random_rows(rng, 20, 4, -5, 5));
  std::vector<double> ones(4, 1.0);
  CHECK(weighted_matrix(d, ones) == d.normalized());
  std::vector<double> e1 = {1, 0, 0, 0};
  auto m = weighted_matrix(d, e1);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(m(i, 0) == d.normalized()(i, 0));
    for (std::size_t j = 1; j < 4; ++j) CHECK(m(i, j) == 0.0);
  }
  std::vector<double> w = {0.3, -1.2, 2.0, 0.0};
  CHECK(weighted_matrix(d, w) == attribute_contributions(d, w));
  CHECK_THROWS_AS(weighted_matrix(d, std::vector<double>{1.0}), Error);
}

TEST_CASE("PCA of intrinsically 2-D data preserves pairwise distances") {
  std::mt19937_64 rng(2);
  auto rows = testing::random_rows(rng, 40, 2, -3, 3);
  auto y = pca_2d(to_matrix(rows));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double dx = std::hypot(rows[i][0] - rows[j][0], rows[i][1] - rows[j][1]);
      CHECK(std::abs(distance(y[i], y[j]) - dx) < 1e-9);
    }

  // 2-D data embedded in 5-D by an orthonormal map
  const double c = std::cos(0.7), s = std::sin(0.7);
  std::vector<std::vector<double>> embedded;
  for (auto& r : rows) embedded.push_back({c * r[0] - s * r[1], 0.0, s * r[0] + c * r[1], 0.0, 4.0});
  auto z = pca_2d(to_matrix(embedded));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) CHECK(std::abs(distance(z[i], z[j]) - distance(y[i], y[j])) < 1e-9);
}

TEST_CASE("PCA of collinear points has a null second component") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  const std::vector<double> dir = {1.0, -2.0, 0.5, 3.0};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 30; ++i) {
    const double t = u(rng);
    rows.push_back({1 + t * dir[0], 2 + t * dir[1], t * dir[2], -1 + t * dir[3]});
  }
  for (auto& p : pca_2d(to_matrix(rows))) CHECK(std::abs(p.y) < 1e-9);
}

TEST_CASE("PCA sign convention and determinism") {
  std::mt19937_64 rng(4);
  auto m = to_matrix(testing::random_rows(rng, 50, 6));
  auto a = pca_2d(m);
  auto b = pca_2d(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].x - b[i].x) < 1e-9);
    CHECK(std::abs(a[i].y - b[i].y) < 1e-9);
  }
  // negating the data flips scores, then the sign rule flips them back
  Matrix neg = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) neg(i, j) = -m(i, j);
  auto c = pca_2d(neg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(std::abs(c[i].x) - std::abs(a[i].x)) < 1e-9);
    CHECK(std::abs(std::abs(c[i].y) - std::abs(a[i].y)) < 1e-9);
  }
  // centered scores
  double sx = 0, sy = 0;
  for (auto& p : a) sx += p.x, sy += p.y;
  CHECK(std::abs(sx) < 1e-9);
  CHECK(std::abs(sy) < 1e-9);
}

TEST_CASE("degenerate rows give origin points and a warning") {
  auto m = to_matrix({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  auto p = project(m, ids_for(4), pca());
  for (auto& c : p.coords) {
    CHECK(c.x == 0.0);
    CHECK(c.y == 0.0);
  }
  CHECK(p.warnings.size() == 1);
}

TEST_CASE("t-SNE is reproducible for a seed") {
  std::mt19937_64 rng(5);
  auto m = to_matrix(testing::random_rows(rng, 40, 5));
  TsneParams params{10.0, 300, 200.0};
  auto a = tsne_2d(m, params, 42);
  auto b = tsne_2d(m, params, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }
  auto c = tsne_2d(m, params, 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].x != c[i].x;
  CHECK(differs);
}

TEST_CASE("t-SNE keeps separated clusters apart") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 0.05);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 40; ++i) {
    const double off = i < 20 ? 0.0 : 3.0;
    rows.push_back({off + g(rng), off + g(rng), g(rng)});
  }
  auto y = tsne_2d(to_matrix(rows), {8.0, 500, 200.0}, 7);
  double within = 0, between = 0;
  int nw = 0, nb = 0;
  for (int i = 0; i < 40; ++i)
    for (int j = i + 1; j < 40; ++j) {
      const double dd = distance(y[i], y[j]);
      if ((i < 20) == (j < 20)) within += dd, ++nw;
      else between += dd, ++nb;
    }
  CHECK(between / nb > 2.0 * within / nw);
}

TEST_CASE("projection config validation") {
  std::mt19937_64 rng(7);
  auto m = to_matrix(testing::random_rows(rng, 10, 3));
  CHECK_THROWS_AS(project(m, ids_for(10), small_tsne(1, 10.0)), Error);
  CHECK_THROWS_AS(project(m, ids_for(10), small_tsne(1, 0.0)), Error);
  auto few_iters = small_tsne(1);
  few_iters.tsne.iterations = 100;
  CHECK_THROWS_AS(project(m, ids_for(10), few_iters), Error);
  auto tiny = to_matrix({{0.0}, {1.0}});
  CHECK_THROWS_AS(project(tiny, ids_for(2), pca()), Error);
  CHECK_THROWS_AS(project(m, ids_for(9), pca()), Error);
  CHECK(parse_method("pca") == ProjectionMethod::pca);
  CHECK(parse_method("tsne") == ProjectionMethod::tsne);
  CHECK_THROWS_AS(parse_method("umap"), Error);
  try {
    project(m, ids_for(10), small_tsne(1, 12.0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
}

TEST_CASE("a zero weight removes the attribute's influence") {
  std::mt19937_64 rng(8);
  auto rows = testing::random_rows(rng, 25, 4);
  auto perturbed = rows;
  std::uniform_real_distribution<double> u(0, 1);
  for (auto& r : perturbed) r[2] = u(rng);
  auto d1 = testing::make_dataset(rows);
  auto d2 = testing::make_dataset(perturbed);
  std::vector<double> w = {0.5, 1.5, 0.0, 0.7};
  for (auto cfg : {pca(), small_tsne(3)}) {
    auto a = project_dataset(d1, w, cfg);
    auto b = project_dataset(d2, w, cfg);
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
      CHECK(a.coords[i].x == b.coords[i].x);
      CHECK(a.coords[i].y == b.coords[i].y);
    }
    CHECK(a.weights_fingerprint == fingerprint_of(w));
  }
}

TEST_CASE("projection_distance") {
  auto p = testing::make_projection({{0, 0}, {3, 4}, {-1, 2}});
  CHECK(projection_distance(p, "item000", "item001") == 5.0);
  CHECK(projection_distance(p, "item002", "item002") == 0.0);
  CHECK(projection_distance(p, "item001", "item002") == doctest::Approx(std::sqrt(16.0 + 4.0)));
  CHECK_THROWS_AS(projection_distance(p, "item000", "zzz"), Error);

  std::mt19937_64 rng(9);
  auto m = to_matrix(testing::random_rows(rng, 30, 3));
  auto q = project(m, ids_for(30), pca());
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; j += 7) {
      const double dx = q.coords[i].x - q.coords[j].x, dy = q.coords[i].y - q.coords[j].y;
      CHECK(projection_distance(q, q.ids[i], q.ids[j]) == doctest::Approx(std::sqrt(dx * dx + dy * dy)).epsilon(1e-14));
    }
}

TEST_CASE("t-SNE honours cancellation") {
  std::mt19937_64 rng(10);
  auto m = to_matrix(testing::random_rows(rng, 30, 3));
  std::stop_source src;
  src.request_stop();
  try {
    tsne_2d(m, {5.0, 1000, 200.0}, 1, src.get_token());
    FAIL("expected cancellation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::cancelled);
  }
}
