// Exact t-SNE: Gaussian input affinities calibrated to a target perplexity,
// Student-t output kernel, gradient descent with momentum, per-coordinate
// gains and early exaggeration.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rankproj/error.hpp"
#include "rankproj/projection.hpp"

namespace rankproj {

namespace {

constexpr int kExaggerationIterations = 250;
constexpr double kExaggeration = 12.0;
constexpr double kInitialMomentum = 0.5;
constexpr double kFinalMomentum = 0.8;
constexpr double kMinGain = 0.01;

std::vector<double> squared_distances(const Matrix& x) {
  const std::size_t n = x.rows();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < x.cols(); ++k) {
        const double diff = x(i, k) - x(j, k);
        s += diff * diff;
      }
      d[i * n + j] = d[j * n + i] = s;
    }
  return d;
}

// Row-conditional Gaussian affinities with per-row precision found by
// bisection so that each row's entropy matches log(perplexity).
std::vector<double> conditional_affinities(const std::vector<double>& dist, std::size_t n,
                                           double perplexity) {
  std::vector<double> p(n * n, 0.0);
  const double target = std::log(perplexity);
  for (std::size_t i = 0; i < n; ++i) {
    double beta = 1.0;
    double lo = -std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::max();
    const double* row = &dist[i * n];
    double* out = &p[i * n];
    for (int iter = 0; iter < 200; ++iter) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        out[j] = j == i ? 0.0 : std::exp(-beta * row[j]);
        sum += out[j];
      }
      if (sum == 0.0) sum = std::numeric_limits<double>::min();
      double h = 0.0;
      for (std::size_t j = 0; j < n; ++j) h += beta * row[j] * out[j];
      h = h / sum + std::log(sum);
      const double gap = h - target;
      if (std::abs(gap) < 1e-5) break;
      if (gap > 0) {
        lo = beta;
        beta = hi == std::numeric_limits<double>::max() ? beta * 2.0 : (beta + hi) / 2.0;
      } else {
        hi = beta;
        beta = lo == -std::numeric_limits<double>::max() ? beta / 2.0 : (beta + lo) / 2.0;
      }
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += out[j];
    if (sum == 0.0) {
      // Every neighbour underflowed; fall back to uniform.
      for (std::size_t j = 0; j < n; ++j) out[j] = j == i ? 0.0 : 1.0 / static_cast<double>(n - 1);
    } else {
      for (std::size_t j = 0; j < n; ++j) out[j] /= sum;
    }
  }
  return p;
}

// Box-Muller on raw 64-bit draws so the stream does not depend on the
// standard library's distribution implementation.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do u1 = uniform(); while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

std::vector<Point2> tsne_2d(const Matrix& data, const TsneParams& params, std::uint64_t seed,
                            std::stop_token stop) {
  const std::size_t n = data.rows();
  if (n < 2) return std::vector<Point2>(n);
  if (!(params.perplexity > 0.0) || !(params.perplexity < static_cast<double>(n)))
    throw Error(ErrorKind::invalid_input, "perplexity must be in (0, N)");

  const auto dist = squared_distances(data);
  auto cond = conditional_affinities(dist, n, params.perplexity);
  std::vector<double> p(n * n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      p[i * n + j] = cond[i * n + j] + cond[j * n + i];
      total += p[i * n + j];
    }
  for (double& v : p) v /= total;

  GaussianStream gauss(seed);
  std::vector<double> y(2 * n);
  for (double& v : y) v = gauss.next() * 1e-4;
  std::vector<double> velocity(2 * n, 0.0);
  std::vector<double> gains(2 * n, 1.0);
  std::vector<double> grad(2 * n);
  std::vector<double> num(n * n);

  for (int iter = 0; iter < params.iterations; ++iter) {
    if (stop.stop_requested()) throw Error(ErrorKind::cancelled, "projection cancelled");
    const double exaggeration = iter < kExaggerationIterations ? kExaggeration : 1.0;
    const double momentum = iter < kExaggerationIterations ? kInitialMomentum : kFinalMomentum;

    double sum_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num[i * n + i] = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = y[2 * i] - y[2 * j];
        const double dy = y[2 * i + 1] - y[2 * j + 1];
        const double q = 1.0 / (1.0 + dx * dx + dy * dy);
        num[i * n + j] = num[j * n + i] = q;
        sum_q += 2.0 * q;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double gx = 0.0;
      double gy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double q = num[i * n + j];
        const double mult = (exaggeration * p[i * n + j] - q / sum_q) * q;
        gx += mult * (y[2 * i] - y[2 * j]);
        gy += mult * (y[2 * i + 1] - y[2 * j + 1]);
      }
      grad[2 * i] = 4.0 * gx;
      grad[2 * i + 1] = 4.0 * gy;
    }
    for (std::size_t k = 0; k < 2 * n; ++k) {
      const bool same_sign = (grad[k] > 0.0) == (velocity[k] > 0.0);
      gains[k] = same_sign ? std::max(gains[k] * 0.8, kMinGain) : gains[k] + 0.2;
      velocity[k] = momentum * velocity[k] - params.learning_rate * gains[k] * grad[k];
      y[k] += velocity[k];
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += y[2 * i];
      my += y[2 * i + 1];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[2 * i] -= mx;
      y[2 * i + 1] -= my;
    }
  }

  std::vector<Point2> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {y[2 * i], y[2 * i + 1]};
  return out;
}

}  // namespace rankproj
