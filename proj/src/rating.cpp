#include "rankproj/rating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankproj/error.hpp"

namespace rankproj {

namespace {

// Differences below this are treated as ties between candidate splits.
constexpr double kTieTolerance = 1e-9;

// n * H for the distinct-value counts in [lo, hi): n ln n - sum c ln c.
double weighted_entropy(const std::vector<std::size_t>& counts, std::size_t lo, std::size_t hi) {
  double n = 0.0;
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double c = static_cast<double>(counts[i]);
    n += c;
    acc += c * std::log(c);
  }
  return n > 0.0 ? n * std::log(n) - acc : 0.0;
}

}  // namespace

ScoreDistribution ScoreDistribution::from(std::span<const double> scores) {
  ScoreDistribution d;
  d.sorted.assign(scores.begin(), scores.end());
  std::sort(d.sorted.begin(), d.sorted.end());
  for (double s : d.sorted) {
    if (d.values.empty() || s != d.values.back()) {
      d.values.push_back(s);
      d.counts.push_back(0);
    }
    ++d.counts.back();
  }
  for (std::size_t c : d.counts)
    d.probabilities.push_back(static_cast<double>(c) / static_cast<double>(d.sorted.size()));
  return d;
}

double entropy(const ScoreDistribution& distribution) {
  if (distribution.probabilities.empty())
    throw Error(ErrorKind::invalid_input, "entropy of an empty distribution");
  double h = 0.0;
  for (double p : distribution.probabilities)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

std::vector<double> quantize_scores(std::span<const double> scores, int n_ratings) {
  if (n_ratings < 1) throw Error(ErrorKind::invalid_input, "n must be >= 1");
  std::vector<double> out(scores.begin(), scores.end());
  if (out.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(out.begin(), out.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return out;
  const double cells = 10.0 * n_ratings;
  for (double& s : out) {
    const double k = std::round((s - lo) / range * cells);
    s = lo + (k * range) / cells;
  }
  return out;
}

std::vector<double> find_split_points(std::span<const double> scores, int n_ratings) {
  if (n_ratings < 2) throw Error(ErrorKind::invalid_input, "n must be >= 2");
  const auto dist = ScoreDistribution::from(scores);
  const std::size_t k = dist.values.size();
  if (k < static_cast<std::size_t>(n_ratings))
    throw Error(ErrorKind::invalid_input,
                "cannot form " + std::to_string(n_ratings) + " ratings from " + std::to_string(k) +
                    " distinct scores");

  // Boundary b separates values[b-1] and values[b]; 0 and k are sentinels.
  std::vector<std::size_t> bounds{0, k};
  for (int step = 1; step < n_ratings; ++step) {
    double best_delta = std::numeric_limits<double>::infinity();
    std::size_t best_b = 0;
    for (std::size_t iv = 0; iv + 1 < bounds.size(); ++iv) {
      const std::size_t lo = bounds[iv];
      const std::size_t hi = bounds[iv + 1];
      if (hi - lo < 2) continue;
      const double whole = weighted_entropy(dist.counts, lo, hi);
      for (std::size_t b = lo + 1; b < hi; ++b) {
        const double delta =
            weighted_entropy(dist.counts, lo, b) + weighted_entropy(dist.counts, b, hi) - whole;
        if (delta < best_delta - kTieTolerance) {
          best_delta = delta;
          best_b = b;
        }
      }
    }
    bounds.insert(std::upper_bound(bounds.begin(), bounds.end(), best_b), best_b);
  }

  std::vector<double> splits;
  for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
    const std::size_t b = bounds[i];
    splits.push_back(0.5 * (dist.values[b - 1] + dist.values[b]));
  }
  return splits;
}

int RatingPartition::rating_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return ratings[i];
  throw Error(ErrorKind::not_found, "unknown item id '" + std::string(id) + "'");
}

std::size_t RatingPartition::count(int rating) const {
  return static_cast<std::size_t>(std::count(ratings.begin(), ratings.end(), rating));
}

int rating_for(double score, std::span<const double> split_points) {
  int above = 0;
  for (double s : split_points)
    if (s > score) ++above;
  return 1 + above;
}

RatingPartition assign_ratings(const std::vector<std::string>& ids, std::span<const double> scores,
                               std::span<const double> split_points) {
  if (ids.size() != scores.size())
    throw Error(ErrorKind::invalid_input, "ids and scores differ in length");
  for (std::size_t i = 1; i < split_points.size(); ++i)
    if (!(split_points[i - 1] < split_points[i]))
      throw Error(ErrorKind::invalid_input, "split points must be strictly increasing");
  RatingPartition p;
  p.n_ratings = static_cast<int>(split_points.size()) + 1;
  p.split_points.assign(split_points.begin(), split_points.end());
  p.ids = ids;
  for (double s : scores) p.ratings.push_back(rating_for(s, split_points));
  return p;
}

RatingPartition rate(const std::vector<RankedItem>& ranking, int n_ratings) {
  std::vector<std::string> ids;
  std::vector<double> scores;
  for (const auto& r : ranking) {
    ids.push_back(r.id);
    scores.push_back(r.score);
  }
  const auto quantized = quantize_scores(scores, n_ratings);
  const auto splits = find_split_points(quantized, n_ratings);
  return assign_ratings(ids, quantized, splits);
}

}  // namespace rankproj
