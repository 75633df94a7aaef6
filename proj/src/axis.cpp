#include "rankproj/axis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankproj/error.hpp"

namespace rankproj {

std::string_view to_string(PolylineKind kind) {
  switch (kind) {
    case PolylineKind::sequence: return "sequence";
    case PolylineKind::rating: return "rating";
    case PolylineKind::self_defined: return "self_defined";
  }
  return "unknown";
}

PolylineKind parse_polyline_kind(std::string_view text) {
  if (text == "sequence") return PolylineKind::sequence;
  if (text == "rating") return PolylineKind::rating;
  if (text == "self_defined") return PolylineKind::self_defined;
  throw Error(ErrorKind::invalid_input, "unknown polyline kind '" + std::string(text) + "'");
}

std::string_view to_string(Consistency c) {
  switch (c) {
    case Consistency::consistent: return "consistent";
    case Consistency::improved: return "improved";
    case Consistency::worsened: return "worsened";
  }
  return "unknown";
}

double RatingPolyline::length() const {
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < anchors.size(); ++s)
    total += distance(anchors[s].point, anchors[s + 1].point);
  return total;
}

RatingPolyline make_polyline(PolylineKind kind, std::vector<Anchor> anchors, std::string source) {
  RatingPolyline line;
  line.kind = kind;
  line.source = std::move(source);
  for (auto& a : anchors) {
    if (!std::isfinite(a.point.x) || !std::isfinite(a.point.y))
      throw Error(ErrorKind::invalid_input, "polyline anchor is not finite");
    if (!line.anchors.empty() && line.anchors.back().point == a.point) continue;
    line.anchors.push_back(a);
  }
  if (line.anchors.size() < 2)
    throw Error(ErrorKind::invalid_input, "polyline needs at least two distinct anchors");
  return line;
}

RatingPolyline sequence_ranking_line(const std::vector<RankedItem>& ranking,
                                     const Projection& projection) {
  std::vector<Anchor> anchors;
  anchors.reserve(ranking.size());
  for (const auto& r : ranking) anchors.push_back({projection.at(r.id), r.rank});
  return make_polyline(PolylineKind::sequence, std::move(anchors), projection.fingerprint());
}

RatingPolyline rating_line(const RatingPartition& partition, const Projection& projection) {
  const int n = partition.n_ratings;
  if (n < 2) throw Error(ErrorKind::invalid_input, "rating line needs at least 2 ratings");
  std::vector<Point2> sum(static_cast<std::size_t>(n));
  std::vector<std::size_t> count(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < partition.ids.size(); ++i) {
    const int r = partition.ratings[i];
    if (r < 1 || r > n) throw Error(ErrorKind::invalid_input, "rating out of range");
    sum[r - 1] = sum[r - 1] + projection.at(partition.ids[i]);
    ++count[r - 1];
  }
  std::vector<Anchor> anchors;
  for (int r = 1; r <= n; ++r) {
    if (count[r - 1] == 0)
      throw Error(ErrorKind::invalid_input, "rating " + std::to_string(r) + " has no items");
    anchors.push_back({(1.0 / static_cast<double>(count[r - 1])) * sum[r - 1], r});
  }
  return make_polyline(PolylineKind::rating, std::move(anchors), projection.fingerprint());
}

bool point_in_polygon(Point2 p, const Polygon& polygon) {
  const std::size_t n = polygon.size();
  if (n == 0) return false;
  if (n == 1) return p == polygon[0];
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[(i + 1) % n];
    const Point2 ab = b - a;
    const Point2 ap = p - a;
    const double len2 = dot(ab, ab);
    const double slack = 1e-12 * std::max(1.0, len2);
    if (std::abs(cross(ab, ap)) <= slack && dot(ap, ab) >= -slack && dot(ap, ab) <= len2 + slack &&
        (len2 > 0.0 || ap == Point2{}))
      return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

RatingPolyline self_defined_rating_line(const std::vector<Polygon>& regions,
                                        const Projection& projection) {
  if (regions.size() < 2)
    throw Error(ErrorKind::invalid_input, "self-defined line needs at least two regions");
  std::vector<Anchor> anchors;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    Point2 sum;
    std::size_t count = 0;
    for (const auto& c : projection.coords)
      if (point_in_polygon(c, regions[r])) {
        sum = sum + c;
        ++count;
      }
    if (count == 0)
      throw Error(ErrorKind::invalid_input, "region " + std::to_string(r + 1) + " contains no items");
    anchors.push_back({(1.0 / static_cast<double>(count)) * sum, static_cast<int>(r + 1)});
  }
  return make_polyline(PolylineKind::self_defined, std::move(anchors), projection.fingerprint());
}

PolylineFoot project_onto_polyline(Point2 p, const RatingPolyline& polyline) {
  if (polyline.anchors.size() < 2) throw Error(ErrorKind::invalid_input, "polyline has no segments");
  PolylineFoot best;
  best.distance = std::numeric_limits<double>::infinity();
  double arc = 0.0;
  for (std::size_t s = 0; s + 1 < polyline.anchors.size(); ++s) {
    const Point2 a = polyline.anchors[s].point;
    const Point2 b = polyline.anchors[s + 1].point;
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    const double len = std::sqrt(len2);
    double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    const Point2 foot = t == 0.0 ? a : t == 1.0 ? b : a + t * ab;
    const double d = distance(p, foot);
    if (d < best.distance) best = {s, t, foot, d, arc + t * len};
    arc += len;
  }
  return best;
}

int inverse_ordinal(int item_rating, std::pair<int, int> bracket) {
  const auto [low, high] = bracket;
  if (low < 1 || high != low + 1)
    throw Error(ErrorKind::invalid_input, "bracket must be two consecutive ratings (r, r+1)");
  if (item_rating < 1) throw Error(ErrorKind::invalid_input, "rating must be >= 1");
  if (item_rating > high) return item_rating - high;  // ratings high .. item_rating-1 fall behind
  if (item_rating < low) return -(low - item_rating);  // ratings item_rating+1 .. low move ahead
  return 0;
}

std::vector<AxisPlacement> build_axis(const RatingPartition& partition,
                                      const RatingPolyline& polyline,
                                      const Projection& projection) {
  if (polyline.kind == PolylineKind::sequence)
    throw Error(ErrorKind::invalid_input, "axis requires rating anchors");
  const std::size_t last_segment = polyline.segment_count() - 1;
  std::vector<AxisPlacement> out;
  out.reserve(partition.ids.size());
  for (std::size_t i = 0; i < partition.ids.size(); ++i) {
    const auto& id = partition.ids[i];
    const auto foot = project_onto_polyline(projection.at(id), polyline);
    std::size_t seg = foot.segment_index;
    double t = foot.t;
    if (t == 1.0 && seg < last_segment) {
      ++seg;
      t = 0.0;
    }
    AxisPlacement a;
    a.id = id;
    a.segment_index = seg;
    a.t = t;
    a.arc_position = foot.arc_position;
    a.distance = foot.distance;
    a.bracket_low = polyline.anchors[seg].label;
    a.bracket_high = polyline.anchors[seg + 1].label;
    a.rating = partition.ratings[i];
    a.inverse_ordinal = inverse_ordinal(a.rating, {a.bracket_low, a.bracket_high});
    a.consistency = a.inverse_ordinal > 0   ? Consistency::improved
                    : a.inverse_ordinal < 0 ? Consistency::worsened
                                            : Consistency::consistent;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace rankproj
