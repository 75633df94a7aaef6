#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankproj/geometry.hpp"
#include "rankproj/projection.hpp"
#include "rankproj/rating.hpp"
#include "rankproj/weights.hpp"

namespace rankproj {

enum class PolylineKind { sequence, rating, self_defined };

std::string_view to_string(PolylineKind kind);
PolylineKind parse_polyline_kind(std::string_view text);

/// A polyline vertex. `label` is a rank (sequence lines), a rating index
/// (rating lines) or a 1-based lasso region index (self-defined lines).
struct Anchor {
  Point2 point;
  int label = 0;
};

struct RatingPolyline {
  PolylineKind kind = PolylineKind::rating;
  std::vector<Anchor> anchors;  // best first
  std::string source;           // fingerprint of the inputs it was built from

  std::size_t segment_count() const { return anchors.empty() ? 0 : anchors.size() - 1; }
  double length() const;
};

/// Drops consecutive anchors at identical positions (keeping the first) and
/// requires at least two distinct anchors to remain.
RatingPolyline make_polyline(PolylineKind kind, std::vector<Anchor> anchors, std::string source = {});

/// Every projected item in rank order, labelled by rank.
RatingPolyline sequence_ranking_line(const std::vector<RankedItem>& ranking,
                                     const Projection& projection);

/// Centroid of each rating's items, rating 1 first.
RatingPolyline rating_line(const RatingPartition& partition, const Projection& projection);

using Polygon = std::vector<Point2>;

/// Even-odd rule; points on an edge or vertex count as inside.
bool point_in_polygon(Point2 p, const Polygon& polygon);

/// Centroid of the items inside each lasso polygon, in selection order.
/// Throws ErrorKind::invalid_input naming the first region that holds no item.
RatingPolyline self_defined_rating_line(const std::vector<Polygon>& regions,
                                        const Projection& projection);

struct PolylineFoot {
  std::size_t segment_index = 0;
  double t = 0.0;           // in [0, 1] along the segment
  Point2 foot;
  double distance = 0.0;    // unsigned
  double arc_position = 0.0;
};

/// Nearest point on the polyline. Equidistant segments resolve to the lower
/// segment index.
PolylineFoot project_onto_polyline(Point2 p, const RatingPolyline& polyline);

enum class Consistency { consistent, improved, worsened };

std::string_view to_string(Consistency c);

struct AxisPlacement {
  std::string id;
  std::size_t segment_index = 0;
  double t = 0.0;
  double arc_position = 0.0;
  double distance = 0.0;
  int bracket_low = 0;
  int bracket_high = 0;
  int rating = 0;
  int inverse_ordinal = 0;
  Consistency consistency = Consistency::consistent;
};

/// Signed count of whole ratings the item jumps when inserted between the
/// bracket ratings (r, r+1). Positive when the projection places the item
/// above its own rating, negative when below, 0 when its rating is r or r+1.
int inverse_ordinal(int item_rating, std::pair<int, int> bracket);

/// Places every item of the partition on the unrolled rating/self-defined
/// polyline. A foot landing exactly on an interior anchor takes the bracket
/// of the segment that starts there.
std::vector<AxisPlacement> build_axis(const RatingPartition& partition,
                                      const RatingPolyline& polyline,
                                      const Projection& projection);

}  // namespace rankproj
