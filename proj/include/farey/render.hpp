#pragma once

// SVG pictures of an image tessellation h(F) in the Poincaré disk or in a
// clipped window of the upper half-plane.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "farey/farey.hpp"
#include "farey/moebius.hpp"

namespace farey {

enum class RenderModel { Disk, HalfPlaneClip };

struct RenderSpec {
  std::size_t depth = 4;
  RenderModel model = RenderModel::Disk;
  double stroke_width = 1.0;
  int size = 800;
  /// Edge keys drawn in the highlight colour.
  std::set<std::string> highlight;
};

/// Geodesic in the unit disk between two boundary points: an arc of the
/// circle orthogonal to the unit circle, or a diameter when straight.
struct DiskArc {
  std::string key;
  Complex from;
  Complex to;
  bool straight = false;
  Complex center;
  Real radius = 0;
};

DiskArc disk_arc(const std::string& key, Real x, Real y);

/// Arcs for every edge of generation <= depth under the vertex map h.
std::vector<DiskArc> image_arcs(const std::function<Real(const ExtendedRational&)>& h, std::size_t depth);

/// Throws std::invalid_argument for size <= 0.
std::string render_svg(const std::function<Real(const ExtendedRational&)>& h, const RenderSpec& spec);

}  // namespace farey
