#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "piecenet/common.hpp"

namespace piecenet {

// Points whose interface descriptor is within this tolerance count as lying
// on the interface; classify() assigns them to region 0 so interior residuals
// never straddle a jump.
inline constexpr double kOnInterfaceTol = 1e-12;

// Interface samples closer than this (arclength) to a parameterization cusp
// carry no usable normal and are excluded from flux rows.
inline constexpr double kCuspArcExclusion = 1e-3;

// Star-shaped closed curve rho = r(theta) around a center point.
struct PolarCurve {
  Eigen::Vector2d center;
  std::function<double(double)> radius;
  std::function<double(double)> dradius;
  // Arclength distance from theta to the cusp, if the curve has one.
  std::function<double(double)> arc_from_cusp;
};

// Region enclosed by the zero level set of phi; inside means phi < 0.
struct LevelSetRegion {
  std::function<double(const Point&)> phi;
  std::function<Point(const Point&)> grad_phi;
  // Candidates with |grad phi| below this are rejected while sampling the
  // interface (curve self-intersections have no well-defined side).
  double min_grad_norm = 1e-3;
};

struct Sphere {
  Point center;
  double radius;
};

// A collocation point on an interface. The normal points from the inner
// region toward the outer one; jump quantities are outer-side minus
// inner-side everywhere in this codebase.
struct InterfacePoint {
  Point x = Point::Zero();
  Point normal = Point::Zero();
  int inner = 0;
  int outer = 0;
  bool has_normal = true;
};

class RegionMap {
 public:
  enum class Outer { Interval, Superellipse, Square, Superquadric };

  // [lo, hi] split into `pieces` uniform subdomains; interface l sits at the
  // breakpoint between pieces l-1 and l.
  static RegionMap interval_partition(double lo, double hi, int pieces);
  // x1^4 + x2^4 = 1 outer boundary with polar-curve islands.
  static RegionMap superellipse_with_islands(std::vector<PolarCurve> islands);
  static RegionMap square_with_islands(std::vector<PolarCurve> islands);
  static RegionMap square_with_levelset(LevelSetRegion region);
  // x1^4 + x2^4 + 16 x3^4 = 1 outer boundary with spherical islands.
  static RegionMap superquadric_with_spheres(std::vector<Sphere> spheres);

  int dimension() const { return dim_; }
  int num_interfaces() const;            // L
  int num_regions() const { return num_interfaces() + 1; }

  bool contains(const Point& x) const { return outer_value(x) <= kOnInterfaceTol; }

  // Region index in 0..L; throws OutOfDomainError outside the outer boundary.
  int classify(const Point& x) const;
  Vector one_hot(const Point& x) const;

  // True when some interface descriptor is within kOnInterfaceTol of zero.
  bool on_interface(const Point& x) const;

  // Regions separated by interface l (1..L).
  int interface_inner(int l) const;
  int interface_outer(int l) const;

  // Unit normal at an on-interface point, pointing inner -> outer.
  Point normal_at(int interface_idx, const Point& x) const;

  std::vector<Point> sample_interior(int count, uint64_t seed) const;
  std::vector<Point> sample_boundary(int count, uint64_t seed) const;
  std::vector<InterfacePoint> sample_interface(int interface_idx, int count, uint64_t seed) const;

  void bounding_box(Point& lo, Point& hi) const;

  Outer outer_kind() const { return outer_; }
  double interval_lo() const { return lo_; }
  double interval_hi() const { return hi_; }
  double breakpoint(int l) const;  // interval partition only

 private:
  RegionMap() = default;

  // Signed outer-boundary descriptor: negative inside, zero on the boundary.
  double outer_value(const Point& x) const;
  // Signed island descriptor for interface l: negative strictly inside.
  double island_value(int l, const Point& x) const;

  enum class Topology { Partition1D, PolarIslands, LevelSet, SphereIslands };

  int dim_ = 2;
  Outer outer_ = Outer::Square;
  Topology topo_ = Topology::PolarIslands;
  double lo_ = 0.0, hi_ = 1.0;
  int pieces_ = 1;
  std::vector<PolarCurve> curves_;
  std::vector<Sphere> spheres_;
  std::optional<LevelSetRegion> level_;
};

}  // namespace piecenet
