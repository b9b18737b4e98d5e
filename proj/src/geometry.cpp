#include "piecenet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace piecenet {

namespace {

// sign-preserving square root used by the power-4 boundary parameterizations
double signed_sqrt(double w) { return std::copysign(std::sqrt(std::abs(w)), w); }

}  // namespace

RegionMap RegionMap::interval_partition(double lo, double hi, int pieces) {
  if (pieces < 1 || !(hi > lo)) throw GeometryError("interval partition needs hi > lo and pieces >= 1");
  RegionMap m;
  m.dim_ = 1;
  m.outer_ = Outer::Interval;
  m.topo_ = Topology::Partition1D;
  m.lo_ = lo;
  m.hi_ = hi;
  m.pieces_ = pieces;
  return m;
}

RegionMap RegionMap::superellipse_with_islands(std::vector<PolarCurve> islands) {
  RegionMap m;
  m.dim_ = 2;
  m.outer_ = Outer::Superellipse;
  m.topo_ = Topology::PolarIslands;
  m.curves_ = std::move(islands);
  return m;
}

RegionMap RegionMap::square_with_islands(std::vector<PolarCurve> islands) {
  RegionMap m;
  m.dim_ = 2;
  m.outer_ = Outer::Square;
  m.topo_ = Topology::PolarIslands;
  m.curves_ = std::move(islands);
  return m;
}

RegionMap RegionMap::square_with_levelset(LevelSetRegion region) {
  RegionMap m;
  m.dim_ = 2;
  m.outer_ = Outer::Square;
  m.topo_ = Topology::LevelSet;
  m.level_ = std::move(region);
  return m;
}

RegionMap RegionMap::superquadric_with_spheres(std::vector<Sphere> spheres) {
  RegionMap m;
  m.dim_ = 3;
  m.outer_ = Outer::Superquadric;
  m.topo_ = Topology::SphereIslands;
  m.spheres_ = std::move(spheres);
  return m;
}

int RegionMap::num_interfaces() const {
  switch (topo_) {
    case Topology::Partition1D: return pieces_ - 1;
    case Topology::PolarIslands: return static_cast<int>(curves_.size());
    case Topology::LevelSet: return 1;
    case Topology::SphereIslands: return static_cast<int>(spheres_.size());
  }
  return 0;
}

double RegionMap::breakpoint(int l) const {
  return lo_ + (hi_ - lo_) * static_cast<double>(l) / static_cast<double>(pieces_);
}

double RegionMap::outer_value(const Point& x) const {
  switch (outer_) {
    case Outer::Interval: return std::max(lo_ - x[0], x[0] - hi_);
    case Outer::Superellipse: return std::pow(x[0], 4) + std::pow(x[1], 4) - 1.0;
    case Outer::Square: return std::max(std::abs(x[0]), std::abs(x[1])) - 1.0;
    case Outer::Superquadric:
      return std::pow(x[0], 4) + std::pow(x[1], 4) + 16.0 * std::pow(x[2], 4) - 1.0;
  }
  return 0.0;
}

double RegionMap::island_value(int l, const Point& x) const {
  switch (topo_) {
    case Topology::Partition1D: {
      // distance to the breakpoint; sign is irrelevant for the callers
      return x[0] - breakpoint(l);
    }
    case Topology::PolarIslands: {
      const PolarCurve& c = curves_[static_cast<size_t>(l - 1)];
      const double dx = x[0] - c.center[0];
      const double dy = x[1] - c.center[1];
      const double rho = std::hypot(dx, dy);
      const double theta = std::atan2(dy, dx);
      return rho - c.radius(theta);
    }
    case Topology::LevelSet: return level_->phi(x);
    case Topology::SphereIslands: {
      const Sphere& s = spheres_[static_cast<size_t>(l - 1)];
      return (x - s.center).norm() - s.radius;
    }
  }
  return 0.0;
}

int RegionMap::classify(const Point& x) const {
  if (outer_value(x) > kOnInterfaceTol) throw OutOfDomainError("point outside the outer boundary");
  if (topo_ == Topology::Partition1D) {
    const double h = (hi_ - lo_) / static_cast<double>(pieces_);
    const int idx = static_cast<int>(std::floor((x[0] - lo_) / h));
    return std::clamp(idx, 0, pieces_ - 1);
  }
  int match = 0;
  for (int l = 1; l <= num_interfaces(); ++l) {
    if (island_value(l, x) < -kOnInterfaceTol) {
      if (match != 0) throw GeometryError("subdomains overlap: point classifies into two regions");
      match = l;
    }
  }
  return match;
}

Vector RegionMap::one_hot(const Point& x) const {
  Vector delta = Vector::Zero(num_regions());
  delta[classify(x)] = 1.0;
  return delta;
}

bool RegionMap::on_interface(const Point& x) const {
  for (int l = 1; l <= num_interfaces(); ++l)
    if (std::abs(island_value(l, x)) <= kOnInterfaceTol) return true;
  return false;
}

int RegionMap::interface_inner(int l) const {
  return topo_ == Topology::Partition1D ? l - 1 : l;
}

int RegionMap::interface_outer(int l) const {
  return topo_ == Topology::Partition1D ? l : 0;
}

Point RegionMap::normal_at(int interface_idx, const Point& x) const {
  Point n = Point::Zero();
  switch (topo_) {
    case Topology::Partition1D:
      n[0] = 1.0;
      return n;
    case Topology::PolarIslands: {
      const PolarCurve& c = curves_[static_cast<size_t>(interface_idx - 1)];
      const double theta = std::atan2(x[1] - c.center[1], x[0] - c.center[0]);
      const double r = c.radius(theta);
      const double dr = c.dradius(theta);
      // tangent of theta -> center + r(theta) (cos, sin), rotated -90 degrees
      const double tx = dr * std::cos(theta) - r * std::sin(theta);
      const double ty = dr * std::sin(theta) + r * std::cos(theta);
      const double norm = std::hypot(tx, ty);
      if (norm < 1e-10) throw DegenerateNormalError("polar curve tangent vanishes (cusp)");
      n[0] = ty / norm;
      n[1] = -tx / norm;
      return n;
    }
    case Topology::LevelSet: {
      Point g = level_->grad_phi(x);
      const double norm = g.norm();
      if (norm < 1e-10) throw DegenerateNormalError("level-set gradient vanishes");
      // phi > 0 is region 0, so +grad points toward the outer region
      return g / norm;
    }
    case Topology::SphereIslands: {
      const Sphere& s = spheres_[static_cast<size_t>(interface_idx - 1)];
      Point d = x - s.center;
      const double norm = d.norm();
      if (norm < 1e-10) throw DegenerateNormalError("point coincides with sphere center");
      return d / norm;
    }
  }
  return n;
}

void RegionMap::bounding_box(Point& lo, Point& hi) const {
  lo = Point::Zero();
  hi = Point::Zero();
  switch (outer_) {
    case Outer::Interval:
      lo[0] = lo_;
      hi[0] = hi_;
      break;
    case Outer::Superellipse:
    case Outer::Square:
      lo[0] = lo[1] = -1.0;
      hi[0] = hi[1] = 1.0;
      break;
    case Outer::Superquadric:
      lo[0] = lo[1] = -1.0;
      hi[0] = hi[1] = 1.0;
      lo[2] = -0.5;
      hi[2] = 0.5;
      break;
  }
}

std::vector<Point> RegionMap::sample_interior(int count, uint64_t seed) const {
  if (count < 1) throw GeometryError("sample_interior: count must be >= 1");
  Rng rng(seed);
  Point lo, hi;
  bounding_box(lo, hi);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  long attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    ++attempts;
    if (attempts >= 1000 && 100 * static_cast<long>(pts.size()) < attempts)
      throw GeometryError("interior sampling acceptance rate below 1%");
    Point x = Point::Zero();
    for (int k = 0; k < dim_; ++k) x[k] = rng.uniform(lo[k], hi[k]);
    if (outer_value(x) >= -kOnInterfaceTol) continue;
    bool on_interface = false;
    for (int l = 1; l <= num_interfaces(); ++l) {
      if (std::abs(island_value(l, x)) <= kOnInterfaceTol) {
        on_interface = true;
        break;
      }
    }
    if (on_interface) continue;
    pts.push_back(x);
  }
  return pts;
}

std::vector<Point> RegionMap::sample_boundary(int count, uint64_t seed) const {
  if (count < 1) throw GeometryError("sample_boundary: count must be >= 1");
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Point x = Point::Zero();
    switch (outer_) {
      case Outer::Interval:
        // the 1D boundary is two points; alternate them
        x[0] = (i % 2 == 0) ? lo_ : hi_;
        break;
      case Outer::Superellipse: {
        const double t = rng.uniform(0.0, 2.0 * M_PI);
        x[0] = signed_sqrt(std::cos(t));
        x[1] = signed_sqrt(std::sin(t));
        break;
      }
      case Outer::Square: {
        const double s = rng.uniform(0.0, 8.0);
        const int side = std::min(3, static_cast<int>(s / 2.0));
        const double t = s - 2.0 * side - 1.0;  // in [-1, 1)
        switch (side) {
          case 0: x[0] = t; x[1] = -1.0; break;
          case 1: x[0] = 1.0; x[1] = t; break;
          case 2: x[0] = -t; x[1] = 1.0; break;
          default: x[0] = -1.0; x[1] = -t; break;
        }
        break;
      }
      case Outer::Superquadric: {
        const double u = rng.uniform(0.0, 2.0 * M_PI);
        const double v = rng.uniform(-0.5 * M_PI, 0.5 * M_PI);
        const double cv = signed_sqrt(std::cos(v));
        x[0] = cv * signed_sqrt(std::cos(u));
        x[1] = cv * signed_sqrt(std::sin(u));
        x[2] = 0.5 * signed_sqrt(std::sin(v));
        break;
      }
    }
    pts.push_back(x);
  }
  return pts;
}

std::vector<InterfacePoint> RegionMap::sample_interface(int interface_idx, int count,
                                                        uint64_t seed) const {
  if (count < 1) throw GeometryError("sample_interface: count must be >= 1");
  if (interface_idx < 1 || interface_idx > num_interfaces())
    throw GeometryError("sample_interface: no such interface");
  Rng rng(seed);
  std::vector<InterfacePoint> pts;
  pts.reserve(static_cast<size_t>(count));

  const int inner = interface_inner(interface_idx);
  const int outer = interface_outer(interface_idx);

  switch (topo_) {
    case Topology::Partition1D: {
      InterfacePoint p;
      p.x[0] = breakpoint(interface_idx);
      p.normal[0] = 1.0;
      p.inner = inner;
      p.outer = outer;
      pts.assign(static_cast<size_t>(count), p);
      break;
    }
    case Topology::PolarIslands: {
      const PolarCurve& c = curves_[static_cast<size_t>(interface_idx - 1)];
      while (static_cast<int>(pts.size()) < count) {
        const double theta = rng.uniform(-M_PI, M_PI);
        const double r = c.radius(theta);
        InterfacePoint p;
        p.x[0] = c.center[0] + r * std::cos(theta);
        p.x[1] = c.center[1] + r * std::sin(theta);
        p.inner = inner;
        p.outer = outer;
        try {
          p.normal = normal_at(interface_idx, p.x);
        } catch (const DegenerateNormalError&) {
          continue;  // measure-zero draw exactly at a cusp
        }
        if (c.arc_from_cusp && c.arc_from_cusp(theta) <= kCuspArcExclusion) p.has_normal = false;
        pts.push_back(p);
      }
      break;
    }
    case Topology::LevelSet: {
      Point lo, hi;
      bounding_box(lo, hi);
      const LevelSetRegion& ls = *level_;
      long attempts = 0;
      while (static_cast<int>(pts.size()) < count) {
        ++attempts;
        if (attempts >= 1000 && 100 * static_cast<long>(pts.size()) < attempts)
          throw GeometryError("interface sampling acceptance rate below 1%");
        Point x = Point::Zero();
        for (int k = 0; k < dim_; ++k) x[k] = rng.uniform(lo[k], hi[k]);
        // Newton projection along grad(phi) onto the zero level set
        bool ok = false;
        for (int it = 0; it < 20; ++it) {
          const double v = ls.phi(x);
          if (std::abs(v) <= kOnInterfaceTol) {
            ok = true;
            break;
          }
          Point g = ls.grad_phi(x);
          const double g2 = g.squaredNorm();
          if (g2 < ls.min_grad_norm * ls.min_grad_norm) break;
          x -= (v / g2) * g;
        }
        if (!ok) continue;
        Point g = ls.grad_phi(x);
        if (g.norm() < ls.min_grad_norm) continue;  // too close to a curve crossing
        if (outer_value(x) > kOnInterfaceTol) continue;
        InterfacePoint p;
        p.x = x;
        p.normal = g / g.norm();
        p.inner = inner;
        p.outer = outer;
        pts.push_back(p);
      }
      break;
    }
    case Topology::SphereIslands: {
      const Sphere& s = spheres_[static_cast<size_t>(interface_idx - 1)];
      for (int i = 0; i < count; ++i) {
        const double az = rng.uniform(0.0, 2.0 * M_PI);
        const double pol = rng.uniform(0.0, M_PI);
        Point dir(std::sin(pol) * std::cos(az), std::sin(pol) * std::sin(az), std::cos(pol));
        InterfacePoint p;
        p.x = s.center + s.radius * dir;
        p.normal = dir;
        p.inner = inner;
        p.outer = outer;
        pts.push_back(p);
      }
      break;
    }
  }
  return pts;
}

}  // namespace piecenet
