#pragma once

#include <vector>

#include "piecenet/problems.hpp"

namespace piecenet {

enum class RowGroup { Interior, Boundary, Jump, FluxJump, Supervised };

struct RowTag {
  RowGroup group = RowGroup::Interior;
  int interface_idx = 0;  // 1..L for Jump / FluxJump rows
};

// Scaled residual vector and its Jacobian with respect to the flat parameter
// vector. ||r||^2 equals the training loss exactly; rows carry 1/sqrt(count)
// group scalings.
struct ResidualSystem {
  Vector r;
  RowMatrix jac;  // empty when assembled without the Jacobian
  std::vector<RowTag> tags;
  int skipped_flux_rows = 0;

  double loss() const { return r.squaredNorm(); }
  int count(RowGroup group, int interface_idx = 0) const;
};

struct SupervisedData {
  std::vector<Point> x;
  std::vector<int> region;
  Vector u;
};

// Training data for the supervised loss: `interior` + `boundary` points of
// the map (boundary may be zero) with exact values attached.
SupervisedData sample_supervised(const ProblemDefinition& problem, int interior, int boundary,
                                 uint64_t seed);

struct CollocationSet {
  std::vector<Point> interior;
  std::vector<int> interior_region;
  std::vector<Point> boundary;
  std::vector<int> boundary_region;
  std::vector<std::vector<InterfacePoint>> interfaces;  // [l-1] -> points on interface l
};

CollocationSet sample_collocation(const RegionMap& map, int interior, int boundary,
                                  int per_interface, uint64_t seed);

// Theta-independent data cached once per training run: source, boundary and
// jump values, plus coefficient fields at every collocation point.
struct PinnWorkset {
  int m_interior = 0;
  int m_boundary = 0;
  std::vector<int> m_interface;  // per interface l (1-based -> index l-1)

  std::vector<Point> x_int;
  std::vector<int> region_int;
  std::vector<Eigen::Matrix3d> a_int;
  std::vector<Point> diva_int;
  std::vector<double> lambda_int;
  std::vector<double> f_int;

  std::vector<Point> x_bnd;
  std::vector<int> region_bnd;
  std::vector<double> g_bnd;

  struct InterfaceEntry {
    Point x, n;
    int l = 1, inner = 0, outer = 0;
    bool has_normal = true;
    double v = 0.0, w = 0.0;
    Eigen::Matrix3d a_outer, a_inner;
  };
  std::vector<InterfaceEntry> iface;
};

PinnWorkset prepare_pinn(const ProblemDefinition& problem, const CollocationSet& points);

// Supervised least-squares system: rows (u_i - u_N(x_i)) / sqrt(M).
ResidualSystem assemble_supervised(const ParameterVector& params, const EncodingScheme& scheme,
                                   const SupervisedData& data, bool with_jacobian = true);

// Collocation system of the interface problem. The OpenMP driver and the
// serial reference produce bitwise-identical systems.
ResidualSystem assemble_pinn(const ParameterVector& params, const EncodingScheme& scheme,
                             const PinnWorkset& work, bool with_jacobian = true);
ResidualSystem assemble_pinn_serial(const ParameterVector& params, const EncodingScheme& scheme,
                                    const PinnWorkset& work, bool with_jacobian = true);

// Convenience overload that samples nothing: builds the workset on the fly.
ResidualSystem assemble_pinn(const ParameterVector& params, const EncodingScheme& scheme,
                             const ProblemDefinition& problem, const CollocationSet& points,
                             bool with_jacobian = true);

}  // namespace piecenet
