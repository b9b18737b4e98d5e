#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "piecenet/geometry.hpp"
#include "piecenet/network.hpp"

namespace piecenet {

// Closed-form fields of one subdomain. Matrices are padded 3x3; only the
// leading d x d block is meaningful. div_coeff holds sum_k dA_km/dx_k.
struct RegionField {
  std::function<double(const Point&)> u;
  std::function<Point(const Point&)> grad_u;
  std::function<Eigen::Matrix3d(const Point&)> hess_u;
  std::function<Eigen::Matrix3d(const Point&)> coeff;
  std::function<Point(const Point&)> div_coeff;
  std::function<double(const Point&)> lambda;
};

// A benchmark problem: the domain decomposition plus per-region exact
// solution and coefficients. Source, boundary, and jump data are always
// derived from these fields, never stored separately.
struct ProblemDefinition {
  std::string name;
  RegionMap map;
  std::vector<RegionField> regions;
  bool has_coefficients = false;

  int dimension() const { return map.dimension(); }

  double exact_in(int region, const Point& x) const { return regions[region].u(x); }
  double exact(const Point& x) const { return exact_in(map.classify(x), x); }

  Eigen::Matrix3d coeff_in(int region, const Point& x) const;
  double lambda_in(int region, const Point& x) const;

  // f = div(A grad u) - lambda u from the region-local closed forms.
  // Throws OutOfDomainError / Error when x lies on an interface.
  double rhs_f(const Point& x) const;

  double boundary_g(const Point& x) const { return exact(x); }

  // (v, w) = ([u], [A grad u . n]) at an on-interface point with normal n.
  std::pair<double, double> jump_data(const Point& x, int interface_idx, const Point& n) const;
};

// Conormal-derivative jump of the network using the problem's coefficients.
double flux_jump(const ParameterVector& params, const EncodingScheme& scheme,
                 const ProblemDefinition& problem, const Point& x, const Point& n,
                 int interface_idx);

ProblemDefinition catalog(const std::string& name);
std::vector<std::string> catalog_names();

// The randomized piecewise-exponential families share one fixed master seed
// so the 1D approximation and PDE cases use identical (a, b, c) draws.
struct PiecewiseCoefficients {
  std::vector<double> a, b, c, d, e;
};
PiecewiseCoefficients piecewise_coefficients(int pieces);

}  // namespace piecenet
