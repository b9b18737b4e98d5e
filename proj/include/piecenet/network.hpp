#pragma once

#include "piecenet/common.hpp"
#include "piecenet/encoding.hpp"
#include "piecenet/geometry.hpp"

namespace piecenet {

// sigmoid activation and its derivatives expressed through s = sigma(t)
inline double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }
inline double sigmoid_d1(double s) { return s * (1.0 - s); }
inline double sigmoid_d2(double s) { return s * (1.0 - s) * (1.0 - 2.0 * s); }
inline double sigmoid_d3(double s) { return s * (1.0 - s) * (1.0 - 6.0 * s + 6.0 * s * s); }

// Flat layout of the trainable state: c (N), W (N x (d+dim_z), row-major),
// b (N), then E (D x (L+1), column-major) when the encoding is an embedding.
struct ParameterLayout {
  int dim = 1;
  int aug_dim = 1;
  int neurons = 1;
  EncodingKind kind = EncodingKind::Scalar;
  int regions = 1;
  int embed_dim = 0;

  int input_dim() const { return dim + aug_dim; }
  int c_offset() const { return 0; }
  int w_offset() const { return neurons; }
  int b_offset() const { return neurons * (1 + input_dim()); }
  int e_offset() const { return neurons * (2 + input_dim()); }
  int size() const {
    return e_offset() + (kind == EncodingKind::Embedding ? embed_dim * regions : 0);
  }

  static ParameterLayout for_scheme(int dim, int neurons, const EncodingScheme& scheme) {
    ParameterLayout l;
    l.dim = dim;
    l.aug_dim = scheme.dim_z();
    l.neurons = neurons;
    l.kind = scheme.kind;
    l.regions = scheme.regions;
    l.embed_dim = scheme.embed_dim;
    return l;
  }
};

struct ParameterVector {
  ParameterLayout layout;
  Vector flat;

  ParameterVector() = default;
  explicit ParameterVector(ParameterLayout lay) : layout(lay), flat(Vector::Zero(lay.size())) {}
  ParameterVector(ParameterLayout lay, Vector values) : layout(lay), flat(std::move(values)) {
    if (flat.size() != layout.size()) throw DimensionError("flat parameter vector has the wrong length");
  }

  Eigen::Map<const Vector> c() const {
    return {flat.data() + layout.c_offset(), layout.neurons};
  }
  Eigen::Map<const RowMatrix> w() const {
    return {flat.data() + layout.w_offset(), layout.neurons, layout.input_dim()};
  }
  Eigen::Map<const Vector> b() const {
    return {flat.data() + layout.b_offset(), layout.neurons};
  }
  Eigen::Map<const Matrix> embed() const {
    return {flat.data() + layout.e_offset(), layout.embed_dim, layout.regions};
  }

  static ParameterVector pack(ParameterLayout lay, const Vector& c, const Matrix& w,
                              const Vector& b, const Matrix& e = Matrix());
  void unpack(Vector& c, Matrix& w, Vector& b, Matrix& e) const;
};

// c, W, b entries i.i.d. uniform on [-1, 1]; the embedding block (when
// present) is copied from the scheme, which owns its own initializer.
ParameterVector make_initial_params(const ParameterLayout& layout, const EncodingScheme& scheme,
                                    uint64_t seed);

// Augmentation coordinates of a region. For the embedding scheme the matrix
// is read from the parameter vector (the trainable copy), not the scheme.
Vector augmentation(const ParameterVector& params, const EncodingScheme& scheme, int region);

// Per-point evaluation state: the stacked input [x, z] and the activation
// value/derivatives of every neuron.
struct EvalCache {
  Vector input;
  Vector s, d1, d2, d3;
  int region = -1;  // one-hot column for the embedding chain rule
};

EvalCache prepare(const ParameterVector& params, const Point& x, const Vector& z,
                  int region = -1);

double forward(const ParameterVector& params, const EvalCache& cache);
// Spatial gradient / Hessian, padded with zeros beyond the active dimension.
Point grad_x(const ParameterVector& params, const EvalCache& cache);
Eigen::Matrix3d hess_x(const ParameterVector& params, const EvalCache& cache);

// Convenience overloads evaluating at (x, z) directly.
double forward(const ParameterVector& params, const Point& x, const Vector& z);
Point grad_x(const ParameterVector& params, const Point& x, const Vector& z);
Eigen::Matrix3d hess_x(const ParameterVector& params, const Point& x, const Vector& z);

// Network value at x with the region-local augmentation.
double eval_piecewise(const ParameterVector& params, const EncodingScheme& scheme,
                      const RegionMap& map, const Point& x);

// row += coeff * d(quantity)/d(theta), written in the flat layout. `k`, `m`
// are spatial component indices.
void accumulate_value_row(const ParameterVector& params, const EvalCache& cache, double coeff,
                          double* row);
void accumulate_grad_row(const ParameterVector& params, const EvalCache& cache, int k,
                         double coeff, double* row);
void accumulate_hess_row(const ParameterVector& params, const EvalCache& cache, int k, int m,
                         double coeff, double* row);

struct JacobianRowRequest {
  enum class Kind { Value, Gradient, Hessian };
  Kind kind = Kind::Value;
  int k = 0;
  int m = 0;
};

// Exact partial derivatives of the requested quantity with respect to every
// entry of the flat parameter vector.
Vector param_jacobian_row(const ParameterVector& params, const EvalCache& cache,
                          const JacobianRowRequest& request);

// Jump of the network value across an interface point: outer-side minus
// inner-side, evaluated directly from the two augmentations (no limits).
double jump(const ParameterVector& params, const EncodingScheme& scheme, const Point& x,
            int outer_region, int inner_region);

// Jump of the conormal derivative n . A grad(u) with per-side coefficient
// matrices (padded 3x3). n must be unit to 1e-8.
double flux_jump(const ParameterVector& params, const EncodingScheme& scheme, const Point& x,
                 const Point& n, const Eigen::Matrix3d& a_outer, const Eigen::Matrix3d& a_inner,
                 int outer_region, int inner_region);

}  // namespace piecenet
