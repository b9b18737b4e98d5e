#include "piecenet/network.hpp"

#include <cmath>

namespace piecenet {

ParameterVector ParameterVector::pack(ParameterLayout lay, const Vector& c, const Matrix& w,
                                      const Vector& b, const Matrix& e) {
  const int n = lay.neurons;
  const int in = lay.input_dim();
  if (c.size() != n || b.size() != n || w.rows() != n || w.cols() != in)
    throw DimensionError("pack: c/W/b shapes do not match the layout");
  ParameterVector p(lay);
  p.flat.segment(lay.c_offset(), n) = c;
  for (int j = 0; j < n; ++j)
    for (int q = 0; q < in; ++q) p.flat[lay.w_offset() + j * in + q] = w(j, q);
  p.flat.segment(lay.b_offset(), n) = b;
  if (lay.kind == EncodingKind::Embedding) {
    if (e.rows() != lay.embed_dim || e.cols() != lay.regions)
      throw DimensionError("pack: embedding matrix shape does not match the layout");
    for (int q = 0; q < lay.regions; ++q)
      for (int pp = 0; pp < lay.embed_dim; ++pp)
        p.flat[lay.e_offset() + q * lay.embed_dim + pp] = e(pp, q);
  }
  return p;
}

void ParameterVector::unpack(Vector& c_out, Matrix& w_out, Vector& b_out, Matrix& e_out) const {
  c_out = c();
  w_out = w();
  b_out = b();
  if (layout.kind == EncodingKind::Embedding)
    e_out = embed();
  else
    e_out.resize(0, 0);
}

ParameterVector make_initial_params(const ParameterLayout& layout, const EncodingScheme& scheme,
                                    uint64_t seed) {
  ParameterVector p(layout);
  Rng rng(seed);
  for (int i = 0; i < layout.e_offset(); ++i) p.flat[i] = rng.uniform(-1.0, 1.0);
  if (layout.kind == EncodingKind::Embedding) {
    if (scheme.embed.rows() != layout.embed_dim || scheme.embed.cols() != layout.regions)
      throw DimensionError("scheme embedding matrix does not match the layout");
    for (int q = 0; q < layout.regions; ++q)
      for (int pp = 0; pp < layout.embed_dim; ++pp)
        p.flat[layout.e_offset() + q * layout.embed_dim + pp] = scheme.embed(pp, q);
  }
  return p;
}

Vector augmentation(const ParameterVector& params, const EncodingScheme& scheme, int region) {
  if (scheme.kind == EncodingKind::Embedding) {
    if (region < 0 || region >= params.layout.regions)
      throw InvalidCategoryError("region index out of range");
    return params.embed().col(region);
  }
  return encode_region(scheme, region);
}

EvalCache prepare(const ParameterVector& params, const Point& x, const Vector& z, int region) {
  const ParameterLayout& lay = params.layout;
  if (z.size() != lay.aug_dim) throw DimensionError("augmentation vector has the wrong length");
  EvalCache cache;
  cache.region = region;
  cache.input.resize(lay.input_dim());
  for (int k = 0; k < lay.dim; ++k) cache.input[k] = x[k];
  cache.input.segment(lay.dim, lay.aug_dim) = z;

  Vector t = params.w() * cache.input + params.b();
  const int n = lay.neurons;
  cache.s.resize(n);
  cache.d1.resize(n);
  cache.d2.resize(n);
  cache.d3.resize(n);
  for (int j = 0; j < n; ++j) {
    const double s = sigmoid(t[j]);
    cache.s[j] = s;
    cache.d1[j] = sigmoid_d1(s);
    cache.d2[j] = sigmoid_d2(s);
    cache.d3[j] = sigmoid_d3(s);
  }
  return cache;
}

double forward(const ParameterVector& params, const EvalCache& cache) {
  return params.c().dot(cache.s);
}

Point grad_x(const ParameterVector& params, const EvalCache& cache) {
  const ParameterLayout& lay = params.layout;
  auto c = params.c();
  auto w = params.w();
  Point g = Point::Zero();
  for (int k = 0; k < lay.dim; ++k) {
    double acc = 0.0;
    for (int j = 0; j < lay.neurons; ++j) acc += c[j] * w(j, k) * cache.d1[j];
    g[k] = acc;
  }
  return g;
}

Eigen::Matrix3d hess_x(const ParameterVector& params, const EvalCache& cache) {
  const ParameterLayout& lay = params.layout;
  auto c = params.c();
  auto w = params.w();
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (int k = 0; k < lay.dim; ++k) {
    for (int m = k; m < lay.dim; ++m) {
      double acc = 0.0;
      for (int j = 0; j < lay.neurons; ++j) acc += c[j] * w(j, k) * w(j, m) * cache.d2[j];
      h(k, m) = acc;
      h(m, k) = acc;
    }
  }
  return h;
}

double forward(const ParameterVector& params, const Point& x, const Vector& z) {
  return forward(params, prepare(params, x, z));
}

Point grad_x(const ParameterVector& params, const Point& x, const Vector& z) {
  return grad_x(params, prepare(params, x, z));
}

Eigen::Matrix3d hess_x(const ParameterVector& params, const Point& x, const Vector& z) {
  return hess_x(params, prepare(params, x, z));
}

double eval_piecewise(const ParameterVector& params, const EncodingScheme& scheme,
                      const RegionMap& map, const Point& x) {
  const int region = map.classify(x);
  return forward(params, prepare(params, x, augmentation(params, scheme, region), region));
}

namespace {

// Accumulates the embedding-block contribution: row[E(., region)] +=
// coeff * dquantity/dz, where dz_p spans the z components of the input.
void accumulate_embed_block(const ParameterLayout& lay, const Vector& dq_dz, int region,
                            double coeff, double* row) {
  if (lay.kind != EncodingKind::Embedding) return;
  if (region < 0)
    throw InvalidCategoryError("parameter row with an embedding needs the one-hot region");
  double* block = row + lay.e_offset() + region * lay.embed_dim;
  for (int p = 0; p < lay.embed_dim; ++p) block[p] += coeff * dq_dz[p];
}

}  // namespace

void accumulate_value_row(const ParameterVector& params, const EvalCache& cache, double coeff,
                          double* row) {
  const ParameterLayout& lay = params.layout;
  auto c = params.c();
  auto w = params.w();
  const int in = lay.input_dim();
  Vector dq_dz = lay.kind == EncodingKind::Embedding ? Vector::Zero(lay.embed_dim) : Vector();
  for (int j = 0; j < lay.neurons; ++j) {
    const double cd1 = c[j] * cache.d1[j];
    row[lay.c_offset() + j] += coeff * cache.s[j];
    double* wrow = row + lay.w_offset() + j * in;
    for (int q = 0; q < in; ++q) wrow[q] += coeff * cd1 * cache.input[q];
    row[lay.b_offset() + j] += coeff * cd1;
    if (lay.kind == EncodingKind::Embedding)
      for (int p = 0; p < lay.embed_dim; ++p) dq_dz[p] += cd1 * w(j, lay.dim + p);
  }
  accumulate_embed_block(lay, dq_dz, cache.region, coeff, row);
}

void accumulate_grad_row(const ParameterVector& params, const EvalCache& cache, int k,
                         double coeff, double* row) {
  const ParameterLayout& lay = params.layout;
  if (k < 0 || k >= lay.dim) throw DimensionError("gradient component out of range");
  auto c = params.c();
  auto w = params.w();
  const int in = lay.input_dim();
  Vector dq_dz = lay.kind == EncodingKind::Embedding ? Vector::Zero(lay.embed_dim) : Vector();
  for (int j = 0; j < lay.neurons; ++j) {
    const double wk = w(j, k);
    row[lay.c_offset() + j] += coeff * wk * cache.d1[j];
    const double cj = c[j];
    const double cwd2 = cj * wk * cache.d2[j];
    double* wrow = row + lay.w_offset() + j * in;
    for (int q = 0; q < in; ++q) wrow[q] += coeff * cwd2 * cache.input[q];
    wrow[k] += coeff * cj * cache.d1[j];
    row[lay.b_offset() + j] += coeff * cwd2;
    if (lay.kind == EncodingKind::Embedding)
      for (int p = 0; p < lay.embed_dim; ++p) dq_dz[p] += cwd2 * w(j, lay.dim + p);
  }
  accumulate_embed_block(lay, dq_dz, cache.region, coeff, row);
}

void accumulate_hess_row(const ParameterVector& params, const EvalCache& cache, int k, int m,
                         double coeff, double* row) {
  const ParameterLayout& lay = params.layout;
  if (k < 0 || k >= lay.dim || m < 0 || m >= lay.dim)
    throw DimensionError("hessian component out of range");
  auto c = params.c();
  auto w = params.w();
  const int in = lay.input_dim();
  Vector dq_dz = lay.kind == EncodingKind::Embedding ? Vector::Zero(lay.embed_dim) : Vector();
  for (int j = 0; j < lay.neurons; ++j) {
    const double wk = w(j, k);
    const double wm = w(j, m);
    row[lay.c_offset() + j] += coeff * wk * wm * cache.d2[j];
    const double cj = c[j];
    const double cwwd3 = cj * wk * wm * cache.d3[j];
    double* wrow = row + lay.w_offset() + j * in;
    for (int q = 0; q < in; ++q) wrow[q] += coeff * cwwd3 * cache.input[q];
    wrow[k] += coeff * cj * wm * cache.d2[j];
    wrow[m] += coeff * cj * wk * cache.d2[j];
    row[lay.b_offset() + j] += coeff * cwwd3;
    if (lay.kind == EncodingKind::Embedding)
      for (int p = 0; p < lay.embed_dim; ++p) dq_dz[p] += cwwd3 * w(j, lay.dim + p);
  }
  accumulate_embed_block(lay, dq_dz, cache.region, coeff, row);
}

Vector param_jacobian_row(const ParameterVector& params, const EvalCache& cache,
                          const JacobianRowRequest& request) {
  Vector row = Vector::Zero(params.layout.size());
  switch (request.kind) {
    case JacobianRowRequest::Kind::Value:
      accumulate_value_row(params, cache, 1.0, row.data());
      break;
    case JacobianRowRequest::Kind::Gradient:
      accumulate_grad_row(params, cache, request.k, 1.0, row.data());
      break;
    case JacobianRowRequest::Kind::Hessian:
      accumulate_hess_row(params, cache, request.k, request.m, 1.0, row.data());
      break;
  }
  return row;
}

double jump(const ParameterVector& params, const EncodingScheme& scheme, const Point& x,
            int outer_region, int inner_region) {
  if (inner_region == outer_region)
    throw InvalidCategoryError("jump needs two distinct regions");
  const Vector z_outer = augmentation(params, scheme, outer_region);
  const Vector z_inner = augmentation(params, scheme, inner_region);
  return forward(params, x, z_outer) - forward(params, x, z_inner);
}

double flux_jump(const ParameterVector& params, const EncodingScheme& scheme, const Point& x,
                 const Point& n, const Eigen::Matrix3d& a_outer, const Eigen::Matrix3d& a_inner,
                 int outer_region, int inner_region) {
  if (inner_region == outer_region)
    throw InvalidCategoryError("flux_jump needs two distinct regions");
  if (std::abs(n.norm() - 1.0) > 1e-8) throw GeometryError("flux_jump: normal is not unit");
  const Vector z_outer = augmentation(params, scheme, outer_region);
  const Vector z_inner = augmentation(params, scheme, inner_region);
  const Point g_outer = grad_x(params, x, z_outer);
  const Point g_inner = grad_x(params, x, z_inner);
  return n.dot(a_outer * g_outer) - n.dot(a_inner * g_inner);
}

}  // namespace piecenet
