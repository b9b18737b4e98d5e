#include "piecenet/residual.hpp"

#include <cmath>

namespace piecenet {

int ResidualSystem::count(RowGroup group, int interface_idx) const {
  int n = 0;
  for (const RowTag& t : tags)
    if (t.group == group && (interface_idx == 0 || t.interface_idx == interface_idx)) ++n;
  return n;
}

SupervisedData sample_supervised(const ProblemDefinition& problem, int interior, int boundary,
                                 uint64_t seed) {
  if (interior < 1) throw Error("supervised sampling needs at least one interior point");
  SupervisedData data;
  data.x = problem.map.sample_interior(interior, derive_seed(seed, 1));
  if (boundary > 0) {
    auto bnd = problem.map.sample_boundary(boundary, derive_seed(seed, 2));
    data.x.insert(data.x.end(), bnd.begin(), bnd.end());
  }
  data.region.reserve(data.x.size());
  data.u.resize(static_cast<int>(data.x.size()));
  for (size_t i = 0; i < data.x.size(); ++i) {
    data.region.push_back(problem.map.classify(data.x[i]));
    data.u[static_cast<int>(i)] = problem.exact_in(data.region[i], data.x[i]);
  }
  return data;
}

CollocationSet sample_collocation(const RegionMap& map, int interior, int boundary,
                                  int per_interface, uint64_t seed) {
  CollocationSet set;
  set.interior = map.sample_interior(interior, derive_seed(seed, 1));
  set.interior_region.reserve(set.interior.size());
  for (const Point& x : set.interior) set.interior_region.push_back(map.classify(x));
  set.boundary = map.sample_boundary(boundary, derive_seed(seed, 2));
  set.boundary_region.reserve(set.boundary.size());
  for (const Point& x : set.boundary) set.boundary_region.push_back(map.classify(x));
  for (int l = 1; l <= map.num_interfaces(); ++l)
    set.interfaces.push_back(
        map.sample_interface(l, per_interface, derive_seed(seed, 100 + static_cast<uint64_t>(l))));
  return set;
}

PinnWorkset prepare_pinn(const ProblemDefinition& problem, const CollocationSet& points) {
  if (!problem.has_coefficients)
    throw Error(problem.name + ": collocation system needs coefficient fields");
  if (points.interior.empty() || points.boundary.empty())
    throw Error("collocation system needs interior and boundary points");

  PinnWorkset w;
  w.m_interior = static_cast<int>(points.interior.size());
  w.m_boundary = static_cast<int>(points.boundary.size());

  w.x_int = points.interior;
  w.region_int = points.interior_region;
  w.a_int.reserve(points.interior.size());
  w.diva_int.reserve(points.interior.size());
  w.lambda_int.reserve(points.interior.size());
  w.f_int.reserve(points.interior.size());
  for (size_t i = 0; i < points.interior.size(); ++i) {
    const RegionField& f = problem.regions[points.interior_region[i]];
    const Point& x = points.interior[i];
    w.a_int.push_back(f.coeff(x));
    w.diva_int.push_back(f.div_coeff(x));
    w.lambda_int.push_back(f.lambda(x));
    w.f_int.push_back(problem.rhs_f(x));
  }

  w.x_bnd = points.boundary;
  w.region_bnd = points.boundary_region;
  w.g_bnd.reserve(points.boundary.size());
  for (size_t i = 0; i < points.boundary.size(); ++i)
    w.g_bnd.push_back(problem.exact_in(points.boundary_region[i], points.boundary[i]));

  for (size_t li = 0; li < points.interfaces.size(); ++li) {
    const int l = static_cast<int>(li) + 1;
    w.m_interface.push_back(static_cast<int>(points.interfaces[li].size()));
    for (const InterfacePoint& p : points.interfaces[li]) {
      PinnWorkset::InterfaceEntry e;
      e.x = p.x;
      e.n = p.normal;
      e.l = l;
      e.inner = p.inner;
      e.outer = p.outer;
      e.has_normal = p.has_normal;
      auto [v, wj] = problem.jump_data(p.x, l, p.normal);
      e.v = v;
      e.w = wj;
      e.a_outer = problem.coeff_in(p.outer, p.x);
      e.a_inner = problem.coeff_in(p.inner, p.x);
      w.iface.push_back(e);
    }
  }
  return w;
}

namespace {

void check_compatible(const ParameterVector& params, const EncodingScheme& scheme) {
  if (scheme.dim_z() != params.layout.aug_dim || scheme.kind != params.layout.kind)
    throw DimensionError("encoding scheme does not match the parameter layout");
}

// One supervised/boundary-style row: residual sign * (u_N - target).
struct RowContext {
  const ParameterVector& params;
  const EncodingScheme& scheme;
  const std::vector<Vector>& aug;  // augmentation per region
  bool with_jacobian;
  ResidualSystem& out;
};

void fill_supervised_row(RowContext& ctx, int row, const Point& x, int region, double target,
                         double scale) {
  const EvalCache cache = prepare(ctx.params, x, ctx.aug[region], region);
  ctx.out.r[row] = scale * (target - forward(ctx.params, cache));
  if (ctx.with_jacobian)
    accumulate_value_row(ctx.params, cache, -scale, ctx.out.jac.row(row).data());
}

void fill_boundary_row(RowContext& ctx, int row, const Point& x, int region, double g,
                       double scale) {
  const EvalCache cache = prepare(ctx.params, x, ctx.aug[region], region);
  ctx.out.r[row] = scale * (forward(ctx.params, cache) - g);
  if (ctx.with_jacobian)
    accumulate_value_row(ctx.params, cache, scale, ctx.out.jac.row(row).data());
}

void fill_interior_row(RowContext& ctx, int row, const PinnWorkset& w, int i, double scale) {
  const int region = w.region_int[i];
  const Point& x = w.x_int[i];
  const EvalCache cache = prepare(ctx.params, x, ctx.aug[region], region);
  const int d = ctx.params.layout.dim;
  const Eigen::Matrix3d& a = w.a_int[i];
  const Point& diva = w.diva_int[i];
  const double lam = w.lambda_int[i];

  const Point g = grad_x(ctx.params, cache);
  const Eigen::Matrix3d h = hess_x(ctx.params, cache);
  double val = -lam * forward(ctx.params, cache) - w.f_int[i];
  for (int k = 0; k < d; ++k) {
    val += diva[k] * g[k];
    for (int m = 0; m < d; ++m) val += a(k, m) * h(k, m);
  }
  ctx.out.r[row] = scale * val;

  if (ctx.with_jacobian) {
    double* jrow = ctx.out.jac.row(row).data();
    accumulate_value_row(ctx.params, cache, -scale * lam, jrow);
    for (int k = 0; k < d; ++k) {
      accumulate_grad_row(ctx.params, cache, k, scale * diva[k], jrow);
      for (int m = k; m < d; ++m) {
        const double coeff = (k == m) ? a(k, k) : 2.0 * a(k, m);
        accumulate_hess_row(ctx.params, cache, k, m, scale * coeff, jrow);
      }
    }
  }
}

void fill_jump_row(RowContext& ctx, int row, const PinnWorkset::InterfaceEntry& e, double scale) {
  const EvalCache outer = prepare(ctx.params, e.x, ctx.aug[e.outer], e.outer);
  const EvalCache inner = prepare(ctx.params, e.x, ctx.aug[e.inner], e.inner);
  ctx.out.r[row] =
      scale * (forward(ctx.params, outer) - forward(ctx.params, inner) - e.v);
  if (ctx.with_jacobian) {
    double* jrow = ctx.out.jac.row(row).data();
    accumulate_value_row(ctx.params, outer, scale, jrow);
    accumulate_value_row(ctx.params, inner, -scale, jrow);
  }
}

void fill_flux_row(RowContext& ctx, int row, const PinnWorkset::InterfaceEntry& e, double scale) {
  const EvalCache outer = prepare(ctx.params, e.x, ctx.aug[e.outer], e.outer);
  const EvalCache inner = prepare(ctx.params, e.x, ctx.aug[e.inner], e.inner);
  const int d = ctx.params.layout.dim;
  const Point h_outer = e.a_outer * e.n;  // A symmetric: n.A grad = (A n).grad
  const Point h_inner = e.a_inner * e.n;
  const Point g_outer = grad_x(ctx.params, outer);
  const Point g_inner = grad_x(ctx.params, inner);
  ctx.out.r[row] = scale * (h_outer.dot(g_outer) - h_inner.dot(g_inner) - e.w);
  if (ctx.with_jacobian) {
    double* jrow = ctx.out.jac.row(row).data();
    for (int k = 0; k < d; ++k) {
      accumulate_grad_row(ctx.params, outer, k, scale * h_outer[k], jrow);
      accumulate_grad_row(ctx.params, inner, k, -scale * h_inner[k], jrow);
    }
  }
}

std::vector<Vector> region_augmentations(const ParameterVector& params,
                                         const EncodingScheme& scheme) {
  std::vector<Vector> aug;
  aug.reserve(static_cast<size_t>(scheme.regions));
  for (int l = 0; l < scheme.regions; ++l) aug.push_back(augmentation(params, scheme, l));
  return aug;
}

enum class PinnRowKind { Interior, Boundary, Jump, Flux };

struct PinnRowPlan {
  PinnRowKind kind;
  int index;   // into the workset arrays
  double scale;
};

ResidualSystem assemble_pinn_impl(const ParameterVector& params, const EncodingScheme& scheme,
                                  const PinnWorkset& w, bool with_jacobian, bool parallel) {
  check_compatible(params, scheme);

  // fixed row plan; flux rows are dropped for samples without a usable normal
  std::vector<PinnRowPlan> plan;
  std::vector<RowTag> tags;
  int skipped = 0;
  const double s_int = 1.0 / std::sqrt(static_cast<double>(w.m_interior));
  const double s_bnd = 1.0 / std::sqrt(static_cast<double>(w.m_boundary));
  for (int i = 0; i < w.m_interior; ++i) {
    plan.push_back({PinnRowKind::Interior, i, s_int});
    tags.push_back({RowGroup::Interior, 0});
  }
  for (int i = 0; i < w.m_boundary; ++i) {
    plan.push_back({PinnRowKind::Boundary, i, s_bnd});
    tags.push_back({RowGroup::Boundary, 0});
  }
  for (size_t i = 0; i < w.iface.size(); ++i) {
    const auto& e = w.iface[i];
    const double s = 1.0 / std::sqrt(static_cast<double>(w.m_interface[e.l - 1]));
    plan.push_back({PinnRowKind::Jump, static_cast<int>(i), s});
    tags.push_back({RowGroup::Jump, e.l});
    if (e.has_normal) {
      plan.push_back({PinnRowKind::Flux, static_cast<int>(i), s});
      tags.push_back({RowGroup::FluxJump, e.l});
    } else {
      ++skipped;
    }
  }

  const int rows = static_cast<int>(plan.size());
  ResidualSystem out;
  out.tags = std::move(tags);
  out.skipped_flux_rows = skipped;
  out.r.resize(rows);
  if (with_jacobian) out.jac = RowMatrix::Zero(rows, params.layout.size());

  const std::vector<Vector> aug = region_augmentations(params, scheme);
  RowContext ctx{params, scheme, aug, with_jacobian, out};

#pragma omp parallel for schedule(static) if (parallel)
  for (int row = 0; row < rows; ++row) {
    const PinnRowPlan& p = plan[static_cast<size_t>(row)];
    switch (p.kind) {
      case PinnRowKind::Interior:
        fill_interior_row(ctx, row, w, p.index, p.scale);
        break;
      case PinnRowKind::Boundary:
        fill_boundary_row(ctx, row, w.x_bnd[p.index], w.region_bnd[p.index], w.g_bnd[p.index],
                          p.scale);
        break;
      case PinnRowKind::Jump:
        fill_jump_row(ctx, row, w.iface[static_cast<size_t>(p.index)], p.scale);
        break;
      case PinnRowKind::Flux:
        fill_flux_row(ctx, row, w.iface[static_cast<size_t>(p.index)], p.scale);
        break;
    }
  }
  return out;
}

}  // namespace

ResidualSystem assemble_supervised(const ParameterVector& params, const EncodingScheme& scheme,
                                   const SupervisedData& data, bool with_jacobian) {
  check_compatible(params, scheme);
  if (data.x.empty()) throw Error("assemble_supervised: empty data set");
  const int rows = static_cast<int>(data.x.size());
  ResidualSystem out;
  out.r.resize(rows);
  out.tags.assign(static_cast<size_t>(rows), {RowGroup::Supervised, 0});
  if (with_jacobian) out.jac = RowMatrix::Zero(rows, params.layout.size());
  const std::vector<Vector> aug = region_augmentations(params, scheme);
  RowContext ctx{params, scheme, aug, with_jacobian, out};
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i)
    fill_supervised_row(ctx, i, data.x[static_cast<size_t>(i)],
                        data.region[static_cast<size_t>(i)], data.u[i], scale);
  return out;
}

ResidualSystem assemble_pinn(const ParameterVector& params, const EncodingScheme& scheme,
                             const PinnWorkset& work, bool with_jacobian) {
  return assemble_pinn_impl(params, scheme, work, with_jacobian, true);
}

ResidualSystem assemble_pinn_serial(const ParameterVector& params, const EncodingScheme& scheme,
                                    const PinnWorkset& work, bool with_jacobian) {
  return assemble_pinn_impl(params, scheme, work, with_jacobian, false);
}

ResidualSystem assemble_pinn(const ParameterVector& params, const EncodingScheme& scheme,
                             const ProblemDefinition& problem, const CollocationSet& points,
                             bool with_jacobian) {
  return assemble_pinn(params, scheme, prepare_pinn(problem, points), with_jacobian);
}

}  // namespace piecenet
