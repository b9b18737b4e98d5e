#include "piecenet/problems.hpp"

#include <cmath>

namespace piecenet {

namespace {

constexpr uint64_t kPiecewiseSeed = 8151;  // fixed: the randomized 1D families are part of the catalog

Eigen::Matrix3d pad2(double a11, double a12, double a21, double a22) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = a11;
  m(0, 1) = a12;
  m(1, 0) = a21;
  m(1, 1) = a22;
  return m;
}

RegionField scale_field(const RegionField& base, double beta) {
  RegionField f = base;
  f.coeff = [base, beta](const Point& x) { return Eigen::Matrix3d(beta * base.coeff(x)); };
  f.div_coeff = [base, beta](const Point& x) { return Point(beta * base.div_coeff(x)); };
  f.lambda = [base, beta](const Point& x) { return beta * base.lambda(x); };
  return f;
}

// Solution pieces of the five-region 2D example (superellipse domain).
std::vector<RegionField> multiregion2d_solutions() {
  std::vector<RegionField> r(5);
  r[0].u = [](const Point& x) { return std::sin(x[0]) * std::sin(x[1]); };
  r[0].grad_u = [](const Point& x) {
    return Point(std::cos(x[0]) * std::sin(x[1]), std::sin(x[0]) * std::cos(x[1]), 0.0);
  };
  r[0].hess_u = [](const Point& x) {
    const double s = std::sin(x[0]) * std::sin(x[1]);
    const double c = std::cos(x[0]) * std::cos(x[1]);
    return pad2(-s, c, c, -s);
  };
  r[1].u = [](const Point& x) { return std::exp(x[0] - x[1]); };
  r[1].grad_u = [](const Point& x) {
    const double u = std::exp(x[0] - x[1]);
    return Point(u, -u, 0.0);
  };
  r[1].hess_u = [](const Point& x) {
    const double u = std::exp(x[0] - x[1]);
    return pad2(u, -u, -u, u);
  };
  r[2].u = [](const Point& x) { return std::cos(x[0] + x[1]); };
  r[2].grad_u = [](const Point& x) {
    const double s = std::sin(x[0] + x[1]);
    return Point(-s, -s, 0.0);
  };
  r[2].hess_u = [](const Point& x) {
    const double c = std::cos(x[0] + x[1]);
    return pad2(-c, -c, -c, -c);
  };
  r[3].u = [](const Point& x) { return 0.5 * std::cosh(x[0] + x[1]); };
  r[3].grad_u = [](const Point& x) {
    const double s = 0.5 * std::sinh(x[0] + x[1]);
    return Point(s, s, 0.0);
  };
  r[3].hess_u = [](const Point& x) {
    const double c = 0.5 * std::cosh(x[0] + x[1]);
    return pad2(c, c, c, c);
  };
  r[4].u = [](const Point& x) { return std::log(x[0] + x[1] + 3.0); };
  r[4].grad_u = [](const Point& x) {
    const double s = 1.0 / (x[0] + x[1] + 3.0);
    return Point(s, s, 0.0);
  };
  r[4].hess_u = [](const Point& x) {
    const double s = x[0] + x[1] + 3.0;
    const double h = -1.0 / (s * s);
    return pad2(h, h, h, h);
  };
  return r;
}

RegionMap multiregion2d_map() {
  auto curve = [](double cx, double cy, std::function<double(double)> r,
                  std::function<double(double)> dr) {
    PolarCurve c;
    c.center = Eigen::Vector2d(cx, cy);
    c.radius = std::move(r);
    c.dradius = std::move(dr);
    return c;
  };
  std::vector<PolarCurve> islands;
  islands.push_back(curve(-0.5, 0.5, [](double t) { return 0.3 - 0.1 * std::cos(5.0 * t); },
                          [](double t) { return 0.5 * std::sin(5.0 * t); }));
  islands.push_back(curve(0.4, 0.4, [](double t) { return 0.35 - 0.2 * std::sin(4.0 * t); },
                          [](double t) { return -0.8 * std::cos(4.0 * t); }));
  islands.push_back(curve(-0.5, -0.4, [](double t) { return 0.45 - 0.05 * std::sin(2.0 * t); },
                          [](double t) { return -0.1 * std::cos(2.0 * t); }));
  islands.push_back(curve(0.5, -0.5, [](double t) { return 0.35 - 0.05 * std::cos(3.0 * t); },
                          [](double t) { return 0.15 * std::sin(3.0 * t); }));
  return RegionMap::superellipse_with_islands(std::move(islands));
}

// A_0 of the anisotropic five-region example and its divergence rows.
RegionField multiregion2d_base_coeff() {
  RegionField f;
  f.coeff = [](const Point& x) {
    const double off = x[1] * x[1] - x[0] * x[0];
    return pad2(std::pow(x[0] + x[1], 2) + 1.0, off, off, std::pow(x[0] - x[1], 2) + 1.0);
  };
  f.div_coeff = [](const Point& x) {
    return Point(2.0 * x[0] + 4.0 * x[1], -4.0 * x[0] + 2.0 * x[1], 0.0);
  };
  f.lambda = [](const Point& x) { return std::exp(x[0] - x[1]); };
  return f;
}

ProblemDefinition make_piecewise1d(int pieces, bool with_coefficients) {
  const PiecewiseCoefficients co = piecewise_coefficients(pieces);
  ProblemDefinition p;
  p.map = RegionMap::interval_partition(0.0, 2.0 * M_PI, pieces);
  p.has_coefficients = with_coefficients;
  p.regions.resize(pieces);
  for (int l = 0; l < pieces; ++l) {
    const double a = co.a[l], b = co.b[l], c = co.c[l];
    auto value = [a, b, c](double x) { return a * std::exp(std::sin(b * x) + std::cos(c * x)); };
    auto slope = [b, c](double x) { return b * std::cos(b * x) - c * std::sin(c * x); };
    auto slope_d = [b, c](double x) { return -b * b * std::sin(b * x) - c * c * std::cos(c * x); };
    RegionField& f = p.regions[l];
    f.u = [value](const Point& x) { return value(x[0]); };
    f.grad_u = [value, slope](const Point& x) {
      return Point(value(x[0]) * slope(x[0]), 0.0, 0.0);
    };
    f.hess_u = [value, slope, slope_d](const Point& x) {
      Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
      const double g = slope(x[0]);
      h(0, 0) = value(x[0]) * (g * g + slope_d(x[0]));
      return h;
    };
    if (with_coefficients) {
      const double d = co.d[l], e = co.e[l];
      f.coeff = [d](const Point& x) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
        m(0, 0) = d * d * x[0] * x[0];
        return m;
      };
      f.div_coeff = [d](const Point& x) { return Point(2.0 * d * d * x[0], 0.0, 0.0); };
      f.lambda = [e](const Point& x) { return std::pow(std::sin(e * x[0]), 2); };
    }
  }
  return p;
}

ProblemDefinition make_multiregion2d(bool with_coefficients) {
  ProblemDefinition p;
  p.map = multiregion2d_map();
  p.regions = multiregion2d_solutions();
  p.has_coefficients = with_coefficients;
  if (with_coefficients) {
    const RegionField base = multiregion2d_base_coeff();
    const double beta[5] = {1.0, 1e-1, 1e-2, 1e1, 1e2};
    for (int l = 0; l < 5; ++l) {
      RegionField scaled = scale_field(base, beta[l]);
      p.regions[l].coeff = scaled.coeff;
      p.regions[l].div_coeff = scaled.div_coeff;
      p.regions[l].lambda = scaled.lambda;
    }
  }
  return p;
}

ProblemDefinition make_heart2d() {
  PolarCurve heart;
  heart.center = Eigen::Vector2d(-0.25, 0.0);
  heart.radius = [](double t) { return (1.0 + std::cos(t)) / 3.0; };
  heart.dradius = [](double t) { return -std::sin(t) / 3.0; };
  heart.arc_from_cusp = [](double t) {
    return (4.0 / 3.0) * std::abs(1.0 - std::sin(0.5 * std::abs(t)));
  };

  ProblemDefinition p;
  p.name = "aniso2d_heart";
  p.map = RegionMap::square_with_islands({heart});
  p.has_coefficients = true;
  p.regions.resize(2);

  RegionField base;
  base.coeff = [](const Point& x) {
    const double s = x[0] * x[0] + x[1] * x[1];
    return pad2(s + 1.0, s, s, s + 2.0);
  };
  base.div_coeff = [](const Point& x) {
    const double d = 2.0 * (x[0] + x[1]);
    return Point(d, d, 0.0);
  };
  base.lambda = [](const Point& x) {
    return std::exp(x[0]) * (x[0] * x[0] + x[1] * x[1] + 3.0) * std::sin(x[1]);
  };

  p.regions[0] = scale_field(base, 1000.0);
  p.regions[0].u = [](const Point& x) { return x[0] * x[0] + x[1] * x[1]; };
  p.regions[0].grad_u = [](const Point& x) { return Point(2.0 * x[0], 2.0 * x[1], 0.0); };
  p.regions[0].hess_u = [](const Point&) { return pad2(2.0, 0.0, 0.0, 2.0); };

  p.regions[1] = scale_field(base, 1.0);
  p.regions[1].u = [](const Point& x) { return std::exp(x[0]) * std::cos(x[1]); };
  p.regions[1].grad_u = [](const Point& x) {
    const double e = std::exp(x[0]);
    return Point(e * std::cos(x[1]), -e * std::sin(x[1]), 0.0);
  };
  p.regions[1].hess_u = [](const Point& x) {
    const double e = std::exp(x[0]);
    return pad2(e * std::cos(x[1]), -e * std::sin(x[1]), -e * std::sin(x[1]),
                -e * std::cos(x[1]));
  };
  return p;
}

ProblemDefinition make_chessboard2d() {
  LevelSetRegion ls;
  ls.phi = [](const Point& x) {
    return (std::sin(5.0 * M_PI * x[0]) - x[1]) * (-std::sin(5.0 * M_PI * x[1]) - x[0]);
  };
  ls.grad_phi = [](const Point& x) {
    const double p = std::sin(5.0 * M_PI * x[0]) - x[1];
    const double q = -std::sin(5.0 * M_PI * x[1]) - x[0];
    return Point(5.0 * M_PI * std::cos(5.0 * M_PI * x[0]) * q - p,
                 -q - 5.0 * M_PI * std::cos(5.0 * M_PI * x[1]) * p, 0.0);
  };

  ProblemDefinition p;
  p.name = "aniso2d_chessboard";
  p.map = RegionMap::square_with_levelset(std::move(ls));
  p.has_coefficients = true;
  p.regions.resize(2);

  p.regions[0].u = [](const Point& x) { return 4.0 - x[0] * x[0] - x[1] * x[1]; };
  p.regions[0].grad_u = [](const Point& x) { return Point(-2.0 * x[0], -2.0 * x[1], 0.0); };
  p.regions[0].hess_u = [](const Point&) { return pad2(-2.0, 0.0, 0.0, -2.0); };
  p.regions[0].coeff = [](const Point& x) {
    const double a = x[0] * x[1] + 2.0;
    return pad2(a, 0.0, 0.0, a);
  };
  p.regions[0].div_coeff = [](const Point& x) { return Point(x[1], x[0], 0.0); };
  p.regions[0].lambda = [](const Point&) { return 0.0; };

  p.regions[1].u = [](const Point& x) { return x[0] * x[0] + x[1] * x[1]; };
  p.regions[1].grad_u = [](const Point& x) { return Point(2.0 * x[0], 2.0 * x[1], 0.0); };
  p.regions[1].hess_u = [](const Point&) { return pad2(2.0, 0.0, 0.0, 2.0); };
  p.regions[1].coeff = [](const Point& x) {
    const double a = x[0] * x[0] - x[1] * x[1] + 3.0;
    return pad2(a, 0.0, 0.0, a);
  };
  p.regions[1].div_coeff = [](const Point& x) { return Point(2.0 * x[0], -2.0 * x[1], 0.0); };
  p.regions[1].lambda = [](const Point&) { return 0.0; };
  return p;
}

ProblemDefinition make_spheres3d() {
  std::vector<Sphere> spheres = {
      {Point(-0.45, 0.45, 0.0), 0.4},
      {Point(0.45, 0.45, 0.0), 0.4},
      {Point(-0.45, -0.45, 0.0), 0.4},
      {Point(0.45, -0.45, 0.0), 0.4},
  };

  ProblemDefinition p;
  p.name = "aniso3d_spheres";
  p.map = RegionMap::superquadric_with_spheres(std::move(spheres));
  p.has_coefficients = true;
  p.regions.resize(5);

  // A_0 = R diag(|x|^2 + 1, |x|^2 + 2, |x|^2 + 3) R^T = |x|^2 I + R diag(1,2,3) R^T
  Eigen::Matrix3d rot;
  rot << 2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0,
        -2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0,
         1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0;
  const Eigen::Matrix3d fixed = rot * Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal() * rot.transpose();

  RegionField base;
  base.coeff = [fixed](const Point& x) {
    return Eigen::Matrix3d(x.squaredNorm() * Eigen::Matrix3d::Identity() + fixed);
  };
  base.div_coeff = [](const Point& x) { return Point(2.0 * x); };
  base.lambda = [](const Point& x) { return std::exp(x[0] - x[1] - x[2]); };

  const double beta[5] = {1.0, 0.1, 0.05, 10.0, 50.0};
  for (int l = 0; l < 5; ++l) p.regions[l] = scale_field(base, beta[l]);

  p.regions[0].u = [](const Point& x) { return std::exp(x[0] + x[1] + x[2]); };
  p.regions[0].grad_u = [](const Point& x) {
    const double u = std::exp(x[0] + x[1] + x[2]);
    return Point(u, u, u);
  };
  p.regions[0].hess_u = [](const Point& x) {
    return Eigen::Matrix3d(Eigen::Matrix3d::Constant(std::exp(x[0] + x[1] + x[2])));
  };

  // trigonometric / hyperbolic product solutions in the spheres
  auto product_field = [](double (*f)(double), double (*df)(double), double (*ddf)(double)) {
    RegionField field;
    field.u = [f](const Point& x) { return f(x[0]) * f(x[1]) * f(x[2]); };
    field.grad_u = [f, df](const Point& x) {
      return Point(df(x[0]) * f(x[1]) * f(x[2]), f(x[0]) * df(x[1]) * f(x[2]),
                   f(x[0]) * f(x[1]) * df(x[2]));
    };
    field.hess_u = [f, df, ddf](const Point& x) {
      Eigen::Matrix3d h;
      const double f0 = f(x[0]), f1 = f(x[1]), f2 = f(x[2]);
      const double d0 = df(x[0]), d1 = df(x[1]), d2 = df(x[2]);
      h(0, 0) = ddf(x[0]) * f1 * f2;
      h(1, 1) = f0 * ddf(x[1]) * f2;
      h(2, 2) = f0 * f1 * ddf(x[2]);
      h(0, 1) = h(1, 0) = d0 * d1 * f2;
      h(0, 2) = h(2, 0) = d0 * f1 * d2;
      h(1, 2) = h(2, 1) = f0 * d1 * d2;
      return h;
    };
    return field;
  };

  auto sin_f = [](double t) { return std::sin(t); };
  auto cos_f = [](double t) { return std::cos(t); };
  auto neg_sin = [](double t) { return -std::sin(t); };
  auto neg_cos = [](double t) { return -std::cos(t); };
  auto sinh_f = [](double t) { return std::sinh(t); };
  auto cosh_f = [](double t) { return std::cosh(t); };

  RegionField s1 = product_field(sin_f, cos_f, neg_sin);
  RegionField s2 = product_field(cos_f, neg_sin, neg_cos);
  RegionField s3 = product_field(sinh_f, cosh_f, sinh_f);
  RegionField s4 = product_field(cosh_f, sinh_f, cosh_f);
  p.regions[1].u = s1.u; p.regions[1].grad_u = s1.grad_u; p.regions[1].hess_u = s1.hess_u;
  p.regions[2].u = s2.u; p.regions[2].grad_u = s2.grad_u; p.regions[2].hess_u = s2.hess_u;
  p.regions[3].u = s3.u; p.regions[3].grad_u = s3.grad_u; p.regions[3].hess_u = s3.hess_u;
  p.regions[4].u = s4.u; p.regions[4].grad_u = s4.grad_u; p.regions[4].hess_u = s4.hess_u;
  return p;
}

}  // namespace

PiecewiseCoefficients piecewise_coefficients(int pieces) {
  if (pieces < 1) throw Error("piecewise family needs at least one piece");
  Rng rng(derive_seed(kPiecewiseSeed, static_cast<uint64_t>(pieces)));
  PiecewiseCoefficients co;
  for (int l = 0; l < pieces; ++l) {
    co.a.push_back(rng.uniform(0.5, 1.5));
    co.b.push_back(rng.uniform(1.0, 3.0));
    co.c.push_back(rng.uniform(1.0, 3.0));
    co.d.push_back(rng.uniform(0.5, 1.5));
    co.e.push_back(rng.uniform(0.5, 1.5));
  }
  return co;
}

Eigen::Matrix3d ProblemDefinition::coeff_in(int region, const Point& x) const {
  if (!has_coefficients) throw Error(name + ": problem has no coefficient field");
  return regions[region].coeff(x);
}

double ProblemDefinition::lambda_in(int region, const Point& x) const {
  if (!has_coefficients) throw Error(name + ": problem has no coefficient field");
  return regions[region].lambda(x);
}

double ProblemDefinition::rhs_f(const Point& x) const {
  if (!has_coefficients) throw Error(name + ": problem has no coefficient field");
  if (map.on_interface(x)) throw Error("rhs_f: point lies on an interface");
  const int region = map.classify(x);
  const RegionField& f = regions[region];
  const Point g = f.grad_u(x);
  const Eigen::Matrix3d h = f.hess_u(x);
  const Eigen::Matrix3d a = f.coeff(x);
  const Point diva = f.div_coeff(x);
  const int d = dimension();
  double val = 0.0;
  for (int k = 0; k < d; ++k) {
    val += diva[k] * g[k];
    for (int m = 0; m < d; ++m) val += a(k, m) * h(k, m);
  }
  return val - f.lambda(x) * f.u(x);
}

std::pair<double, double> ProblemDefinition::jump_data(const Point& x, int interface_idx,
                                                       const Point& n) const {
  const int outer = map.interface_outer(interface_idx);
  const int inner = map.interface_inner(interface_idx);
  const double v = regions[outer].u(x) - regions[inner].u(x);
  double w = 0.0;
  if (has_coefficients) {
    w = n.dot(regions[outer].coeff(x) * regions[outer].grad_u(x)) -
        n.dot(regions[inner].coeff(x) * regions[inner].grad_u(x));
  }
  return {v, w};
}

double flux_jump(const ParameterVector& params, const EncodingScheme& scheme,
                 const ProblemDefinition& problem, const Point& x, const Point& n,
                 int interface_idx) {
  const int outer = problem.map.interface_outer(interface_idx);
  const int inner = problem.map.interface_inner(interface_idx);
  return flux_jump(params, scheme, x, n, problem.coeff_in(outer, x), problem.coeff_in(inner, x),
                   outer, inner);
}

ProblemDefinition catalog(const std::string& name) {
  ProblemDefinition p;
  if (name == "func2d_multiregion") {
    p = make_multiregion2d(false);
  } else if (name == "aniso2d_multiregion") {
    p = make_multiregion2d(true);
  } else if (name == "aniso2d_heart") {
    p = make_heart2d();
  } else if (name == "aniso2d_chessboard") {
    p = make_chessboard2d();
  } else if (name == "aniso3d_spheres") {
    p = make_spheres3d();
  } else if (name.starts_with("func1d_pieces")) {
    p = make_piecewise1d(std::stoi(name.substr(13)), false);
  } else if (name.starts_with("aniso1d_pieces")) {
    p = make_piecewise1d(std::stoi(name.substr(14)), true);
  } else {
    throw ConfigError("unknown problem: " + name);
  }
  p.name = name;
  return p;
}

std::vector<std::string> catalog_names() {
  return {"func2d_multiregion", "func1d_pieces5",  "func1d_pieces10",  "func1d_pieces50",
          "func1d_pieces100",   "aniso1d_pieces5", "aniso1d_pieces10", "aniso1d_pieces50",
          "aniso1d_pieces100",  "aniso2d_heart",   "aniso2d_chessboard",
          "aniso2d_multiregion", "aniso3d_spheres"};
}

}  // namespace piecenet
