#include "pathspace/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathspace {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double poincare_lambda(const Vec& x) { return 2.0 / (1.0 - x.squaredNorm()); }

// Poincare disk -> hyperboloid sheet {<X,X>_L = -1, X0 > 0} with the
// Lorentz form diag(-1, 1, 1)
Eigen::Vector3d hyp_lift(const Vec& x) {
  double r2 = x.squaredNorm(), s = 1.0 - r2;
  return {(1.0 + r2) / s, 2.0 * x[0] / s, 2.0 * x[1] / s};
}

Eigen::Matrix<double, 3, 2> hyp_lift_jacobian(const Vec& x) {
  double r2 = x.squaredNorm(), s = 1.0 - r2;
  Eigen::Matrix<double, 3, 2> J;
  for (int j = 0; j < 2; ++j) {
    J(0, j) = 4.0 * x[j] / (s * s);
    for (int i = 0; i < 2; ++i)
      J(i + 1, j) = 2.0 * ((i == j ? 1.0 : 0.0) / s + 2.0 * x[i] * x[j] / (s * s));
  }
  return J;
}

Vec hyp_project(const Eigen::Vector3d& X) {
  Vec x(2);
  x[0] = X[1] / (1.0 + X[0]);
  x[1] = X[2] / (1.0 + X[0]);
  return x;
}

// differential of the projection back to the disk
Vec hyp_project_tangent(const Eigen::Vector3d& X, const Eigen::Vector3d& W) {
  double a = 1.0 + X[0];
  Vec w(2);
  w[0] = W[1] / a - X[1] * W[0] / (a * a);
  w[1] = W[2] / a - X[2] * W[0] / (a * a);
  return w;
}

double lorentz(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
}  // namespace

ManifoldModel make_half_line() { return {ModelKind::HalfLine, 1, 1.0, Vec()}; }

ManifoldModel make_half_space(int dim, Vec drift) {
  require(dim >= 1, "half-space dimension must be >= 1");
  require(drift.size() == 0 || drift.size() == dim,
          "drift must match the half-space dimension");
  return {ModelKind::HalfSpace, dim, 1.0, std::move(drift)};
}

ManifoldModel make_ball(int dim, double radius) {
  require(dim >= 1 && radius > 0, "ball needs dim >= 1 and radius > 0");
  return {ModelKind::Ball, dim, radius, Vec()};
}

ManifoldModel make_sphere(int dim) {
  require(dim >= 1, "sphere dimension must be >= 1");
  return {ModelKind::Sphere, dim, 1.0, Vec()};
}

ManifoldModel make_hyperbolic_plane() {
  return {ModelKind::HyperbolicPlane, 2, 1.0, Vec()};
}

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::HalfLine: return "half_line";
    case ModelKind::HalfSpace: return "half_space";
    case ModelKind::Ball: return "ball";
    case ModelKind::Sphere: return "sphere";
    case ModelKind::HyperbolicPlane: return "hyperbolic_plane";
  }
  return "?";
}

double boundary_gap(const ManifoldModel& m, const Vec& p) {
  switch (m.kind) {
    case ModelKind::HalfLine: return p[0];
    case ModelKind::HalfSpace: return p[m.dim - 1];
    case ModelKind::Ball: return m.radius - p.norm();
    default: return kInf;
  }
}

bool on_boundary(const ManifoldModel& m, const Vec& p) {
  return m.has_boundary() && boundary_gap(m, p) <= m.boundary_tolerance();
}

bool in_domain(const ManifoldModel& m, const Vec& p) {
  if (p.size() != m.chart_dim()) return false;
  switch (m.kind) {
    case ModelKind::Sphere: return std::abs(p.norm() - 1.0) <= 1e-8;
    case ModelKind::HyperbolicPlane: return p.norm() < 1.0;
    default: return boundary_gap(m, p) >= -m.boundary_tolerance();
  }
}

Vec inward_normal(const ManifoldModel& m, const Vec& p) {
  require(on_boundary(m, p), "inward_normal needs a boundary point");
  Vec n = Vec::Zero(m.chart_dim());
  switch (m.kind) {
    case ModelKind::HalfLine:
    case ModelKind::HalfSpace:
      n[m.dim - 1] = 1.0;
      return n;
    case ModelKind::Ball:
      return -p / p.norm();
    default:
      throw std::logic_error("model has no boundary");
  }
}

Mat metric(const ManifoldModel& m, const Vec& p) {
  int n = m.chart_dim();
  if (m.kind == ModelKind::HyperbolicPlane) {
    double lam = poincare_lambda(p);
    return lam * lam * Mat::Identity(n, n);
  }
  return Mat::Identity(n, n);
}

Mat initial_frame(const ManifoldModel& m, const Vec& p) {
  int n = m.chart_dim(), d = m.dim;
  switch (m.kind) {
    case ModelKind::Sphere: {
      // Gram-Schmidt of the coordinate basis against p; keeps the first d
      // independent directions, so the frame at a pole is the plain basis
      Mat f(n, d);
      int col = 0;
      for (int i = 0; i < n && col < d; ++i) {
        Vec c = Vec::Zero(n);
        c[i] = 1.0;
        c -= p.dot(c) * p;
        for (int j = 0; j < col; ++j) c -= f.col(j).dot(c) * f.col(j);
        double len = c.norm();
        if (len > 1e-8) f.col(col++) = c / len;
      }
      require(col == d, "failed to build a sphere frame");
      return f;
    }
    case ModelKind::HyperbolicPlane:
      return Mat::Identity(n, d) / poincare_lambda(p);
    default:
      return Mat::Identity(n, d);
  }
}

Mat ric_z(const ManifoldModel& m, const Vec&) {
  int n = m.chart_dim();
  switch (m.kind) {
    case ModelKind::Sphere:
      return double(m.dim - 1) * Mat::Identity(n, n);
    case ModelKind::HyperbolicPlane:
      return -double(m.dim - 1) * Mat::Identity(n, n);
    default:
      return Mat::Zero(n, n);
  }
}

Mat ric_z_frame(const ManifoldModel& m, const Vec& p, const Mat& frame) {
  // constant multiples of the identity for every model here, so the
  // contraction frame^T G (ric) frame is that multiple of Id_d
  switch (m.kind) {
    case ModelKind::Sphere:
      return double(m.dim - 1) * Mat::Identity(m.dim, m.dim);
    case ModelKind::HyperbolicPlane:
      return -double(m.dim - 1) * Mat::Identity(m.dim, m.dim);
    default:
      (void)p;
      (void)frame;
      return Mat::Zero(m.dim, m.dim);
  }
}

Mat second_fundamental_form_frame(const ManifoldModel& m, const Vec& p,
                                  const Mat& frame) {
  require(on_boundary(m, p), "shape operator needs a boundary point");
  int d = m.dim;
  if (m.kind == ModelKind::Ball) {
    Vec nf = frame.transpose() * inward_normal(m, p);
    return (Mat::Identity(d, d) - nf * nf.transpose()) / m.radius;
  }
  return Mat::Zero(d, d);  // flat boundary
}

ExactBounds exact_curvature_bounds(const ManifoldModel& m) {
  ExactBounds b;
  switch (m.kind) {
    case ModelKind::Sphere:
      b.ric_lo = b.ric_hi = double(m.dim - 1);
      break;
    case ModelKind::HyperbolicPlane:
      b.ric_lo = b.ric_hi = -double(m.dim - 1);
      break;
    case ModelKind::Ball:
      // range over boundary-tangent directions; the frame-coordinate matrix
      // carries an extra structural zero along the normal
      b.sff_lo = b.sff_hi = 1.0 / m.radius;
      if (m.dim == 1) b.sff_lo = b.sff_hi = 0.0;  // boundary has no tangent
      break;
    default:
      break;
  }
  return b;
}

GeodesicResult geodesic_step(const ManifoldModel& m, const Vec& p,
                             const Mat& frame, const Vec& v_frame) {
  switch (m.kind) {
    case ModelKind::Sphere: {
      Vec w = frame * v_frame;
      double th = w.norm();
      if (th < 1e-300) return {p, frame};
      Vec wh = w / th;
      Vec q = std::cos(th) * p + std::sin(th) * wh;
      q /= q.norm();
      Mat f = frame;
      for (int j = 0; j < f.cols(); ++j) {
        double a = f.col(j).dot(wh);
        f.col(j) += a * ((std::cos(th) - 1.0) * wh - std::sin(th) * p);
        f.col(j) -= f.col(j).dot(q) * q;  // shed roundoff normal components
      }
      return {q, f};
    }
    case ModelKind::HyperbolicPlane: {
      Vec w = frame * v_frame;
      double th = v_frame.norm();  // frame orthonormal: |w|_g = |v_frame|
      if (th < 1e-300) return {p, frame};
      Eigen::Vector3d X = hyp_lift(p);
      Eigen::Matrix<double, 3, 2> J = hyp_lift_jacobian(p);
      Eigen::Vector3d W = J * Eigen::Vector2d(w[0], w[1]);
      Eigen::Vector3d Wh = W / th;
      Eigen::Vector3d X2 = std::cosh(th) * X + std::sinh(th) * Wh;
      Mat f(2, 2);
      for (int j = 0; j < 2; ++j) {
        Eigen::Vector3d C = J * Eigen::Vector2d(frame(0, j), frame(1, j));
        double a = lorentz(C, Wh);
        Eigen::Vector3d C2 =
            C + a * ((std::cosh(th) - 1.0) * Wh + std::sinh(th) * X);
        Vec c2 = hyp_project_tangent(X2, C2);
        f.col(j) = c2;
      }
      return {hyp_project(X2), f};
    }
    default:
      return {p + frame * v_frame, frame};
  }
}

Vec frame_coords(const ManifoldModel& m, const Vec& p, const Mat& frame,
                 const Vec& w_chart) {
  if (m.kind == ModelKind::HyperbolicPlane) {
    double lam = poincare_lambda(p);
    return lam * lam * (frame.transpose() * w_chart);
  }
  return frame.transpose() * w_chart;
}

Vec frame_coords_gradient(const Mat& frame, const Vec& chart_partials) {
  return frame.transpose() * chart_partials;
}

}  // namespace pathspace
