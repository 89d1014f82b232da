#pragma once

#include <Eigen/Dense>
#include <string>

namespace pathspace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Model manifolds with exactly known curvature and boundary data:
//   HalfLine        [0,inf), flat, boundary {0}
//   HalfSpace       {x in R^d : x_d >= 0}, flat, totally geodesic boundary,
//                   optional constant drift
//   Ball            {|x| <= R} in R^d, flat inside, convex boundary with
//                   shape operator (1/R) on boundary-tangent directions
//   Sphere          unit sphere S^d in embedding coordinates (chart has d+1
//                   coordinates), Ricci = (d-1) Id, no boundary
//   HyperbolicPlane Poincare disk, metric (2/(1-|x|^2))^2 Id, Ricci = -Id,
//                   no boundary
enum class ModelKind { HalfLine, HalfSpace, Ball, Sphere, HyperbolicPlane };

struct ManifoldModel {
  ModelKind kind;
  int dim = 1;          // intrinsic dimension
  double radius = 1.0;  // Ball only
  Vec drift;            // constant vector field, HalfSpace only; empty = none

  int chart_dim() const { return kind == ModelKind::Sphere ? dim + 1 : dim; }
  bool has_boundary() const {
    return kind == ModelKind::HalfLine || kind == ModelKind::HalfSpace ||
           kind == ModelKind::Ball;
  }
  // points with boundary_gap below this count as boundary points
  double boundary_tolerance() const {
    return 1e-9 * (kind == ModelKind::Ball ? radius : 1.0);
  }
};

ManifoldModel make_half_line();
ManifoldModel make_half_space(int dim, Vec drift = Vec());
ManifoldModel make_ball(int dim, double radius);
ManifoldModel make_sphere(int dim);
ManifoldModel make_hyperbolic_plane();

std::string model_kind_name(ModelKind k);

// distance-like gap to the boundary (exact for these models); +inf when the
// model has no boundary
double boundary_gap(const ManifoldModel& m, const Vec& p);
bool on_boundary(const ManifoldModel& m, const Vec& p);
bool in_domain(const ManifoldModel& m, const Vec& p);

// inward unit normal (unit in the metric); requires on_boundary(p)
Vec inward_normal(const ManifoldModel& m, const Vec& p);

// metric in chart coordinates (for Sphere: ambient restriction, valid on
// tangent vectors)
Mat metric(const ManifoldModel& m, const Vec& p);

// deterministic orthonormal tangent frame at p, chart_dim x dim columns,
// frame^T G frame = Id
Mat initial_frame(const ManifoldModel& m, const Vec& p);

// Bakry-Emery curvature operator in chart coordinates. For Sphere the
// returned matrix is (d-1) Id on the whole ambient space; it agrees with the
// curvature operator on tangent vectors, which is the only place it is used.
Mat ric_z(const ManifoldModel& m, const Vec& p);

// curvature operator contracted into frame coordinates, dim x dim symmetric
Mat ric_z_frame(const ManifoldModel& m, const Vec& p, const Mat& frame);

// shape operator of the boundary in frame coordinates (inward normal
// convention, so a convex boundary gives a nonnegative matrix); zero on the
// normal direction; requires on_boundary(p)
Mat second_fundamental_form_frame(const ManifoldModel& m, const Vec& p,
                                  const Mat& frame);

// exact curvature constants of the model: eigenvalues of the curvature
// operator lie in [ric_lo, ric_hi], shape operator eigenvalues on
// boundary-tangent directions in [sff_lo, sff_hi]
struct ExactBounds {
  double ric_lo = 0, ric_hi = 0, sff_lo = 0, sff_hi = 0;
};
ExactBounds exact_curvature_bounds(const ManifoldModel& m);

struct GeodesicResult {
  Vec point;
  Mat frame;
};

// walk the geodesic with initial velocity (frame * v_frame) for unit time and
// parallel-transport the frame along it; exact for every model here
GeodesicResult geodesic_step(const ManifoldModel& m, const Vec& p,
                             const Mat& frame, const Vec& v_frame);

// frame coordinates of a chart tangent vector: frame^T G w
Vec frame_coords(const ManifoldModel& m, const Vec& p, const Mat& frame,
                 const Vec& w_chart);

// frame coordinates of the Riemannian gradient given plain chart partial
// derivatives; collapses to frame^T partials for every chart used here
Vec frame_coords_gradient(const Mat& frame, const Vec& chart_partials);

}  // namespace pathspace
