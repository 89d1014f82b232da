#pragma once

#include <vector>

#include "pathspace/cylinder.hpp"
#include "pathspace/geometry.hpp"
#include "pathspace/sampler.hpp"

namespace pathspace {

// Placement of the boundary projector Id - P inside the damping flow.
// EveryEvent composes it at every boundary grid point (the reading that
// makes the flow the derivative of the reflecting step map and keeps the
// decay bound exact); TerminalOnly composes it at the endpoint index alone.
enum class ProjectionVariant { EveryEvent, TerminalOnly };

// rank-one projector in frame coordinates along the frame reading of a unit
// normal; requires the normal to have unit metric length at p
Mat boundary_projection(const ManifoldModel& m, const Vec& p, const Mat& frame,
                        const Vec& unit_normal);

// convenience: projector at a boundary grid point of a sampled path
Mat boundary_projection_at(const ManifoldModel& m, const PathSample& path,
                           int k);

// one-step decay factor of the damping flow,
//   D = Id - ric(p_k) dt - sff(p_{k+1}) dl_{k+1},
// in frame coordinates; the shape-operator term is active on reflection steps
void damping_step_factor(const ManifoldModel& m, const PathSample& path,
                         int k, Mat& D);

// v <- (Id - P_k) v for the boundary grid point at index k
void project_out_normal(const ManifoldModel& m, const PathSample& path, int k,
                        Vec& v);

struct QProcess {
  int base = 0;
  std::vector<Mat> q;  // q[k - base] = Q_{base,k}
  const Mat& at(int k) const { return q[size_t(k - base)]; }
  int last_index() const { return base + int(q.size()) - 1; }
};

// Damping flow along a path from a base index:
//   Q_{s,k+1} = Q_{s,k} (Id - ric(p_k) dt - sff(p_{k+1}) dl_{k+1}) (Id - P_{k+1})
// with curvature read in frame coordinates, the shape-operator term active
// only on reflection steps, and Id - P present per the variant; entries carry
// the projector at their own index in both variants, so Q_{s,k} P_k = 0 on
// the boundary.
QProcess q_evolve(const ManifoldModel& m, const PathSample& path, int base,
                  ProjectionVariant variant = ProjectionVariant::EveryEvent);

// max over k >= base of ||Q_{base,k}||_op exp(K2 (t_k - t_base) +
// sigma2 (l_k - l_base)); the decay bound says this stays near or below 1
double q_norm_ratio(const ManifoldModel& m, const PathSample& path, int base,
                    double K2, double sigma2,
                    ProjectionVariant variant = ProjectionVariant::EveryEvent);

enum class GradientFlavor { Malliavin, Damped };

// one d-vector per grid index; zero at and after the last evaluation time
struct GradientField {
  GradientFlavor flavor = GradientFlavor::Malliavin;
  std::vector<Vec> g;

  void ensure(int n_entries, int d);
};

// g[k] = sum over evaluation indices m_i > k of (Id - P_{m_i}) applied to the
// frame gradient of the i-th argument
void malliavin_gradient_into(const ManifoldModel& m, const PathSample& path,
                             const CylinderPointwise& F,
                             const std::vector<int>& idx, GradientField& out);
GradientField malliavin_gradient(const ManifoldModel& m,
                                 const PathSample& path,
                                 const CylinderPointwise& F,
                                 const std::vector<int>& idx);

// g[k] = sum over m_i > k of Q_{k,m_i} applied to the frame gradients
void damped_gradient_into(const ManifoldModel& m, const PathSample& path,
                          const CylinderPointwise& F,
                          const std::vector<int>& idx,
                          ProjectionVariant variant, GradientField& out);
GradientField damped_gradient(const ManifoldModel& m, const PathSample& path,
                              const CylinderPointwise& F,
                              const std::vector<int>& idx,
                              ProjectionVariant variant =
                                  ProjectionVariant::EveryEvent);

// Residual of the damping identity
//   damped_k = malliavin_k - sum_{j>k} [ Q_{k,j} ric_j malliavin_j dt
//                                        + Q_{k,j-} sff_j malliavin_{j-1} dl_j ]
// maximized over grid indices. The local-time part uses the left-limit
// (predictable) convention for both Q and the gradient, the standard reading
// of an integral against a jump measure; Q inside is the TerminalOnly flow,
// whose product structure the identity telescopes through.
double check_identity_2_4(const ManifoldModel& m, const PathSample& path,
                          const CylinderPointwise& F,
                          const std::vector<int>& idx);

}  // namespace pathspace
