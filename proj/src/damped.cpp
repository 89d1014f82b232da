#include "pathspace/damped.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace pathspace {

Mat boundary_projection(const ManifoldModel& m, const Vec& p, const Mat& frame,
                        const Vec& unit_normal) {
  if (!on_boundary(m, p))
    throw std::invalid_argument("projector requested off the boundary");
  Vec nf = frame_coords(m, p, frame, unit_normal);
  if (std::abs(nf.squaredNorm() - 1.0) > 1e-6)
    throw std::invalid_argument("normal is not unit length in the metric");
  return nf * nf.transpose();
}

Mat boundary_projection_at(const ManifoldModel& m, const PathSample& path,
                           int k) {
  return boundary_projection(m, path.points[k], path.frames[k],
                             inward_normal(m, path.points[k]));
}

void damping_step_factor(const ManifoldModel& m, const PathSample& path,
                         int k, Mat& D) {
  const int d = m.dim;
  D = Mat::Identity(d, d);
  D -= path.dt * ric_z_frame(m, path.points[k], path.frames[k]);
  if (path.dl[k + 1] > 0)
    D -= path.dl[k + 1] * second_fundamental_form_frame(
                              m, path.points[k + 1], path.frames[k + 1]);
}

void project_out_normal(const ManifoldModel& m, const PathSample& path, int k,
                        Vec& v) {
  Vec nf = frame_coords(m, path.points[k], path.frames[k],
                        inward_normal(m, path.points[k]));
  v -= nf.dot(v) * nf;
}

QProcess q_evolve(const ManifoldModel& m, const PathSample& path, int base,
                  ProjectionVariant variant) {
  const int n = path.n_steps, d = m.dim;
  if (base < 0 || base > n) throw std::out_of_range("q_evolve base index");
  QProcess out;
  out.base = base;
  out.q.resize(size_t(n - base + 1));

  Mat cur = Mat::Identity(d, d);
  if (path.on_bd[base]) {
    // right continuity: the flow starts already projected
    Mat P = boundary_projection_at(m, path, base);
    cur -= cur * P;
  }
  out.q[0] = cur;

  Mat D(d, d), plain(d, d);
  plain = cur;  // same flow without interior projectors
  for (int k = base; k < n; ++k) {
    damping_step_factor(m, path, k, D);
    plain = plain * D;
    if (variant == ProjectionVariant::EveryEvent) {
      cur = cur * D;
      if (path.on_bd[k + 1]) {
        Mat P = boundary_projection_at(m, path, k + 1);
        cur -= cur * P;
      }
      out.q[size_t(k + 1 - base)] = cur;
    } else {
      // TerminalOnly: each entry ends with its own projector, interior
      // indices of the product stay unprojected
      if (path.on_bd[k + 1]) {
        Mat P = boundary_projection_at(m, path, k + 1);
        out.q[size_t(k + 1 - base)] = plain - plain * P;
      } else {
        out.q[size_t(k + 1 - base)] = plain;
      }
    }
  }
  return out;
}

double q_norm_ratio(const ManifoldModel& m, const PathSample& path, int base,
                    double K2, double sigma2, ProjectionVariant variant) {
  QProcess qp = q_evolve(m, path, base, variant);
  double worst = 0;
  for (int k = base; k <= path.n_steps; ++k) {
    double nrm =
        qp.at(k).jacobiSvd().singularValues().coeff(0);
    double bound = std::exp(-K2 * (k - base) * path.dt -
                            sigma2 * (path.l[k] - path.l[base]));
    worst = std::max(worst, nrm / bound);
  }
  return worst;
}

void GradientField::ensure(int n_entries, int d) {
  if (int(g.size()) == n_entries && n_entries > 0 && g[0].size() == d) {
    for (Vec& v : g) v.setZero();
    return;
  }
  g.assign(size_t(n_entries), Vec::Zero(d));
}

namespace {

// frame gradients of the hinge arguments, with the boundary projector folded
// in at boundary hinge points
void hinge_gradients(const ManifoldModel& m, const PathSample& path,
                     const CylinderPointwise& F, const std::vector<int>& idx,
                     std::vector<Vec>& out) {
  std::vector<Vec> pts(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) pts[i] = path.points[idx[i]];
  std::vector<Vec> chart_grads;
  F.gradient(pts, chart_grads);
  out.resize(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    out[i] = frame_coords_gradient(path.frames[idx[i]], chart_grads[i]);
    if (path.on_bd[idx[i]]) project_out_normal(m, path, idx[i], out[i]);
  }
}

}  // namespace

void malliavin_gradient_into(const ManifoldModel& m, const PathSample& path,
                             const CylinderPointwise& F,
                             const std::vector<int>& idx, GradientField& out) {
  const int n = path.n_steps, d = m.dim;
  out.flavor = GradientFlavor::Malliavin;
  out.ensure(n + 1, d);
  std::vector<Vec> hg;
  hinge_gradients(m, path, F, idx, hg);

  Vec acc = Vec::Zero(d);
  int next_hinge = int(idx.size()) - 1;
  for (int k = n - 1; k >= 0; --k) {
    while (next_hinge >= 0 && idx[size_t(next_hinge)] == k + 1)
      acc += hg[size_t(next_hinge--)];
    out.g[size_t(k)] = acc;
  }
}

GradientField malliavin_gradient(const ManifoldModel& m,
                                 const PathSample& path,
                                 const CylinderPointwise& F,
                                 const std::vector<int>& idx) {
  GradientField out;
  malliavin_gradient_into(m, path, F, idx, out);
  return out;
}

void damped_gradient_into(const ManifoldModel& m, const PathSample& path,
                          const CylinderPointwise& F,
                          const std::vector<int>& idx,
                          ProjectionVariant variant, GradientField& out) {
  const int n = path.n_steps, d = m.dim;
  out.flavor = GradientFlavor::Damped;
  out.ensure(n + 1, d);
  std::vector<Vec> hg;
  hinge_gradients(m, path, F, idx, hg);

  // backward product recursion: R_k = [Id - P_k] D_k (hinge_{k+1} + R_{k+1}).
  // In the EveryEvent flow the projector is part of the carried product; in
  // the TerminalOnly flow the interior product stays unprojected and only the
  // reported value picks up its own base projector, matching q_evolve.
  Vec acc = Vec::Zero(d), tmp(d);
  Mat D(d, d);
  int next_hinge = int(idx.size()) - 1;
  for (int k = n - 1; k >= 0; --k) {
    while (next_hinge >= 0 && idx[size_t(next_hinge)] == k + 1)
      acc += hg[size_t(next_hinge--)];
    damping_step_factor(m, path, k, D);
    tmp.noalias() = D * acc;
    acc = tmp;
    if (path.on_bd[k]) {
      if (variant == ProjectionVariant::EveryEvent) {
        project_out_normal(m, path, k, acc);
      } else {
        tmp = acc;
        project_out_normal(m, path, k, tmp);
        out.g[size_t(k)] = tmp;
        continue;
      }
    }
    out.g[size_t(k)] = acc;
  }
}

GradientField damped_gradient(const ManifoldModel& m, const PathSample& path,
                              const CylinderPointwise& F,
                              const std::vector<int>& idx,
                              ProjectionVariant variant) {
  GradientField out;
  damped_gradient_into(m, path, F, idx, variant, out);
  return out;
}

double check_identity_2_4(const ManifoldModel& m, const PathSample& path,
                          const CylinderPointwise& F,
                          const std::vector<int>& idx) {
  const int n = path.n_steps, d = m.dim;
  GradientField mal, dam;
  malliavin_gradient_into(m, path, F, idx, mal);
  damped_gradient_into(m, path, F, idx, ProjectionVariant::TerminalOnly, dam);

  // sum_k = sum_{j>k} [ Q_{k,j} ric_j mal_j dt + Q_{k,j-} sff_j mal_{j-1} dl_j ]
  // computed backward through sum_k = D_k (sum_{k+1} + proj ric mal dt)_{k+1}
  //                                   + sff_{k+1} mal_k dl_{k+1}
  double worst = 0;
  Vec sum = Vec::Zero(d), carry = Vec::Zero(d), tmp(d);
  Mat D(d, d);
  for (int k = n - 1; k >= 0; --k) {
    damping_step_factor(m, path, k, D);
    carry = sum;
    tmp.noalias() = path.dt * (ric_z_frame(m, path.points[k + 1],
                                           path.frames[k + 1]) *
                               mal.g[size_t(k + 1)]);
    if (path.on_bd[k + 1]) project_out_normal(m, path, k + 1, tmp);
    carry += tmp;
    sum.noalias() = D * carry;
    if (path.dl[k + 1] > 0)
      sum += path.dl[k + 1] *
             (second_fundamental_form_frame(m, path.points[k + 1],
                                            path.frames[k + 1]) *
              mal.g[size_t(k)]);
    // boundary grid points carry the flow's own base projector, which the
    // plain difference of fields does not telescope through; skip them
    if (path.on_bd[k]) continue;
    double res = (dam.g[size_t(k)] - mal.g[size_t(k)] + sum).norm();
    worst = std::max(worst, res);
  }
  return worst;
}

}  // namespace pathspace
