#ifndef RDSM_CHART_HPP
#define RDSM_CHART_HPP

#include "rdsm/edge_set.hpp"
#include "rdsm/molecule.hpp"

#include <Eigen/Core>

namespace rdsm {

/// Parameters of the per-pair internal coordinate
///   q(d) = exp(-alpha (d/R - 1)) + beta R / d,    R = R_i + R_j.
/// alpha = 1.7 and beta = 0.01 follow the geodesic-interpolation defaults.
/// mass_weighted toggles the sqrt(m) scaling of the Cartesian chart (on by
/// default; off is an ablation switch). Units: lengths in Angstrom, masses in
/// unified atomic mass units, so mass-weighted coordinates are A*sqrt(u).
struct ChartParams {
    double alpha = 1.7;
    double beta = 0.01;
    bool mass_weighted = true;
};

/// Pair distance below which the chart is considered degenerate. q and its
/// derivatives blow up as d -> 0, so this is an error, never a clamp.
constexpr double kDegenerateDistance = 1e-8;

/// Per-edge gradients dq^e/dx over (mass-weighted) Cartesian coordinates.
/// Row e is nonzero only in the six entries of its two atoms.
struct Jacobian {
    Eigen::MatrixXd rows;            // |E| x 3N
    bool mass_weighted = true;

    int n_edges() const { return static_cast<int>(rows.rows()); }
    int n_coords() const { return static_cast<int>(rows.cols()); }
};

/// A velocity in (mass-weighted) Cartesian coordinates attached to a base
/// geometry. Manifold operations construct these with the rigid-motion
/// component already projected out; see project_out_rigid_motion.
struct TangentVector {
    Eigen::VectorXd components;      // 3N, mass-weighted coordinates
    Molecule base;
};

/// Scalar q for one pair. d and R_sum in Angstrom; throws
/// DegenerateGeometryError for d below the degeneracy threshold.
double q_of_distance(double d, double r_sum, double alpha, double beta);

/// First and second derivatives of q with respect to d.
double dq_of_distance(double d, double r_sum, double alpha, double beta);
double d2q_of_distance(double d, double r_sum, double alpha, double beta);

/// q values for every edge, in EdgeSet order.
Eigen::VectorXd q_coords(const Molecule& mol, const EdgeSet& edges,
                         const ChartParams& params = {});

/// Analytic chart Jacobian. Row e = (i,j):
///   dq^e/dr_i = q'(d) (r_i - r_j)/d, atom blocks divided by sqrt(m) when
/// mass weighting is on.
Jacobian jacobian(const Molecule& mol, const EdgeSet& edges, const ChartParams& params = {});

/// Pullback metric g = J^T J (3N x 3N, symmetric PSD).
Eigen::MatrixXd metric(const Jacobian& jac);

/// ||J v||_2, identically sqrt(v^T g v).
double g_norm(const Jacobian& jac, const Eigen::VectorXd& v);

/// Per-edge quadratic form H^e(v, v) = v^T (grad^2 q^e) v for the geodesic
/// equation; v in the same (mass-weighted) coordinates as the Jacobian.
Eigen::VectorXd hessian_contraction(const Molecule& mol, const EdgeSet& edges,
                                    const Eigen::VectorXd& v, const ChartParams& params = {});

/// sqrt(m_i) per atom (all ones when mass weighting is off).
Eigen::VectorXd sqrt_masses(const Molecule& mol, const ChartParams& params);

/// Positions -> flat (mass-weighted) coordinate vector and back.
Eigen::VectorXd to_coords(const Molecule& mol, const ChartParams& params);
Eigen::Matrix<double, Eigen::Dynamic, 3> coords_to_positions(const Eigen::VectorXd& x,
                                                             const Molecule& like,
                                                             const ChartParams& params);

/// Orthonormal basis of the rigid-motion generators (translations and
/// infinitesimal rotations about the centroid) in mass-weighted coordinates.
/// 3N x m with m <= 6 (5 for collinear geometries).
Eigen::MatrixXd rigid_motion_basis(const Molecule& mol, const ChartParams& params);

/// Remove the rigid-motion component of v. Manifold-path constructors use
/// this to maintain the tangent-space invariant.
Eigen::VectorXd project_out_rigid_motion(const Molecule& mol, const Eigen::VectorXd& v,
                                         const ChartParams& params);

/// Throws DegenerateGeometryError when any pair distance is below the
/// degeneracy threshold.
void check_not_degenerate(const Molecule& mol);

} // namespace rdsm

#endif
