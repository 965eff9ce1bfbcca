#ifndef RDSM_GEOMETRY_HPP
#define RDSM_GEOMETRY_HPP

#include "rdsm/chart.hpp"
#include "rdsm/edge_set.hpp"
#include "rdsm/molecule.hpp"

#include <Eigen/Core>

#include <random>
#include <vector>

namespace rdsm {

/// Knobs for the manifold primitives. Defaults give the desk-scale accuracy
/// targets: exp/log self-consistency to 1e-3 relative, endpoint rmsd 1e-4 A.
struct GeometryOptions {
    ChartParams chart;
    EdgePolicy edge_policy;
    int exp_steps = 32;        // RK4 steps over unit time
    int n_images = 20;         // discrete geodesic images (incl. endpoints)
    int path_max_iter = 400;   // gradient-descent iterations for the path
    double path_tol = 1e-6;    // relative per-iteration length decrease
    int shoot_max_iter = 50;   // Gauss-Newton iterations for log_map
    double shoot_tol = 1e-4;   // endpoint rmsd (A) declaring convergence
    double frame_tol = 1e-8;   // relative singular-value cutoff
    // Integration failure threshold on ||x'||_g drift. Geodesics conserve
    // speed, so large drift means the step size cannot resolve the
    // trajectory. Shooting navigates with a lenient copy and re-verifies
    // its answer at this strict value.
    double speed_drift_tolerance = 0.05;
};

/// g-orthonormal tangent basis at a geometry: thin SVD of J, right singular
/// vectors above the rank tolerance rescaled by 1/s_a so g(V_a, V_a) = 1.
struct OrthonormalFrame {
    Eigen::MatrixXd basis;           // 3N x k
    Eigen::VectorXd singular_values; // k, descending
    double rank_tolerance = 0.0;     // absolute cutoff actually applied

    int rank() const { return static_cast<int>(basis.cols()); }
};

/// Discrete geodesic between two structures. Endpoints are the inputs
/// (second one rigid-aligned to the first); length is the sum of q-space
/// segment lengths.
struct GeodesicPath {
    std::vector<Molecule> images;
    bool converged = false;
    double path_length = 0.0;
};

struct ExpDiagnostics {
    double speed_drift = 0.0;       // max relative |speed - speed_0| / speed_0
    double min_pair_distance = 0.0; // over all integration stages
};

OrthonormalFrame tangent_frame(const Jacobian& jac, double tol = 1e-8);

/// v = sigma * sum_a xi_a V_a with xi ~ N(0, I); isotropic in g, so
/// E[||v||_g^2] = sigma^2 k. The sample lies in the row space of J.
TangentVector sample_isotropic_tangent(const Molecule& base, const OrthonormalFrame& frame,
                                       double sigma, std::mt19937_64& rng);

/// Geodesic exponential: integrate x'' = -g^+ J^T H(x', x') from (x, v) over
/// unit time with classical RK4, re-projecting the velocity onto the row
/// space of J after every step. The result is Kabsch-aligned to x. Throws
/// IntegrationError when the geometry degenerates mid-integration.
Molecule exp_map(const Molecule& x, const TangentVector& v, const GeometryOptions& opts = {},
                 ExpDiagnostics* diag = nullptr);

/// Geodesic logarithm by Gauss-Newton shooting on the endpoint mismatch,
/// initialized from the discrete geodesic path (or from initial_guess when
/// the caller already knows an approximate tangent). Returns v with
/// exp_x(v) matching y to rmsd <= opts.shoot_tol. Throws ShootingError with
/// the best residual on non-convergence.
TangentVector log_map(const Molecule& x, const Molecule& y, const GeometryOptions& opts = {},
                      const Eigen::VectorXd* initial_guess = nullptr);

/// Interior images start as Cartesian linear interpolation and descend the
/// discrete path energy sum ||q(n+1) - q(n)||^2 with backtracking line
/// search. Non-convergence is reported through the flag, not thrown.
GeodesicPath geodesic_path(const Molecule& x, const Molecule& y, const GeometryOptions& opts = {});

/// Sum of q-space segment lengths of an (ideally converged) path.
double geodesic_distance(const GeodesicPath& path);

/// Convenience: optimize a path and return its length.
double geodesic_distance(const Molecule& x, const Molecule& y, const GeometryOptions& opts = {});

} // namespace rdsm

#endif
