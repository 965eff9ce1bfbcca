#include "rdsm/chart.hpp"

#include "rdsm/elements.hpp"
#include "rdsm/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace rdsm {

double q_of_distance(double d, double r_sum, double alpha, double beta) {
    if (d <= 0.0) throw DegenerateGeometryError("q_of_distance: nonpositive distance");
    if (d < kDegenerateDistance)
        throw DegenerateGeometryError("q_of_distance: pair distance " + std::to_string(d) +
                                      " A below degeneracy threshold");
    const double r = d / r_sum;
    return std::exp(-alpha * (r - 1.0)) + beta * r_sum / d;
}

double dq_of_distance(double d, double r_sum, double alpha, double beta) {
    const double r = d / r_sum;
    return -(alpha / r_sum) * std::exp(-alpha * (r - 1.0)) - beta * r_sum / (d * d);
}

double d2q_of_distance(double d, double r_sum, double alpha, double beta) {
    const double r = d / r_sum;
    const double a_over_r = alpha / r_sum;
    return a_over_r * a_over_r * std::exp(-alpha * (r - 1.0)) + 2.0 * beta * r_sum / (d * d * d);
}

void check_not_degenerate(const Molecule& mol) {
    for (int i = 0; i < mol.size(); ++i)
        for (int j = i + 1; j < mol.size(); ++j)
            if (mol.distance(i, j) < kDegenerateDistance)
                throw DegenerateGeometryError("coincident atoms " + std::to_string(i) + "," +
                                              std::to_string(j) + " (distance " +
                                              std::to_string(mol.distance(i, j)) + " A)");
}

Eigen::VectorXd sqrt_masses(const Molecule& mol, const ChartParams& params) {
    if (!params.mass_weighted) return Eigen::VectorXd::Ones(mol.size());
    return mol.masses().array().sqrt().matrix();
}

Eigen::VectorXd to_coords(const Molecule& mol, const ChartParams& params) {
    const Eigen::VectorXd sm = sqrt_masses(mol, params);
    Eigen::VectorXd x(3 * mol.size());
    for (int i = 0; i < mol.size(); ++i)
        x.segment<3>(3 * i) = sm[i] * mol.positions().row(i).transpose();
    return x;
}

Eigen::Matrix<double, Eigen::Dynamic, 3> coords_to_positions(const Eigen::VectorXd& x,
                                                             const Molecule& like,
                                                             const ChartParams& params) {
    const Eigen::VectorXd sm = sqrt_masses(like, params);
    Eigen::Matrix<double, Eigen::Dynamic, 3> pos(like.size(), 3);
    for (int i = 0; i < like.size(); ++i)
        pos.row(i) = (x.segment<3>(3 * i) / sm[i]).transpose();
    return pos;
}

Eigen::VectorXd q_coords(const Molecule& mol, const EdgeSet& edges, const ChartParams& params) {
    Eigen::VectorXd q(edges.size());
    for (int e = 0; e < edges.size(); ++e) {
        const auto [i, j] = edges.edges[static_cast<std::size_t>(e)];
        const double r_sum = covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(i)]) +
                             covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(j)]);
        q[e] = q_of_distance(mol.distance(i, j), r_sum, params.alpha, params.beta);
    }
    return q;
}

Jacobian jacobian(const Molecule& mol, const EdgeSet& edges, const ChartParams& params) {
    const int n = mol.size();
    const Eigen::VectorXd sm = sqrt_masses(mol, params);

    Jacobian jac;
    jac.mass_weighted = params.mass_weighted;
    jac.rows = Eigen::MatrixXd::Zero(edges.size(), 3 * n);

    for (int e = 0; e < edges.size(); ++e) {
        const auto [i, j] = edges.edges[static_cast<std::size_t>(e)];
        const Eigen::Vector3d diff = mol.position(i) - mol.position(j);
        const double d = diff.norm();
        if (d < kDegenerateDistance)
            throw DegenerateGeometryError("jacobian: coincident atoms " + std::to_string(i) +
                                          "," + std::to_string(j));
        const double r_sum = covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(i)]) +
                             covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(j)]);
        const Eigen::Vector3d grad_i = dq_of_distance(d, r_sum, params.alpha, params.beta) * diff / d;
        jac.rows.block<1, 3>(e, 3 * i) = (grad_i / sm[i]).transpose();
        jac.rows.block<1, 3>(e, 3 * j) = (-grad_i / sm[j]).transpose();
    }
    return jac;
}

Eigen::MatrixXd metric(const Jacobian& jac) { return jac.rows.transpose() * jac.rows; }

double g_norm(const Jacobian& jac, const Eigen::VectorXd& v) { return (jac.rows * v).norm(); }

Eigen::VectorXd hessian_contraction(const Molecule& mol, const EdgeSet& edges,
                                    const Eigen::VectorXd& v, const ChartParams& params) {
    const Eigen::VectorXd sm = sqrt_masses(mol, params);
    Eigen::VectorXd h(edges.size());

    // For q = q(d(r_i, r_j)) the Hessian splits into a radial part q'' n n^T
    // and a transverse part (q'/d)(I - n n^T), acting on the Cartesian
    // difference of the two atom velocities. Mass weighting folds into that
    // difference: w = v_i/sqrt(m_i) - v_j/sqrt(m_j).
    for (int e = 0; e < edges.size(); ++e) {
        const auto [i, j] = edges.edges[static_cast<std::size_t>(e)];
        const Eigen::Vector3d diff = mol.position(i) - mol.position(j);
        const double d = diff.norm();
        if (d < kDegenerateDistance)
            throw DegenerateGeometryError("hessian_contraction: coincident atoms " +
                                          std::to_string(i) + "," + std::to_string(j));
        const Eigen::Vector3d n = diff / d;
        const Eigen::Vector3d w =
            v.segment<3>(3 * i) / sm[i] - v.segment<3>(3 * j) / sm[j];
        const double r_sum = covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(i)]) +
                             covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(j)]);
        const double radial = n.dot(w);
        const double transverse2 = w.squaredNorm() - radial * radial;
        h[e] = d2q_of_distance(d, r_sum, params.alpha, params.beta) * radial * radial +
               dq_of_distance(d, r_sum, params.alpha, params.beta) / d * transverse2;
    }
    return h;
}

Eigen::MatrixXd rigid_motion_basis(const Molecule& mol, const ChartParams& params) {
    const int n = mol.size();
    const Eigen::VectorXd sm = sqrt_masses(mol, params);
    const Eigen::Vector3d centroid = mol.positions().colwise().mean().transpose();

    Eigen::MatrixXd gen(3 * n, 6);
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d axis = Eigen::Vector3d::Zero();
        axis[k] = 1.0;
        for (int i = 0; i < n; ++i) {
            gen.block<3, 1>(3 * i, k) = sm[i] * axis;
            gen.block<3, 1>(3 * i, 3 + k) = sm[i] * axis.cross(mol.position(i) - centroid);
        }
    }

    // Orthonormalize with rank truncation; collinear geometries lose the
    // rotation about the molecular axis.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gen, Eigen::ComputeThinU);
    const double tol = 1e-10 * svd.singularValues()[0];
    int rank = 0;
    for (int a = 0; a < svd.singularValues().size(); ++a)
        if (svd.singularValues()[a] > tol) ++rank;
    return svd.matrixU().leftCols(rank);
}

Eigen::VectorXd project_out_rigid_motion(const Molecule& mol, const Eigen::VectorXd& v,
                                         const ChartParams& params) {
    const Eigen::MatrixXd basis = rigid_motion_basis(mol, params);
    return v - basis * (basis.transpose() * v);
}

} // namespace rdsm
