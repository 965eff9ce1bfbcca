#include "rdsm/align.hpp"

#include "rdsm/errors.hpp"

#include <Eigen/Dense>

namespace rdsm {

Eigen::Matrix<double, Eigen::Dynamic, 3>
RigidTransform::apply(const Eigen::Matrix<double, Eigen::Dynamic, 3>& pos) const {
    Eigen::Matrix<double, Eigen::Dynamic, 3> out(pos.rows(), 3);
    for (Eigen::Index i = 0; i < pos.rows(); ++i)
        out.row(i) =
            (rotation * (pos.row(i).transpose() - pivot) + offset).transpose();
    return out;
}

RigidTransform kabsch_fit(const Eigen::Matrix<double, Eigen::Dynamic, 3>& moving,
                          const Eigen::Matrix<double, Eigen::Dynamic, 3>& target) {
    if (moving.rows() != target.rows() || moving.rows() < 1)
        throw Error("kabsch_fit: point count mismatch");

    const Eigen::Vector3d cm = moving.colwise().mean().transpose();
    const Eigen::Vector3d ct = target.colwise().mean().transpose();

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (Eigen::Index i = 0; i < moving.rows(); ++i)
        cov += (moving.row(i).transpose() - cm) * (target.row(i) - ct.transpose());

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    // Proper rotations only: flip the smallest singular direction when the
    // optimum would be a reflection.
    d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;

    RigidTransform t;
    t.rotation = svd.matrixV() * d * svd.matrixU().transpose();
    t.pivot = cm;
    t.offset = ct;
    return t;
}

Molecule align_onto(const Molecule& mol, const Molecule& target) {
    if (mol.size() != target.size()) throw Error("align_onto: atom count mismatch");
    const RigidTransform t = kabsch_fit(mol.positions(), target.positions());
    return mol.with_positions(t.apply(mol.positions()));
}

} // namespace rdsm
