#include "rdsm/geometry.hpp"

#include "rdsm/align.hpp"
#include "rdsm/errors.hpp"
#include "rdsm/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>

namespace rdsm {
namespace {

double plain_rmsd(const Molecule& a, const Molecule& b) {
    return std::sqrt((a.positions() - b.positions()).squaredNorm() /
                     static_cast<double>(a.size()));
}

// Chart data at one geometry: Jacobian plus a rank-revealing decomposition
// giving the pseudoinverse action (threshold 1e-8 relative, matching the
// rank-truncated SVD pseudoinverse at that tolerance).
struct ChartEval {
    Molecule mol;
    Jacobian jac;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;

    ChartEval(Molecule m, const EdgeSet& edges, const ChartParams& chart, int step)
        : mol(std::move(m)) {
        if (mol.min_pair_distance() < kDegenerateDistance)
            throw IntegrationError("geometry degenerated during integration", step);
        jac = jacobian(mol, edges, chart);
        cod.setThreshold(1e-8);
        cod.compute(jac.rows);
    }

    int rank() const { return static_cast<int>(cod.rank()); }

    // Minimum-norm least-squares solve J z = rhs, i.e. z = J^+ rhs.
    Eigen::VectorXd pinv_apply(const Eigen::VectorXd& rhs) const { return cod.solve(rhs); }

    // Orthogonal projection onto the row space of J.
    Eigen::VectorXd project_row_space(const Eigen::VectorXd& v) const {
        return cod.solve(jac.rows * v);
    }

    // Geodesic acceleration, -g^+ J^T H(v, v) = -J^+ H(v, v).
    Eigen::VectorXd acceleration(const Eigen::VectorXd& v, const EdgeSet& edges,
                                 const ChartParams& chart) const {
        return -pinv_apply(hessian_contraction(mol, edges, v, chart));
    }
};

} // namespace

OrthonormalFrame tangent_frame(const Jacobian& jac, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac.rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] <= 0.0)
        throw Error("tangent_frame: zero-rank Jacobian");

    const double cutoff = tol * sv[0];
    int rank = 0;
    while (rank < sv.size() && sv[rank] > cutoff) ++rank;
    if (rank == 0) throw Error("tangent_frame: zero-rank Jacobian");

    OrthonormalFrame frame;
    frame.rank_tolerance = cutoff;
    frame.singular_values = sv.head(rank);
    frame.basis.resize(jac.rows.cols(), rank);
    for (int a = 0; a < rank; ++a) {
        Eigen::VectorXd col = svd.matrixV().col(a) / sv[a];
        // Deterministic sign: largest-magnitude component positive.
        int imax = 0;
        col.cwiseAbs().maxCoeff(&imax);
        if (col[imax] < 0) col = -col;
        frame.basis.col(a) = col;
    }
    return frame;
}

TangentVector sample_isotropic_tangent(const Molecule& base, const OrthonormalFrame& frame,
                                       double sigma, std::mt19937_64& rng) {
    if (sigma <= 0.0) throw Error("sample_isotropic_tangent: sigma must be positive");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(frame.basis.rows());
    for (int a = 0; a < frame.rank(); ++a) v += standard_normal(rng) * frame.basis.col(a);
    return TangentVector{sigma * v, base};
}

Molecule exp_map(const Molecule& x, const TangentVector& v, const GeometryOptions& opts,
                 ExpDiagnostics* diag) {
    check_not_degenerate(x);
    const EdgeSet edges = build_edge_set(x, opts.edge_policy);
    const ChartParams& chart = opts.chart;
    const int n_steps = opts.exp_steps;
    const double h = 1.0 / n_steps;

    Eigen::VectorXd xc = to_coords(x, chart);
    ChartEval eval(x, edges, chart, 0);
    Eigen::VectorXd vc = eval.project_row_space(v.components);

    const int base_rank = eval.rank();
    const double speed0 = (eval.jac.rows * vc).norm();
    double max_drift = 0.0;
    double min_dist = x.min_pair_distance();

    // The immersion is singular where the chart loses rank (e.g. collinear
    // triatomics); the acceleration blows up there and a fixed-step scheme
    // cannot follow. Fail fast instead of producing garbage: catch outright
    // teleports through the acceleration cap and unresolved stiffness through
    // per-step speed conservation (geodesics keep ||x'||_g constant).
    const double accel_cap = 1e4 * (speed0 + 0.1) / h;

    auto make_eval = [&](const Eigen::VectorXd& coords, int step) {
        if (!coords.allFinite())
            throw IntegrationError("non-finite coordinates during integration", step);
        ChartEval e(x.with_positions(coords_to_positions(coords, x, chart)), edges, chart, step);
        if (e.rank() < base_rank)
            throw IntegrationError("chart rank collapse during integration", step);
        return e;
    };
    auto check_stiff = [&](const Eigen::VectorXd& a, int step) {
        if (!a.allFinite() || a.norm() > accel_cap)
            throw IntegrationError("geodesic too stiff for the step size", step);
    };

    for (int step = 0; step < n_steps; ++step) {
        // Classical RK4 on the first-order system (x' = v, v' = a(x, v)).
        const Eigen::VectorXd a1 = eval.acceleration(vc, edges, chart);
        check_stiff(a1, step);

        ChartEval e2 = make_eval(xc + 0.5 * h * vc, step);
        const Eigen::VectorXd v2 = vc + 0.5 * h * a1;
        const Eigen::VectorXd a2 = e2.acceleration(v2, edges, chart);
        check_stiff(a2, step);

        ChartEval e3 = make_eval(xc + 0.5 * h * v2, step);
        const Eigen::VectorXd v3 = vc + 0.5 * h * a2;
        const Eigen::VectorXd a3 = e3.acceleration(v3, edges, chart);
        check_stiff(a3, step);

        ChartEval e4 = make_eval(xc + h * v3, step);
        const Eigen::VectorXd v4 = vc + h * a3;
        const Eigen::VectorXd a4 = e4.acceleration(v4, edges, chart);
        check_stiff(a4, step);

        xc += (h / 6.0) * (vc + 2.0 * v2 + 2.0 * v3 + v4);
        vc += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);

        eval = make_eval(xc, step + 1);
        vc = eval.project_row_space(vc);

        min_dist = std::min(min_dist, eval.mol.min_pair_distance());
        if (speed0 > 0.0) {
            const double speed = (eval.jac.rows * vc).norm();
            const double drift = std::abs(speed - speed0) / speed0;
            if (drift > opts.speed_drift_tolerance)
                throw IntegrationError("speed conservation lost (unresolved stiffness)", step);
            max_drift = std::max(max_drift, drift);
        }
    }

    if (diag) {
        diag->speed_drift = max_drift;
        diag->min_pair_distance = min_dist;
    }
    return align_onto(eval.mol, x);
}

GeodesicPath geodesic_path(const Molecule& x, const Molecule& y, const GeometryOptions& opts) {
    if (!x.same_atoms(y)) throw Error("geodesic_path: atom mismatch");
    if (opts.n_images < 3) throw Error("geodesic_path: need n_images >= 3");
    check_not_degenerate(x);
    check_not_degenerate(y);

    const EdgeSet edges = build_edge_set(x, opts.edge_policy);
    // The path objective lives purely in q-space; image gradients use the
    // plain Cartesian chain rule.
    ChartParams cart = opts.chart;
    cart.mass_weighted = false;

    const Molecule y_aligned = align_onto(y, x);
    const int m = opts.n_images;
    const int n = x.size();

    std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> pos(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double s = static_cast<double>(k) / (m - 1);
        pos[static_cast<std::size_t>(k)] =
            (1.0 - s) * x.positions() + s * y_aligned.positions();
    }

    auto q_of = [&](const Eigen::Matrix<double, Eigen::Dynamic, 3>& p) {
        return q_coords(x.with_positions(p), edges, cart);
    };

    std::vector<Eigen::VectorXd> qs(static_cast<std::size_t>(m));
    auto recompute_q = [&]() {
        for (int k = 0; k < m; ++k) qs[static_cast<std::size_t>(k)] = q_of(pos[static_cast<std::size_t>(k)]);
    };

    auto energy = [&]() {
        double e = 0.0;
        for (int k = 0; k + 1 < m; ++k)
            e += (qs[static_cast<std::size_t>(k + 1)] - qs[static_cast<std::size_t>(k)]).squaredNorm();
        return e;
    };
    auto length = [&]() {
        double l = 0.0;
        for (int k = 0; k + 1 < m; ++k)
            l += (qs[static_cast<std::size_t>(k + 1)] - qs[static_cast<std::size_t>(k)]).norm();
        return l;
    };

    recompute_q();
    double len = length();
    bool converged = false;

    if (len < 1e-14) {
        converged = true; // identical endpoints
    } else {
        // Descent on the discrete path energy; the trial step uses the
        // Barzilai-Borwein secant estimate with a backtracking safeguard.
        const int interior = (m - 2) * 3 * n;
        Eigen::VectorXd prev_flat_grad, prev_flat_pos;
        double step = 1e-4;
        double e_cur = energy();

        for (int it = 0; it < opts.path_max_iter && !converged; ++it) {
            std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> grad(
                static_cast<std::size_t>(m), Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(n, 3));
            Eigen::VectorXd flat_grad(interior), flat_pos(interior);
            double grad_norm2 = 0.0;
            for (int k = 1; k + 1 < m; ++k) {
                const Molecule img = x.with_positions(pos[static_cast<std::size_t>(k)]);
                const Jacobian jk = jacobian(img, edges, cart);
                const Eigen::VectorXd dq = 2.0 * (2.0 * qs[static_cast<std::size_t>(k)] -
                                                  qs[static_cast<std::size_t>(k - 1)] -
                                                  qs[static_cast<std::size_t>(k + 1)]);
                const Eigen::VectorXd flat = jk.rows.transpose() * dq;
                for (int i = 0; i < n; ++i) {
                    grad[static_cast<std::size_t>(k)].row(i) = flat.segment<3>(3 * i).transpose();
                    flat_pos.segment<3>((k - 1) * 3 * n + 3 * i) =
                        pos[static_cast<std::size_t>(k)].row(i).transpose();
                }
                flat_grad.segment((k - 1) * 3 * n, 3 * n) = flat;
                grad_norm2 += flat.squaredNorm();
            }
            if (grad_norm2 < 1e-24) {
                converged = true;
                break;
            }
            if (it > 0) {
                const Eigen::VectorXd dx = flat_pos - prev_flat_pos;
                const Eigen::VectorXd dg = flat_grad - prev_flat_grad;
                const double denom = dx.dot(dg);
                if (denom > 1e-30) step = std::clamp(dx.squaredNorm() / denom, 1e-8, 1e2);
            }
            prev_flat_pos = flat_pos;
            prev_flat_grad = flat_grad;

            // Backtracking line search on the energy.
            bool accepted = false;
            for (int half = 0; half < 40; ++half) {
                std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> trial = pos;
                for (int k = 1; k + 1 < m; ++k)
                    trial[static_cast<std::size_t>(k)] -= step * grad[static_cast<std::size_t>(k)];
                bool valid = true;
                std::vector<Eigen::VectorXd> q_trial(static_cast<std::size_t>(m));
                for (int k = 0; k < m && valid; ++k) {
                    const Molecule img = x.with_positions(trial[static_cast<std::size_t>(k)]);
                    if (img.min_pair_distance() < kDegenerateDistance) {
                        valid = false;
                        break;
                    }
                    q_trial[static_cast<std::size_t>(k)] = q_of(trial[static_cast<std::size_t>(k)]);
                }
                if (valid) {
                    double e_trial = 0.0;
                    for (int k = 0; k + 1 < m; ++k)
                        e_trial += (q_trial[static_cast<std::size_t>(k + 1)] -
                                    q_trial[static_cast<std::size_t>(k)])
                                       .squaredNorm();
                    if (e_trial < e_cur) {
                        pos = std::move(trial);
                        qs = std::move(q_trial);
                        e_cur = e_trial;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted) break;

            const double new_len = length();
            if (len > 0.0 && (len - new_len) / len < opts.path_tol && new_len <= len) {
                converged = true;
            }
            len = new_len;
        }
    }

    GeodesicPath path;
    path.converged = converged;
    path.path_length = len;
    path.images.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        path.images.push_back(x.with_positions(pos[static_cast<std::size_t>(k)]));
    return path;
}

double geodesic_distance(const GeodesicPath& path) { return path.path_length; }

double geodesic_distance(const Molecule& x, const Molecule& y, const GeometryOptions& opts) {
    return geodesic_path(x, y, opts).path_length;
}

TangentVector log_map(const Molecule& x, const Molecule& y, const GeometryOptions& opts,
                      const Eigen::VectorXd* initial_guess) {
    if (!x.same_atoms(y)) throw Error("log_map: atom mismatch");
    check_not_degenerate(x);
    check_not_degenerate(y);

    const EdgeSet edges = build_edge_set(x, opts.edge_policy);
    const ChartParams& chart = opts.chart;
    const Molecule y_aligned = align_onto(y, x);

    ChartEval base_eval(x, edges, chart, 0);
    const OrthonormalFrame frame = tangent_frame(base_eval.jac, opts.frame_tol);
    const int k = frame.rank();

    // Identity shortcut: log_x(x) = 0.
    if (plain_rmsd(x, y_aligned) < 1e-12)
        return TangentVector{Eigen::VectorXd::Zero(3 * x.size()), x};

    // Shooting navigates with a lenient speed-drift guard so trial
    // trajectories near the integrable boundary still provide gradient
    // information; accepted answers are re-verified at the strict value.
    GeometryOptions nav_opts = opts;
    nav_opts.speed_drift_tolerance = std::max(0.5, opts.speed_drift_tolerance);
    auto endpoint = [&](const Eigen::VectorXd& tangent) {
        return exp_map(x, TangentVector{tangent, x}, nav_opts);
    };
    auto strictly_integrable = [&](const Eigen::VectorXd& tangent) {
        try {
            exp_map(x, TangentVector{tangent, x}, opts);
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    // Damped Gauss-Newton shooting toward one target. The endpoint criterion
    // is the contract tolerance, tightened proportionally for short tangents
    // so the recovered tangent is accurate relative to its own length.
    // Returns the best tangent found and its endpoint rmsd.
    auto shoot = [&](Eigen::VectorXd v, const Molecule& target,
                     double* achieved) -> Eigen::VectorXd {
        auto residual_of = [&](const Molecule& end) {
            const Molecule end_aligned = align_onto(end, target);
            return Eigen::VectorXd(to_coords(end_aligned, chart) - to_coords(target, chart));
        };

        // The guess may overshoot into a stiff or degenerate region; shrink
        // until the geodesic is integrable.
        Molecule end = x;
        bool ok = false;
        for (int shrink = 0; shrink < 8 && !ok; ++shrink) {
            try {
                end = endpoint(v);
                ok = true;
            } catch (const Error&) {
                v *= 0.5;
            }
        }
        if (!ok) {
            *achieved = std::numeric_limits<double>::infinity();
            return v;
        }

        const double v_norm0 = std::max((base_eval.jac.rows * v).norm(), 1e-6);
        const double tol_eff = std::min(opts.shoot_tol, std::max(5e-5 * v_norm0, 1e-9));

        Eigen::VectorXd r = residual_of(end);
        double rmsd = plain_rmsd(align_onto(end, target), target);
        double best_rmsd = rmsd;
        Eigen::VectorXd best_v = v;

        bool have_fd_jacobian = false;
        int fd_rebuilds = 0;
        Eigen::MatrixXd gn_jac; // 3N x k, d(residual)/d(frame coefficient)

        auto transport_jacobian = [&](const Molecule& at) {
            // First-order transport: express the base frame in the endpoint's
            // row space. Cheap and accurate for short geodesics.
            ChartEval e(at, edges, chart, 0);
            Eigen::MatrixXd t(3 * x.size(), k);
            for (int a = 0; a < k; ++a) t.col(a) = e.project_row_space(frame.basis.col(a));
            return t;
        };
        auto fd_jacobian = [&](const Eigen::VectorXd& around) {
            const Eigen::MatrixXd transported = transport_jacobian(end);
            const double h = 1e-4; // frame coefficients are g-normalized
            Eigen::MatrixXd t(3 * x.size(), k);
            for (int a = 0; a < k; ++a) {
                try {
                    const Eigen::VectorXd rp =
                        residual_of(endpoint(around + h * frame.basis.col(a)));
                    const Eigen::VectorXd rm =
                        residual_of(endpoint(around - h * frame.basis.col(a)));
                    t.col(a) = (rp - rm) / (2.0 * h);
                } catch (const Error&) {
                    t.col(a) = transported.col(a); // probe left the valid region
                }
            }
            return t;
        };

        int stalls = 0;
        double lambda = 1e-4;
        const double dc_cap = std::max(v_norm0, 0.5);
        for (int it = 0; it < opts.shoot_max_iter && rmsd > tol_eff; ++it) {
            if (!have_fd_jacobian) gn_jac = transport_jacobian(end);

            // Levenberg-Marquardt step on the endpoint residual; damping
            // keeps the solve sane near conjugate points where the shooting
            // Jacobian loses rank.
            const Eigen::MatrixXd jtj = gn_jac.transpose() * gn_jac;
            const Eigen::VectorXd jtr = gn_jac.transpose() * r;
            const double diag_scale = std::max(jtj.trace() / k, 1e-12);

            bool improved = false;
            for (int tries = 0; tries < 10; ++tries) {
                Eigen::MatrixXd damped = jtj;
                damped.diagonal().array() += lambda * diag_scale;
                Eigen::VectorXd dc = -damped.ldlt().solve(jtr);
                if (dc.norm() > dc_cap) dc *= dc_cap / dc.norm();

                const Eigen::VectorXd v_trial = v + frame.basis * dc;
                try {
                    Molecule end_trial = endpoint(v_trial);
                    const double rmsd_trial = plain_rmsd(align_onto(end_trial, target), target);
                    if (rmsd_trial < rmsd) {
                        v = v_trial;
                        end = std::move(end_trial);
                        r = residual_of(end);
                        const double prev = rmsd;
                        rmsd = rmsd_trial;
                        improved = true;
                        stalls = (rmsd > 0.9 * prev) ? stalls + 1 : 0;
                        lambda = std::max(lambda * 0.3, 1e-10);
                        break;
                    }
                } catch (const Error&) {
                    // degenerate or non-finite trial; damp harder
                }
                lambda = std::min(lambda * 8.0, 1e8);
            }
            if (rmsd < best_rmsd) {
                best_rmsd = rmsd;
                best_v = v;
            }
            if (!improved || stalls >= 2) {
                if (fd_rebuilds >= 4 && !improved) break;
                gn_jac = fd_jacobian(v);
                have_fd_jacobian = true;
                ++fd_rebuilds;
                stalls = 0;
            }
        }

        *achieved = best_rmsd;
        return best_v;
    };

    auto finish = [&](const Eigen::VectorXd& v) {
        return TangentVector{project_out_rigid_motion(x, v, chart), x};
    };

    // Direct attempt from the caller's hint when given.
    double achieved = std::numeric_limits<double>::infinity();
    if (initial_guess) {
        const Eigen::VectorXd v0 = base_eval.project_row_space(*initial_guess);
        const Eigen::VectorXd v = shoot(v0, y_aligned, &achieved);
        if (achieved <= opts.shoot_tol && strictly_integrable(v)) return finish(v);
    }

    // Path-based initialization: lift the first q-space segment through J
    // and rescale to the discrete path length.
    GeodesicPath path;
    std::vector<double> cum_len;
    try {
        path = geodesic_path(x, y_aligned, opts);
        cum_len.assign(path.images.size(), 0.0);
        for (std::size_t i = 1; i < path.images.size(); ++i)
            cum_len[i] = cum_len[i - 1] + (q_coords(path.images[i], edges, chart) -
                                           q_coords(path.images[i - 1], edges, chart))
                                              .norm();
    } catch (const DegenerateGeometryError&) {
        path.images.clear(); // interpolation crossed a degenerate region
    }

    auto lift_toward = [&](const Molecule& target, double length) {
        const Eigen::VectorXd dq =
            q_coords(target, edges, chart) - q_coords(x, edges, chart);
        Eigen::VectorXd direction = base_eval.pinv_apply(dq);
        const double dir_norm = (base_eval.jac.rows * direction).norm();
        if (dir_norm < 1e-14 || length < 1e-14)
            return Eigen::VectorXd(Eigen::VectorXd::Zero(3 * x.size()));
        return Eigen::VectorXd(direction * (length / dir_norm));
    };

    double total_len = 0.0;
    std::vector<Eigen::VectorXd> candidates;
    if (!path.images.empty()) {
        total_len = path.path_length;
        if (total_len < 1e-14) return finish(Eigen::VectorXd::Zero(3 * x.size()));
        const Eigen::VectorXd dq1 = q_coords(path.images[1], edges, chart) -
                                    q_coords(path.images[0], edges, chart);
        Eigen::VectorXd direction = base_eval.pinv_apply(dq1);
        const double dir_norm = (base_eval.jac.rows * direction).norm();
        if (dir_norm >= 1e-14) candidates.push_back(direction * (total_len / dir_norm));
    } else {
        total_len = (q_coords(y_aligned, edges, chart) - q_coords(x, edges, chart)).norm();
    }
    // Independent basins: the q-difference lift and the row-space projection
    // of the Cartesian displacement, both rescaled to the path length.
    candidates.push_back(lift_toward(y_aligned, total_len));
    {
        Eigen::VectorXd dx = base_eval.project_row_space(to_coords(y_aligned, chart) -
                                                         to_coords(x, chart));
        const double n = (base_eval.jac.rows * dx).norm();
        if (n >= 1e-14) candidates.push_back(dx * (total_len / n));
    }

    double best_achieved = achieved;
    Eigen::VectorXd best_v = Eigen::VectorXd::Zero(3 * x.size());
    for (const Eigen::VectorXd& v_init : candidates) {
        const Eigen::VectorXd v = shoot(v_init, y_aligned, &achieved);
        if (achieved <= opts.shoot_tol && strictly_integrable(v)) return finish(v);
        if (achieved < best_achieved) {
            best_achieved = achieved;
            best_v = v;
        }
    }

    // Marching fallback: walk the discrete geodesic image by image, shooting
    // to each image with the previous tangent rescaled as the warm start.
    // Each stage is a short extension inside the previous stage's
    // convergence zone, so the march tracks the path's own homotopy class.
    // Only engaged when direct shooting stalls.
    if (!path.images.empty()) {
        const int m = static_cast<int>(path.images.size());
        Eigen::VectorXd v_cur;
        double len_cur = 0.0;
        bool chain_ok = true;
        for (int s = 1; s < m && chain_ok; ++s) {
            if (cum_len[static_cast<std::size_t>(s)] < 1e-14) continue;
            const Molecule& target = s == m - 1 ? y_aligned : path.images[static_cast<std::size_t>(s)];
            const double len_target = cum_len[static_cast<std::size_t>(s)];
            Eigen::VectorXd guess;
            if (len_cur > 1e-14)
                guess = v_cur * (len_target / len_cur);
            else
                guess = lift_toward(target, len_target);
            double stage_achieved = std::numeric_limits<double>::infinity();
            Eigen::VectorXd v_stage = shoot(guess, target, &stage_achieved);
            if (stage_achieved <= opts.shoot_tol) {
                v_cur = v_stage;
                len_cur = len_target;
            } else {
                std::fprintf(stderr, "[march] stage %d/%d failed: achieved %.3e (len %.4f, path conv %d)\n",
                             s, m - 1, stage_achieved, len_target, path.converged ? 1 : 0);
                chain_ok = false;
            }
        }
        if (chain_ok && strictly_integrable(v_cur)) return finish(v_cur);
        if (chain_ok) std::fprintf(stderr, "[march] chain ok but final not strictly integrable\n");
    }

    if (best_achieved <= opts.shoot_tol && strictly_integrable(best_v)) return finish(best_v);
    throw ShootingError("log_map shooting did not converge", best_achieved);
}

} // namespace rdsm
