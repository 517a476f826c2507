#include "rancca/oracle.hpp"

#include <cmath>
#include <vector>

namespace rancca {

double grid_search_max_correlation(const Eigen::MatrixXd& x,
                                   const Eigen::MatrixXd& y,
                                   std::size_t grid_size) {
    if (x.cols() != 2 || y.cols() != 2) {
        throw ShapeError("grid oracle is defined for p = q = 2 only, got " +
                         std::to_string(x.cols()) + " and " + std::to_string(y.cols()) +
                         " columns");
    }
    if (x.rows() != y.rows() || x.rows() < 2) {
        throw ShapeError("blocks need matching row counts of at least 2");
    }
    if (grid_size < 2) {
        throw ConfigError("grid size must be at least 2");
    }

    // Centered second moments; the common 1/M factor cancels in the ratio.
    const Eigen::MatrixXd xc = x.rowwise() - x.colwise().mean();
    const Eigen::MatrixXd yc = y.rowwise() - y.colwise().mean();
    const Eigen::Matrix2d cxx = xc.transpose() * xc;
    const Eigen::Matrix2d cyy = yc.transpose() * yc;
    const Eigen::Matrix2d cxy = xc.transpose() * yc;

    // u and -u give the same |corr|, so angles in [0, pi) cover everything.
    const std::size_t n = grid_size;
    std::vector<double> cs(n), sn(n), vyy(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = M_PI * static_cast<double>(i) / static_cast<double>(n);
        cs[i] = std::cos(angle);
        sn[i] = std::sin(angle);
        const Eigen::Vector2d v(cs[i], sn[i]);
        vyy[i] = v.dot(cyy * v);
    }

    double best_sq = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        const Eigen::Vector2d u(cs[it], sn[it]);
        const double uxx = u.dot(cxx * u);
        if (uxx <= 0.0) continue;
        const Eigen::Vector2d g = cxy.transpose() * u;
        for (std::size_t is = 0; is < n; ++is) {
            if (vyy[is] <= 0.0) continue;
            const double num = g(0) * cs[is] + g(1) * sn[is];
            const double r_sq = (num * num) / (uxx * vyy[is]);
            if (r_sq > best_sq) best_sq = r_sq;
        }
    }
    return std::min(std::sqrt(best_sq), 1.0);
}

} // namespace rancca
