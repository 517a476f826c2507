#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "rancca/errors.hpp"

namespace rancca {

/// Brute-force verification route for the first canonical correlation at
/// p = q = 2: exhaustively scan unit directions u = (cos t, sin t),
/// v = (cos s, sin s) on a grid_size x grid_size grid of angles in [0, pi)
/// and return the maximum |corr(Xu, Yv)|.
///
/// Deliberately independent of fit(): no whitening, no SVD, only centered
/// second moments and a grid scan. Throws ShapeError unless both blocks
/// have exactly 2 columns and at least 2 rows.
double grid_search_max_correlation(const Eigen::MatrixXd& x,
                                   const Eigen::MatrixXd& y,
                                   std::size_t grid_size);

} // namespace rancca
