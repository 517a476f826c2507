#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rancca/pairing.hpp"

namespace rancca {

/// Which X variable fixed the sign of a canonical pair: the within-loading
/// with the largest magnitude is flipped positive (jointly on a_i and b_i,
/// which leaves the correlation untouched).
struct SignAnchor {
    Eigen::Index anchor = 0;
    bool flipped = false;
};

/// Fitted canonical correlation model.
///
/// Columns of `a()` / `b()` are the coefficient vectors of the canonical
/// variates U_i = X a_i and V_i = Y b_i; `rho()` holds the canonical
/// correlations in descending order. On the training data the variates have
/// unit variance and distinct pairs are mutually uncorrelated.
class CcaModel {
public:
    CcaModel(Eigen::MatrixXd a,
             Eigen::MatrixXd b,
             Eigen::VectorXd rho,
             StandardizationRecord x_record,
             StandardizationRecord y_record,
             std::vector<SignAnchor> signs,
             std::vector<std::string> x_labels,
             std::vector<std::string> y_labels,
             std::size_t discarded_pairs,
             double ridge)
        : a_(std::move(a)),
          b_(std::move(b)),
          rho_(std::move(rho)),
          x_record_(std::move(x_record)),
          y_record_(std::move(y_record)),
          signs_(std::move(signs)),
          x_labels_(std::move(x_labels)),
          y_labels_(std::move(y_labels)),
          discarded_pairs_(discarded_pairs),
          ridge_(ridge) {}

    const Eigen::MatrixXd& a() const { return a_; }
    const Eigen::MatrixXd& b() const { return b_; }
    const Eigen::VectorXd& rho() const { return rho_; }

    std::size_t p() const { return static_cast<std::size_t>(a_.rows()); }
    std::size_t q() const { return static_cast<std::size_t>(b_.rows()); }
    /// Number of retained canonical pairs.
    std::size_t r() const { return static_cast<std::size_t>(rho_.size()); }
    /// Near-zero directions dropped during the fit (reported, never silent).
    std::size_t discarded_pairs() const { return discarded_pairs_; }
    double ridge() const { return ridge_; }

    const StandardizationRecord& x_record() const { return x_record_; }
    const StandardizationRecord& y_record() const { return y_record_; }
    const std::vector<SignAnchor>& sign_convention() const { return signs_; }
    const std::vector<std::string>& x_labels() const { return x_labels_; }
    const std::vector<std::string>& y_labels() const { return y_labels_; }

private:
    Eigen::MatrixXd a_, b_;
    Eigen::VectorXd rho_;
    StandardizationRecord x_record_, y_record_;
    std::vector<SignAnchor> signs_;
    std::vector<std::string> x_labels_, y_labels_;
    std::size_t discarded_pairs_ = 0;
    double ridge_ = 0.0;
};

/// Scores of one canonical pair on a dataset.
struct VariatePair {
    std::size_t index = 0;
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    double rho = 0.0;
};

/// Loadings of pair i: correlations of each original variable with its own
/// block's variate (within) and with the opposite block's variate (cross).
struct LoadingsSet {
    Eigen::VectorXd x_within; // corr(X_j, U_i)
    Eigen::VectorXd y_within; // corr(Y_j, V_i)
    Eigen::VectorXd x_cross;  // corr(X_j, V_i)
    Eigen::VectorXd y_cross;  // corr(Y_j, U_i)
};

/// Solve the CCA problem on a standardized PairedDataset.
///
/// Route: population-normalized covariance blocks (ridge-augmented on the
/// diagonal blocks), inverse square roots by symmetric eigendecomposition,
/// SVD of the whitened cross-covariance. Singular values become rho,
/// singular vectors map back through the inverse square roots to the
/// coefficient columns. Directions with singular value below 1e-12 of the
/// largest are discarded and counted in discarded_pairs().
///
/// Throws UnderdeterminedError when rows <= max(p, q), and
/// SingularCovarianceError when a within-block covariance is numerically
/// singular at ridge = 0 (the message suggests a ridge).
CcaModel fit(const PairedDataset& data, double ridge = 0.0);

/// Canonical scores of `data` under `model`. Unstandardized data is first
/// passed through the model's standardization records; standardized data is
/// used as-is. Throws ShapeError on column-count mismatch or empty input.
std::vector<VariatePair> transform(const CcaModel& model, const PairedDataset& data);

/// Pearson correlation of two score vectors, clamped to [-1, 1].
/// Throws ShapeError for length mismatch or fewer than 2 samples and
/// DegenerateColumnError for a constant vector.
double canonical_correlation(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Within- and cross-loadings of canonical pair `pair_index` on `data`.
/// Throws IndexError when pair_index >= r().
LoadingsSet loadings(const CcaModel& model,
                     const PairedDataset& data,
                     std::size_t pair_index);

} // namespace rancca
