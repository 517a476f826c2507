#include "rancca/cca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

namespace rancca {

namespace {

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) {
        throw ShapeError("correlation of vectors with " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " entries");
    }
    if (a.size() < 2) {
        throw ShapeError("correlation needs at least 2 samples");
    }
    const Eigen::VectorXd ac = a.array() - a.mean();
    const Eigen::VectorXd bc = b.array() - b.mean();
    const double va = ac.squaredNorm();
    const double vb = bc.squaredNorm();
    if (va == 0.0 || vb == 0.0) {
        throw DegenerateColumnError("correlation of a constant vector is undefined");
    }
    return std::clamp(ac.dot(bc) / std::sqrt(va * vb), -1.0, 1.0);
}

/// Symmetric inverse square root of an (already ridge-augmented) covariance
/// block via eigendecomposition, with the singularity check of the fit
/// contract. Eigenvalues are floored at the ridge to absorb the tiny
/// negative residue a rank-deficient Gram matrix can produce.
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& sigma, double ridge, const char* block) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    const Eigen::VectorXd& lambda = eig.eigenvalues(); // ascending
    const double largest = lambda(lambda.size() - 1);
    if (ridge == 0.0 && lambda(0) < 1e-10 * largest) {
        char suggestion[32];
        std::snprintf(suggestion, sizeof(suggestion), "%.1e", 1e-6 * largest);
        throw SingularCovarianceError(
            std::string("covariance of the ") + block +
            " block is numerically singular; drop a collinear column or refit with ridge >= " +
            suggestion);
    }
    Eigen::VectorXd inv_sqrt(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        inv_sqrt(i) = 1.0 / std::sqrt(std::max(lambda(i), ridge));
    }
    return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
}

} // namespace

CcaModel fit(const PairedDataset& data, double ridge) {
    if (ridge < 0.0) {
        throw ConfigError("ridge must be nonnegative");
    }
    if (!data.standardized()) {
        throw Error("fit requires a standardized dataset (see PairedDataset::from_matrices)");
    }
    const auto rows = static_cast<Eigen::Index>(data.rows());
    const auto p = static_cast<Eigen::Index>(data.p());
    const auto q = static_cast<Eigen::Index>(data.q());
    if (rows <= std::max(p, q)) {
        throw UnderdeterminedError("need more rows than columns: " + std::to_string(rows) +
                                   " rows for blocks of " + std::to_string(p) + " and " +
                                   std::to_string(q) + " columns");
    }

    // Population-normalized covariance about the sample means. The data is
    // standardized, so the means only mop up float residue.
    const Eigen::MatrixXd xc = data.x().rowwise() - data.x().colwise().mean();
    const Eigen::MatrixXd yc = data.y().rowwise() - data.y().colwise().mean();
    const double inv_m = 1.0 / static_cast<double>(rows);
    Eigen::MatrixXd sxx = (xc.transpose() * xc) * inv_m;
    Eigen::MatrixXd syy = (yc.transpose() * yc) * inv_m;
    const Eigen::MatrixXd sxy = (xc.transpose() * yc) * inv_m;
    sxx.diagonal().array() += ridge;
    syy.diagonal().array() += ridge;

    const Eigen::MatrixXd wx = inverse_sqrt(sxx, ridge, "X");
    const Eigen::MatrixXd wy = inverse_sqrt(syy, ridge, "Y");

    // Whitened cross-covariance; its singular values are the canonical
    // correlations, already in descending order.
    const Eigen::MatrixXd k = wx * sxy * wy;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    Eigen::Index r = sigma.size();
    const double cutoff = 1e-12 * sigma(0);
    while (r > 1 && sigma(r - 1) < cutoff) --r;
    const auto discarded = static_cast<std::size_t>(sigma.size() - r);

    Eigen::MatrixXd a = wx * svd.matrixU().leftCols(r);
    Eigen::MatrixXd b = wy * svd.matrixV().leftCols(r);
    Eigen::VectorXd rho(r);
    for (Eigen::Index i = 0; i < r; ++i) rho(i) = std::clamp(sigma(i), 0.0, 1.0);

    // Sign convention: make the X within-loading of largest magnitude
    // positive; flipping a_i and b_i together leaves corr(U_i, V_i) as-is.
    std::vector<SignAnchor> signs;
    signs.reserve(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) {
        const Eigen::VectorXd u = data.x() * a.col(i);
        Eigen::Index anchor = 0;
        double best = -1.0;
        double anchor_loading = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double loading = pearson(data.x().col(j), u);
            if (std::abs(loading) > best) {
                best = std::abs(loading);
                anchor = j;
                anchor_loading = loading;
            }
        }
        const bool flip = anchor_loading < 0.0;
        if (flip) {
            a.col(i) = -a.col(i);
            b.col(i) = -b.col(i);
        }
        signs.push_back({anchor, flip});
    }

    return CcaModel(std::move(a), std::move(b), std::move(rho), data.x_record(),
                    data.y_record(), std::move(signs), data.x_labels(), data.y_labels(),
                    discarded, ridge);
}

std::vector<VariatePair> transform(const CcaModel& model, const PairedDataset& data) {
    if (data.rows() == 0) {
        throw ShapeError("transform of an empty dataset");
    }
    if (data.p() != model.p() || data.q() != model.q()) {
        throw ShapeError("dataset blocks are " + std::to_string(data.p()) + "x" +
                         std::to_string(data.q()) + ", model expects " +
                         std::to_string(model.p()) + "x" + std::to_string(model.q()));
    }
    const Eigen::MatrixXd x =
        data.standardized() ? data.x() : apply_standardization(data.x(), model.x_record());
    const Eigen::MatrixXd y =
        data.standardized() ? data.y() : apply_standardization(data.y(), model.y_record());

    std::vector<VariatePair> pairs;
    pairs.reserve(model.r());
    for (std::size_t i = 0; i < model.r(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        pairs.push_back({i, x * model.a().col(col), y * model.b().col(col), model.rho()(col)});
    }
    return pairs;
}

double canonical_correlation(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return pearson(u, v);
}

LoadingsSet loadings(const CcaModel& model, const PairedDataset& data, std::size_t pair_index) {
    if (pair_index >= model.r()) {
        throw IndexError("pair index " + std::to_string(pair_index) + " out of range (r = " +
                         std::to_string(model.r()) + ")");
    }
    if (data.p() != model.p() || data.q() != model.q()) {
        throw ShapeError("dataset does not match the model's block shapes");
    }
    const Eigen::MatrixXd x =
        data.standardized() ? data.x() : apply_standardization(data.x(), model.x_record());
    const Eigen::MatrixXd y =
        data.standardized() ? data.y() : apply_standardization(data.y(), model.y_record());
    const auto col = static_cast<Eigen::Index>(pair_index);
    const Eigen::VectorXd u = x * model.a().col(col);
    const Eigen::VectorXd v = y * model.b().col(col);

    LoadingsSet out;
    out.x_within.resize(x.cols());
    out.x_cross.resize(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out.x_within(j) = pearson(x.col(j), u);
        out.x_cross(j) = pearson(x.col(j), v);
    }
    out.y_within.resize(y.cols());
    out.y_cross.resize(y.cols());
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
        out.y_within(j) = pearson(y.col(j), v);
        out.y_cross(j) = pearson(y.col(j), u);
    }
    return out;
}

} // namespace rancca
