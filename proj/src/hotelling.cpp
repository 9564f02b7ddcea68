#include "linkexpr/error.hpp"
#include "linkexpr/fdist.hpp"
#include "linkexpr/rpc.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace linkexpr {

double hotelling_t2(const Eigen::MatrixXd& diffs, const RidgeOption& ridge) {
    const auto q = diffs.rows();
    const auto d = diffs.cols();
    if (d < 1) throw DegreesOfFreedomError("Hotelling T2 needs at least one dimension");
    if (q <= d) {
        throw DegreesOfFreedomError("Hotelling T2 needs q > d (q=" + std::to_string(q) + ", d=" + std::to_string(d) + ")");
    }
    const Eigen::VectorXd mean = diffs.colwise().mean().transpose();
    const Eigen::MatrixXd centered = diffs.rowwise() - mean.transpose();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(q - 1);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().maxCoeff();
    const double smallest = eig.eigenvalues().minCoeff();
    if (!(largest > 0.0) || smallest < kSingularTolerance * largest) {
        if (!ridge.enabled) throw SingularCovariance("singular covariance (zero or near-zero variance)");
        const double eps = ridge.epsilon.value_or(1e-8 * cov.trace() / static_cast<double>(d));
        if (!(eps > 0.0)) throw SingularCovariance("singular covariance and ridge epsilon is zero");
        cov.diagonal().array() += eps;
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    if (ldlt.info() != Eigen::Success) throw NumericalError("covariance factorization failed");
    const Eigen::VectorXd solved = ldlt.solve(mean);
    const double t2 = static_cast<double>(q) * mean.dot(solved);
    if (!std::isfinite(t2)) throw NumericalError("Hotelling T2 is not finite");
    return t2;
}

double rpc_threshold(std::size_t q, std::size_t d, double alpha) {
    if (d < 1 || q <= d) throw DegreesOfFreedomError("threshold needs q > d >= 1");
    const double scale = static_cast<double>(q - 1) * static_cast<double>(d) / static_cast<double>(q - d);
    return scale * f_upper_quantile(static_cast<unsigned>(d), static_cast<unsigned>(q - d), alpha);
}

}  // namespace linkexpr
