#include <cmath>

#include <Eigen/Cholesky>

#include "ssmseg/errors.hpp"
#include "ssmseg/gaussian.hpp"

namespace ssmseg {

void GaussianStats::add(const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (n == 0 && sum.size() == 0) {
        sum = Eigen::VectorXd::Zero(v.size());
        sumsq = Eigen::MatrixXd::Zero(v.size(), v.size());
    }
    ++n;
    sum += v;
    sumsq += v * v.transpose();
}

void GaussianStats::merge(const GaussianStats& other) {
    if (other.n == 0) return;
    if (n == 0) {
        *this = other;
        return;
    }
    n += other.n;
    sum += other.sum;
    sumsq += other.sumsq;
}

Eigen::VectorXd GaussianStats::mean() const { return sum / static_cast<double>(n); }

Eigen::MatrixXd GaussianStats::covariance(double eps_rel) const {
    const double nn = static_cast<double>(n);
    Eigen::VectorXd mu = sum / nn;
    Eigen::MatrixXd cov = sumsq / nn - mu * mu.transpose();
    // force exact symmetry before factorization
    cov = 0.5 * (cov + cov.transpose()).eval();
    if (eps_rel > 0.0) {
        const double d = static_cast<double>(cov.rows());
        double eps = eps_rel * cov.trace() / d;
        if (eps <= 0.0) eps = eps_rel;  // degenerate (zero-variance) window
        cov.diagonal().array() += eps;
    }
    return cov;
}

double GaussianStats::log_det_covariance(double eps_rel) const {
    Eigen::LLT<Eigen::MatrixXd> llt(covariance(eps_rel));
    if (llt.info() != Eigen::Success)
        throw DegenerateModel("covariance not positive definite after regularization");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

GaussianStats accumulate_stats(const FeatureMatrix& features,
                               Eigen::Index begin, Eigen::Index end) {
    if (begin < 0 || end > features.frames() || begin >= end)
        throw EmptyRange("invalid frame range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ")");
    GaussianStats stats(features.dim());
    stats.n = end - begin;
    const auto block = features.vectors.middleRows(begin, end - begin);
    stats.sum = block.colwise().sum().transpose();
    stats.sumsq = block.transpose() * block;
    return stats;
}

double bic_similarity(const GaussianStats& a, const GaussianStats& b,
                      double eps_rel, double penalty_lambda) {
    if (a.n < 2 || b.n < 2)
        throw EmptyRange("bic_similarity needs >= 2 vectors per window");
    GaussianStats pooled = a;
    pooled.merge(b);

    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double nw = na + nb;

    // grouped so the result is bit-identical under argument swap
    double bic = 0.5 * (nw * pooled.log_det_covariance(eps_rel) -
                        (na * a.log_det_covariance(eps_rel) +
                         nb * b.log_det_covariance(eps_rel)));
    if (penalty_lambda != 0.0) {
        const double d = static_cast<double>(a.sum.size());
        bic -= penalty_lambda * 0.5 * (d + 0.5 * d * (d + 1)) * std::log(nw);
    }
    return bic;
}

}  // namespace ssmseg
