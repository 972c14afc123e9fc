#pragma once

#include <Eigen/Dense>

#include "ssmseg/mfcc.hpp"

namespace ssmseg {

/// Sufficient statistics for a full-covariance Gaussian over a window of
/// feature vectors. Mergeable: stats(A ∪ B) is the elementwise sum.
struct GaussianStats {
    long long n = 0;
    Eigen::VectorXd sum;
    Eigen::MatrixXd sumsq;  // summed outer products

    explicit GaussianStats(Eigen::Index dim = 0)
        : sum(Eigen::VectorXd::Zero(dim)),
          sumsq(Eigen::MatrixXd::Zero(dim, dim)) {}

    void add(const Eigen::Ref<const Eigen::VectorXd>& v);
    void merge(const GaussianStats& other);

    Eigen::VectorXd mean() const;

    // sumsq/n - mean*mean' with eps_rel * trace/d added on the diagonal.
    // Zero-trace (degenerate) windows get eps_rel * I instead.
    Eigen::MatrixXd covariance(double eps_rel) const;

    // log|Sigma| via Cholesky; throws DegenerateModel if the regularized
    // covariance is not positive definite.
    double log_det_covariance(double eps_rel) const;
};

GaussianStats accumulate_stats(const FeatureMatrix& features,
                               Eigen::Index begin, Eigen::Index end);

// (N_W/2) log|Sigma_W| - (N_i/2) log|Sigma_i| - (N_j/2) log|Sigma_j|,
// larger = more dissimilar. penalty_lambda scales an optional
// lambda/2 * (d + d(d+1)/2) * log N_W complexity term (off by default).
double bic_similarity(const GaussianStats& a, const GaussianStats& b,
                      double eps_rel = 1e-6, double penalty_lambda = 0.0);

}  // namespace ssmseg
