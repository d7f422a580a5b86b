#ifndef NUBS_CORRELATION_HPP
#define NUBS_CORRELATION_HPP

#include <span>
#include <stdexcept>
#include <vector>

namespace nubs {

/// Thrown when a matrix required to be positive definite is not.
class NotPositiveDefinite : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Correlation matrix: symmetric, unit diagonal, off-diagonals in [-1,1],
/// positive definite. Validated on construction, immutable afterwards.
class CorrelationMatrix {
  public:
    /// Validates `entries` (row-major, dim x dim) and checks positive
    /// definiteness by attempting a Cholesky factorization.
    /// Throws std::invalid_argument on shape/symmetry/range violations and
    /// NotPositiveDefinite when the factorization fails.
    CorrelationMatrix(int dim, std::vector<double> entries);

    static CorrelationMatrix identity(int dim);
    /// 2x2 matrix [[1, rho], [rho, 1]].
    static CorrelationMatrix bivariate(double rho);

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

  private:
    int dim_;
    std::vector<double> entries_;
};

/// Lower-triangular Cholesky factor L with L*L^T equal to the source
/// correlation matrix.
class CholeskyFactor {
  public:
    static CholeskyFactor compute(const CorrelationMatrix& gamma);

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return lower_[static_cast<std::size_t>(i) * dim_ + j]; }

    /// log |Gamma| = 2 * sum log L_ii.
    double log_det() const;

    /// y = L z (correlated draw from iid normals).
    std::vector<double> multiply(std::span<const double> z) const;

    /// Solves L y = u; the squared norm of y equals u^T Gamma^{-1} u.
    std::vector<double> forward_solve(std::span<const double> u) const;

  private:
    CholeskyFactor(int dim, std::vector<double> lower) : dim_(dim), lower_(std::move(lower)) {}

    int dim_;
    std::vector<double> lower_;  // row-major, upper part zero
};

}  // namespace nubs

#endif
