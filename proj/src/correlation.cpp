#include "nubs/correlation.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace nubs {

namespace {

// Plain Cholesky; throws when a pivot is not strictly positive.
std::vector<double> factorize(int dim, const std::vector<double>& a) {
    std::vector<double> l(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[static_cast<std::size_t>(i) * dim + j];
            for (int k = 0; k < j; ++k)
                s -= l[static_cast<std::size_t>(i) * dim + k] * l[static_cast<std::size_t>(j) * dim + k];
            if (i == j) {
                if (!(s > 0.0))
                    throw NotPositiveDefinite("correlation matrix is not positive definite (pivot " +
                                              std::to_string(i) + ")");
                l[static_cast<std::size_t>(i) * dim + j] = std::sqrt(s);
            } else {
                l[static_cast<std::size_t>(i) * dim + j] = s / l[static_cast<std::size_t>(j) * dim + j];
            }
        }
    }
    return l;
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(int dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1) throw std::invalid_argument("CorrelationMatrix: dim must be positive");
    if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
        throw std::invalid_argument("CorrelationMatrix: entries must be dim*dim");
    for (int i = 0; i < dim_; ++i) {
        if ((*this)(i, i) != 1.0)
            throw std::invalid_argument("CorrelationMatrix: diagonal must be exactly 1");
        for (int j = 0; j < i; ++j) {
            const double lo = (*this)(i, j);
            const double hi = (*this)(j, i);
            if (std::fabs(lo - hi) > 1e-12)
                throw std::invalid_argument("CorrelationMatrix: not symmetric within 1e-12");
            if (!(std::fabs(lo) <= 1.0))
                throw std::invalid_argument("CorrelationMatrix: off-diagonal outside [-1,1]");
        }
    }
    factorize(dim_, entries_);  // positive-definiteness gate
}

CorrelationMatrix CorrelationMatrix::identity(int dim) {
    std::vector<double> e(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = 1.0;
    return CorrelationMatrix(dim, std::move(e));
}

CorrelationMatrix CorrelationMatrix::bivariate(double rho) {
    return CorrelationMatrix(2, {1.0, rho, rho, 1.0});
}

CholeskyFactor CholeskyFactor::compute(const CorrelationMatrix& gamma) {
    return CholeskyFactor(gamma.dim(), factorize(gamma.dim(), gamma.entries()));
}

double CholeskyFactor::log_det() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::log((*this)(i, i));
    return 2.0 * s;
}

std::vector<double> CholeskyFactor::multiply(std::span<const double> z) const {
    std::vector<double> y(dim_, 0.0);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += (*this)(i, j) * z[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> CholeskyFactor::forward_solve(std::span<const double> u) const {
    std::vector<double> y(dim_, 0.0);
    for (int i = 0; i < dim_; ++i) {
        double s = u[i];
        for (int j = 0; j < i; ++j) s -= (*this)(i, j) * y[j];
        y[i] = s / (*this)(i, i);
    }
    return y;
}

}  // namespace nubs
