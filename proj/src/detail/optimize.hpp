#ifndef NUBS_DETAIL_OPTIMIZE_HPP
#define NUBS_DETAIL_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace nubs::detail {

using Objective = std::function<double(const std::vector<double>&)>;

struct NmResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool tol_reached = false;
};

/// Nelder-Mead minimization with the dimension-adaptive coefficients of
/// Gao & Han (2012). Terminates when the relative spread of simplex values
/// drops below ftol_rel or after max_iter iterations.
NmResult nelder_mead(const Objective& f, const std::vector<double>& x0, double step,
                     double ftol_rel, int max_iter);

/// Central-difference gradient with per-coordinate absolute step h.
std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, double h);

/// Central-difference Hessian (symmetric), per-coordinate absolute step h.
std::vector<double> fd_hessian(const Objective& f, const std::vector<double>& x, double h);

/// Solves A x = b for dense symmetric positive definite A (row-major);
/// returns false when the Cholesky factorization hits a nonpositive pivot.
bool solve_spd(std::vector<double> a, const std::vector<double>& b, std::vector<double>& x);

/// Diagonal of A^{-1} for symmetric positive definite A; false when A is
/// not positive definite.
bool spd_inverse_diagonal(std::vector<double> a, std::vector<double>& diag);

/// Solves a general square system by Gaussian elimination with partial
/// pivoting; returns false on (near-)singularity.
bool solve_dense(std::vector<double> a, std::vector<double> b, std::vector<double>& x);

}  // namespace nubs::detail

#endif
