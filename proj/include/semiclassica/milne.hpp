#ifndef SEMICLASSICA_MILNE_HPP
#define SEMICLASSICA_MILNE_HPP

#include "semiclassica/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <vector>

namespace semiclassica::milne {

/** Higher orders of the semiclassical series through the Milne wavelength:
    at zero energy in V = -alpha^2 x^{2 nu} / 2m the expansion terms are
    monomials with closed-form coefficients, so the divergence, the optimal
    truncation index and the late-term self-similarity can be studied in
    high-precision arithmetic. */

using Real = boost::multiprecision::mpfr_float;

class GammaPole : public NumericalError {
public:
    explicit GammaPole(const std::string& msg) : NumericalError(msg) {}
};
class PrecisionLoss : public NumericalError {
public:
    explicit PrecisionLoss(const std::string& msg) : NumericalError(msg) {}
};
class NoMinimum : public NumericalError {
public:
    explicit NoMinimum(const std::string& msg) : NumericalError(msg) {}
};
class PeelingUnstable : public NumericalError {
public:
    explicit PeelingUnstable(const std::string& msg) : NumericalError(msg) {}
};

struct PowerLawCase {
    double alpha = 1.0;
    double nu = 0.5;      ///< exponent; nu = 1/2 is an ordinary turning point
    double x = 1.0;
    int precision = 50;   ///< working decimal digits (>= 30)
};

/// Set the working precision (decimal digits) for subsequent Real arithmetic.
void set_precision(int decimal_digits);

/** Closed-form term lambda_n(x): the triple Pochhammer product times
    ((nu+1)/(alpha x^{nu+1}))^{2n} x^{-nu} / alpha.  Truncation families
    nu = -1 +- 1/(2q+1) give exact zeros through the vanishing Pochhammer
    factor (no gamma poles are evaluated). */
Real lambda_term_closed(const PowerLawCase& c, int n);

/// Terms lambda_0..lambda_n_max generated by the linear recurrence.
std::vector<Real> lambda_recurrence(const PowerLawCase& c, int n_max);

/// Truncated wavelength sum  sum_{n<=N} hbar^{2n} lambda_n(x).
Real lambda_series_truncated(const PowerLawCase& c, double hbar, int N);

struct CriticalIndex {
    int argmin;             ///< order of the smallest term
    double prediction;      ///< alpha x^{nu+1} / (hbar (nu+1))
    std::vector<Real> term_magnitudes;
};

/// Optimal truncation order of the series; throws NoMinimum when it truncates.
CriticalIndex critical_index(const PowerLawCase& c, double hbar);

/// Second-order-pole coefficient of the model kernel, nu(nu+2)/[2(nu+1)]^2.
double model_kernel_coefficient(double nu);

struct LateTermTable {
    std::vector<Real> phi;      ///< |phi_n| at S = 1; signs alternate as (-1)^n
    std::vector<Real> level1;   ///< extracted sub-expansion coefficients
    std::vector<Real> level2;   ///< coefficients extracted from level1
    /// Self-similarity errors are measured on normalized ratios f_k/f_0:
    /// each peeled sequence reproduces the base one up to an overall
    /// normalization (level1[0] is the genuine late-term prefactor).
    double level1_max_rel_err;  ///< vs the phi sequence itself
    double level2_max_rel_err;  ///< vs level1
    double level3_max_rel_err;  ///< vs level2 (only when m_levels >= 3)
    double recurrence_rel_err;  ///< level1 against the defining recurrence
    int level2_orders;          ///< orders compared at level 2
    int subexp_argmin;          ///< optimal truncation order of the sub-expansion
    int subexp_probe_n;         ///< at this n (expected argmin = n/2)
};

/** Run the late-term recurrence d phi_n/dS = phi''_{n-1} + Q phi_{n-1} with
    Q = Q_coeff/S^2 and phi_0 = 1, then peel Gamma(n-k)/S^{n-k} layers and
    verify that each extracted sequence reproduces the same structure. */
LateTermTable dingle_self_similarity(double Q_coeff, int n_max, int m_levels);

} // namespace semiclassica::milne

#endif
