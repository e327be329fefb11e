#include "semiclassica/milne.hpp"

#include <cmath>

namespace semiclassica::milne {

void set_precision(int decimal_digits) {
    if (decimal_digits < 30)
        throw InvalidArgument("milne: precision must be at least 30 digits");
    Real::default_precision(decimal_digits);
}

namespace {

// Truncation families nu = -1 +- 1/(2q+1) produce exact zeros through factors
// that vanish identically; a double-precision nu sits within ~1e-15 of the
// family, so factors that close to an exact zero are snapped to it.
inline Real snap_zero(const Real& v) {
    return abs(v) < 1e-12 ? Real(0) : v;
}

// rising factorial (a)_n with snapped factors
Real pochhammer(const Real& a, int n) {
    Real p = 1;
    for (int j = 0; j < n; ++j) p *= snap_zero(a + j);
    return p;
}

struct Monomial {
    Real coeff;      // lambda_n = coeff * x^exponent
    Real exponent;
};

// The recurrence follows from the third-order wavelength equation at E = 0:
//   p (p lambda_n)' = -(1/4) lambda'''_{n-1},  p = alpha x^nu,
// i.e. lambda_n = -(1/(4p)) int dx lambda'''_{n-1}/p with C_n = 0.  On the
// power-law potential every term stays a single monomial, so the recurrence
// acts on (coefficient, exponent) pairs exactly.
std::vector<Monomial> recurrence_monomials(const PowerLawCase& c, int n_max) {
    set_precision(c.precision);
    Real nu = Real(c.nu), alpha = Real(c.alpha);
    std::vector<Monomial> terms;
    terms.push_back({1 / alpha, -nu});
    for (int n = 1; n <= n_max; ++n) {
        const Real e = terms.back().exponent;
        const Real denom = e - 2 - nu;  // zero only at nu = -1 (excluded)
        Real k = terms.back().coeff * snap_zero(e) * snap_zero(e - 1) *
                 snap_zero(e - 2) / (alpha * alpha * denom) * Real(-0.25);
        terms.push_back({k, e - 2 * (nu + 1)});
    }
    return terms;
}

} // namespace

Real lambda_term_closed(const PowerLawCase& c, int n) {
    if (n < 0) throw InvalidArgument("lambda_term_closed: n >= 0 required");
    if (c.nu == -1.0) throw InvalidArgument("lambda_term_closed: nu = -1 excluded");
    set_precision(c.precision);
    Real nu = Real(c.nu), alpha = Real(c.alpha), x = Real(c.x);
    Real a1 = nu / (2 * (nu + 1));
    Real a2 = Real(0.5);
    Real a3 = (nu + 2) / (2 * (nu + 1));
    Real nfact = 1;
    for (int j = 2; j <= n; ++j) nfact *= j;
    Real sign = (n % 2 == 0) ? 1 : -1;
    Real coeff = sign * pochhammer(a1, n) * pochhammer(a2, n) * pochhammer(a3, n) /
                 (alpha * nfact);
    Real ratio = pow((nu + 1) / (alpha * pow(x, nu + 1)), 2 * n);
    return coeff * ratio * pow(x, -nu);
}

std::vector<Real> lambda_recurrence(const PowerLawCase& c, int n_max) {
    if (n_max < 0) throw InvalidArgument("lambda_recurrence: n_max >= 0 required");
    if (c.nu == -1.0) throw InvalidArgument("lambda_recurrence: nu = -1 excluded");
    if (c.precision < 30)
        throw PrecisionLoss("lambda_recurrence: below the minimum working precision");
    auto monos = recurrence_monomials(c, n_max);
    std::vector<Real> out;
    out.reserve(monos.size());
    Real x = Real(c.x);
    for (const auto& m : monos) out.push_back(m.coeff * pow(x, m.exponent));
    return out;
}

Real lambda_series_truncated(const PowerLawCase& c, double hbar, int N) {
    auto terms = lambda_recurrence(c, N);
    set_precision(c.precision);
    Real sum = 0, h2 = Real(hbar) * Real(hbar), f = 1;
    for (int n = 0; n <= N; ++n) {
        sum += f * terms[n];
        f *= h2;
    }
    return sum;
}

CriticalIndex critical_index(const PowerLawCase& c, double hbar) {
    if (hbar <= 0) throw InvalidArgument("critical_index: hbar > 0 required");
    double prediction = c.alpha * std::pow(c.x, c.nu + 1.0) / (hbar * (c.nu + 1.0));
    int n_scan = std::max(30, int(2.5 * std::fabs(prediction)) + 20);

    PowerLawCase cc = c;
    cc.precision = std::max(c.precision, int(n_scan * 1.2) + 30);
    auto terms = lambda_recurrence(cc, n_scan);

    CriticalIndex out;
    out.prediction = prediction;
    out.term_magnitudes.reserve(terms.size());
    Real h2 = Real(hbar) * Real(hbar), f = 1;
    int argmin = 0;
    Real best = -1;
    bool truncated = false;
    for (int n = 0; n <= n_scan; ++n) {
        Real mag = abs(f * terms[n]);
        out.term_magnitudes.push_back(mag);
        if (mag == 0) { truncated = true; break; }
        if (best < 0 || mag < best) { best = mag; argmin = n; }
        f *= h2;
    }
    if (truncated)
        throw NoMinimum("critical_index: series truncates exactly (no late growth)");
    if (argmin == n_scan)
        throw NoMinimum("critical_index: no minimum inside the scanned range");
    out.argmin = argmin;
    return out;
}

double model_kernel_coefficient(double nu) {
    double d = 2.0 * (nu + 1.0);
    return nu * (nu + 2.0) / (d * d);
}

namespace {

// phi_n(S) = (-1)^n phin[n] S^{-n} for the model kernel Q = Qc/S^2:
// the recurrence maps single powers to single powers
std::vector<Real> phi_sequence(double Q_coeff, int n_max) {
    std::vector<Real> c(n_max + 1);
    c[0] = 1;
    for (int n = 1; n <= n_max; ++n)
        c[n] = c[n - 1] * (Real(n - 1) * n + Q_coeff) / n;
    return c;
}

// Gamma(m) at positive integer arguments
Real int_gamma(int m) {
    Real g = 1;
    for (int j = 2; j < m; ++j) g *= j;
    return g;
}

// Solve sum_k (-1)^k Gamma(n_i - k) e_k = seq[n_i] for e_0..e_K using the
// rows n_i = n_hi-K..n_hi (dense Gaussian elimination in working precision).
std::vector<Real> peel(const std::vector<Real>& seq, int n_hi, int K) {
    int rows = K + 1;
    if (n_hi >= int(seq.size()) || n_hi - K - K < 2)
        throw PeelingUnstable("peel: not enough orders for the requested depth");
    std::vector<std::vector<Real>> M(rows, std::vector<Real>(rows + 1));
    for (int i = 0; i < rows; ++i) {
        int n = n_hi - K + i;
        for (int k = 0; k <= K; ++k) {
            Real g = int_gamma(n - k);
            M[i][k] = (k % 2 == 0) ? g : -g;
        }
        M[i][rows] = seq[n];
    }
    for (int col = 0; col < rows; ++col) {  // partial pivoting
        int piv = col;
        for (int r = col + 1; r < rows; ++r)
            if (abs(M[r][col]) > abs(M[piv][col])) piv = r;
        if (M[piv][col] == 0) throw PeelingUnstable("peel: singular system");
        std::swap(M[piv], M[col]);
        for (int r = 0; r < rows; ++r) {
            if (r == col) continue;
            Real f = M[r][col] / M[col][col];
            for (int cc = col; cc <= rows; ++cc) M[r][cc] -= f * M[col][cc];
        }
    }
    std::vector<Real> e(rows);
    for (int i = 0; i < rows; ++i) e[i] = M[i][rows] / M[i][i];
    return e;
}

// Self-similarity holds up to an overall normalization (the analogue of the
// free constants C_n): the extracted sequence equals the base sequence after
// dividing out its own zeroth element, so ratios are what gets compared.
double max_rel_err_normalized(const std::vector<Real>& got,
                              const std::vector<Real>& want, int orders) {
    double worst = 0;
    for (int k = 1; k < orders; ++k) {
        Real g = got[k] / got[0];
        Real w = want[k] / want[0];
        worst = std::max(worst, double(abs(g - w) / abs(w)));
    }
    return worst;
}

} // namespace

LateTermTable dingle_self_similarity(double Q_coeff, int n_max, int m_levels) {
    if (n_max < 20) throw InvalidArgument("dingle_self_similarity: n_max >= 20");
    if (m_levels < 1 || m_levels > 3)
        throw InvalidArgument("dingle_self_similarity: m_levels in 1..3");
    // plenty of guard digits for the Vandermonde-like peeling solves
    set_precision(std::max(200, n_max * 3));

    LateTermTable out;
    out.phi = phi_sequence(Q_coeff, n_max);

    // level 1: peel from the top rows; the depth keeps every row far from its
    // own optimal truncation so the extracted orders are sharp
    int K1 = std::min(48, (n_max - 1) / 2 - 2);
    out.level1 = peel(out.phi, n_max - 1, K1);
    out.level1_max_rel_err = max_rel_err_normalized(out.level1, out.phi, K1 / 2);

    // extracted sequence must satisfy the defining recurrence itself
    // (scale-invariant: the recurrence is linear and homogeneous)
    double rec_err = 0;
    for (int k = 1; k <= K1 / 2; ++k) {
        Real expect = out.level1[k - 1] * (Real(k - 1) * k + Q_coeff) / k;
        rec_err = std::max(rec_err, double(abs(out.level1[k] - expect) / abs(expect)));
    }
    out.recurrence_rel_err = rec_err;

    // sub-expansion optimal truncation: terms Gamma(n-k) e_k minimal at k = n/2;
    // probe at n = K1 so the whole k-range of extracted orders is available
    int probe_n = K1;
    {
        Real best = -1;
        int arg = 0;
        for (int k = 0; k <= std::min(K1, probe_n - 2); ++k) {
            Real t = int_gamma(probe_n - k) * abs(out.level1[k]);
            if (best < 0 || t < best) { best = t; arg = k; }
        }
        out.subexp_argmin = arg;
        out.subexp_probe_n = probe_n;
    }

    out.level2_orders = 0;
    out.level2_max_rel_err = 0;
    out.level3_max_rel_err = 0;
    if (m_levels >= 2) {
        int K2 = std::max(4, K1 / 4);
        out.level2 = peel(out.level1, K1 - 1, K2);
        out.level2_orders = std::max(2, K2 / 2);
        out.level2_max_rel_err =
            max_rel_err_normalized(out.level2, out.level1, out.level2_orders);
    }
    if (m_levels >= 3 && out.level2.size() > 8) {
        int K3 = std::max(2, int(out.level2.size()) / 4);
        auto level3 = peel(out.level2, int(out.level2.size()) - 2, K3);
        out.level3_max_rel_err = max_rel_err_normalized(level3, out.level2, 3);
    }
    return out;
}

} // namespace semiclassica::milne
