#include "semiclassica/quadrature.hpp"
#include "semiclassica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace semiclassica::numkit {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule,
// tabulated for [-1,1] (QUADPACK dqk15 values).
const double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    if (std::isnan(fc)) throw NumericalError("integrate: NaN in integrand");
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        double fa = f(c - h * xgk[j]);
        double fb = f(c + h * xgk[j]);
        if (std::isnan(fa) || std::isnan(fb)) throw NumericalError("integrate: NaN in integrand");
        double fsum = fa + fb;
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    double value = resk * h;
    double err = std::fabs((resk - resg) * h);
    // QUADPACK-style error sharpening
    if (err != 0.0) err = std::pow(200.0 * err / std::fabs(value + 1e-300), 1.5) *
                          std::fabs(value) * 1e-2 + err * 1e-10;
    err = std::max(err, std::fabs((resk - resg) * h));
    return {a, b, value, err};
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                const Quadrature& q) {
    std::priority_queue<Panel> heap;
    heap.push(kronrod15(f, a, b));
    double total = heap.top().value, toterr = heap.top().error;
    int used = 1;
    while (toterr > std::max(q.abs_tol, q.rel_tol * std::fabs(total))) {
        if (used >= q.max_subdivisions)
            throw NonConvergent("integrate: subdivision budget exhausted");
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw NonConvergent("integrate: interval collapsed below machine precision");
        Panel left = kronrod15(f, worst.a, mid);
        Panel right = kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    return total;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Quadrature& q) {
    if (!(a < b)) throw InvalidArgument("integrate: requires a < b");
    switch (q.endpoint_mode) {
    case EndpointMode::regular:
        return adaptive(f, a, b, q);
    case EndpointMode::inv_sqrt_left: {
        // x = a + u^2 turns C/sqrt(x-a) into a bounded integrand
        auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
        return adaptive(g, 0.0, std::sqrt(b - a), q);
    }
    case EndpointMode::inv_sqrt_right: {
        auto g = [&](double u) { return 2.0 * u * f(b - u * u); };
        return adaptive(g, 0.0, std::sqrt(b - a), q);
    }
    case EndpointMode::inv_sqrt_both: {
        double m = 0.5 * (a + b);
        Quadrature half = q;
        half.abs_tol = 0.5 * q.abs_tol;
        auto gl = [&](double u) { return 2.0 * u * f(a + u * u); };
        auto gr = [&](double u) { return 2.0 * u * f(b - u * u); };
        return adaptive(gl, 0.0, std::sqrt(m - a), half) +
               adaptive(gr, 0.0, std::sqrt(b - m), half);
    }
    }
    throw InvalidArgument("integrate: unknown endpoint mode");
}

namespace {

// Newton iteration on Legendre polynomials; nodes for [-1,1].
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::fabs(z - z1) > 1e-15);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

} // namespace

void gauss_legendre_nodes(int n, double a, double b,
                          std::vector<double>& x, std::vector<double>& w) {
    std::vector<double> xs, ws;
    legendre_rule(n, xs, ws);
    x.resize(n);
    w.resize(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[i] = c + h * xs[i];
        w[i] = h * ws[i];
    }
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n) {
    std::vector<double> x, w;
    gauss_legendre_nodes(n, a, b, x, w);
    double s = 0;
    for (int i = 0; i < n; ++i) s += w[i] * f(x[i]);
    return s;
}

std::complex<double> gauss_legendre_complex(
    const std::function<std::complex<double>(double)>& f, int n) {
    std::vector<double> x, w;
    gauss_legendre_nodes(n, 0.0, 1.0, x, w);
    std::complex<double> s = 0;
    for (int i = 0; i < n; ++i) s += w[i] * f(x[i]);
    return s;
}

} // namespace semiclassica::numkit
