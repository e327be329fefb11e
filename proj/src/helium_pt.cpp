#include "semiclassica/helium_pt.hpp"
#include "semiclassica/quadrature.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace semiclassica::heliumpt {

namespace {

// guards around the coincident-orbit divergences
const double kChiGuard = M_PI / 2 - 0.005;
const double kNuGuard = 0.995;

struct OrbitPair {
    double e, se;        // eccentricity, sqrt(1 - e^2)
    double c1, s1;       // rotation of orbit 1 by +theta/2
    double c2, s2;       // rotation of orbit 2 by -theta/2
};

OrbitPair make_orbits(double nu, double chi) {
    OrbitPair o;
    double e2 = 1.0 - nu * nu;
    o.e = e2 > 0 ? std::sqrt(e2) : 0.0;
    o.se = nu;
    double theta = M_PI - 2.0 * chi;
    o.c1 = std::cos(0.5 * theta);
    o.s1 = std::sin(0.5 * theta);
    o.c2 = o.c1;
    o.s2 = -o.s1;
    return o;
}

inline double separation(const OrbitPair& o, double cx1, double sx1, double cx2,
                         double sx2) {
    // orbit 1: rotate (cos xi - e, se sin xi) by +theta/2
    double x1 = cx1 - o.e, y1 = o.se * sx1;
    double X1 = o.c1 * x1 - o.s1 * y1, Y1 = o.s1 * x1 + o.c1 * y1;
    // orbit 2 is the mirrored ellipse rotated by -theta/2 (opposite circulation)
    double x2 = cx2 - o.e, y2 = -o.se * sx2;
    double X2 = o.c2 * x2 - o.s2 * y2, Y2 = o.s2 * x2 + o.c2 * y2;
    double dx = X1 - X2, dy = Y1 - Y2;
    return std::sqrt(dx * dx + dy * dy);
}

struct Panel2D {
    double x0, x1, y0, y1;
};

// tensor Gauss-Legendre on one panel
template <typename F>
double gl2d(const F& f, const Panel2D& p, const std::vector<double>& xs,
            const std::vector<double>& ws) {
    const int N = int(xs.size());
    double hx = 0.5 * (p.x1 - p.x0), cx = 0.5 * (p.x1 + p.x0);
    double hy = 0.5 * (p.y1 - p.y0), cy = 0.5 * (p.y1 + p.y0);
    double sum = 0;
    for (int i = 0; i < N; ++i) {
        double x = cx + hx * xs[i];
        double row = 0;
        for (int j = 0; j < N; ++j) row += ws[j] * f(x, cy + hy * xs[j]);
        sum += ws[i] * row;
    }
    return sum * hx * hy;
}

struct Quad2D {
    std::vector<double> xs, ws;
    double tol_rel;
    int max_depth = 14;

    Quad2D() {
        std::vector<double> x64, w64;
        numkit::gauss_legendre_nodes(6, -1.0, 1.0, x64, w64);
        xs = x64;
        ws = w64;
    }

    template <typename F>
    double refine(const F& f, const Panel2D& p, double coarse, double scale,
                  int depth) const {
        Panel2D c[4] = {{p.x0, 0.5 * (p.x0 + p.x1), p.y0, 0.5 * (p.y0 + p.y1)},
                        {0.5 * (p.x0 + p.x1), p.x1, p.y0, 0.5 * (p.y0 + p.y1)},
                        {p.x0, 0.5 * (p.x0 + p.x1), 0.5 * (p.y0 + p.y1), p.y1},
                        {0.5 * (p.x0 + p.x1), p.x1, 0.5 * (p.y0 + p.y1), p.y1}};
        double fine = 0, parts[4];
        for (int i = 0; i < 4; ++i) {
            parts[i] = gl2d(f, c[i], xs, ws);
            fine += parts[i];
        }
        if (depth >= max_depth || std::fabs(fine - coarse) < tol_rel * scale)
            return fine;
        double out = 0;
        for (int i = 0; i < 4; ++i) out += refine(f, c[i], parts[i], scale * 0.35, depth + 1);
        return out;
    }

    template <typename F>
    double integrate(const F& f, double x0, double x1, double y0, double y1) const {
        const int base = 4;
        double total = 0;
        for (int i = 0; i < base; ++i) {
            for (int j = 0; j < base; ++j) {
                Panel2D p{x0 + (x1 - x0) * i / base, x0 + (x1 - x0) * (i + 1) / base,
                          y0 + (y1 - y0) * j / base, y0 + (y1 - y0) * (j + 1) / base};
                double coarse = gl2d(f, p, xs, ws);
                total += refine(f, p, coarse, std::max(std::fabs(coarse), 0.05), 0);
            }
        }
        return total;
    }
};

} // namespace

double ellipse_separation(double nu, double chi, double xi1, double xi2) {
    OrbitPair o = make_orbits(nu, chi);
    return separation(o, std::cos(xi1), std::sin(xi1), std::cos(xi2), std::sin(xi2));
}

double scaled_interaction(double nu, double chi, double rel_tol) {
    if (nu < 0 || nu > 1 || chi < 0 || chi > M_PI / 2)
        throw InvalidArgument("scaled_interaction: nu in [0,1], chi in [0,pi/2]");
    if (chi > kChiGuard)
        throw OrbitCollision("scaled_interaction: orbits coincide as chi -> pi/2");
    if (nu > kNuGuard)
        throw OrbitCollision("scaled_interaction: congruent circles at nu -> 1");

    OrbitPair o = make_orbits(nu, chi);
    auto f = [&](double xi1, double xi2) {
        double d = separation(o, std::cos(xi1), std::sin(xi1), std::cos(xi2),
                              std::sin(xi2));
        double w1 = 1.0 - o.e * std::cos(xi1);
        double w2 = 1.0 - o.e * std::cos(xi2);
        return w1 * w2 / std::max(d, 1e-12);
    };
    Quad2D q;
    q.tol_rel = rel_tol;
    double I = q.integrate(f, 0, 2 * M_PI, 0, 2 * M_PI);
    return I / (4.0 * M_PI * M_PI);
}

double double_average(const EquivalentPair& pair, double rel_tol) {
    if (pair.Z <= 0 || pair.n < 1)
        throw InvalidArgument("double_average: Z > 0 and n >= 1 required");
    return pair.Z / (double(pair.n) * pair.n) *
           scaled_interaction(pair.nu, pair.chi(), rel_tol);
}

// ---------------------------------------------------------------------------
// grid + interpolation
// ---------------------------------------------------------------------------

namespace {

// Catmull-Rom segment through 4 points at parameter u in [0,1] between p1, p2
inline double catmull(double p0, double p1, double p2, double p3, double u) {
    return p1 + 0.5 * u * (p2 - p0 +
                           u * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                u * (3 * (p1 - p2) + p3 - p0)));
}

int cell_index(const std::vector<double>& axis, double x) {
    int n = int(axis.size());
    int i = int(std::upper_bound(axis.begin(), axis.end(), x) - axis.begin()) - 1;
    return std::clamp(i, 0, n - 2);
}

} // namespace

double EffectiveHamiltonianGrid::value(double nu, double chi) const {
    const int nn = int(nu_axis.size()), nc = int(chi_axis.size());
    if (nu < nu_axis.front() - 1e-12 || nu > nu_axis.back() + 1e-12 ||
        chi < chi_axis.front() - 1e-12 || chi > chi_axis.back() + 1e-12)
        throw InvalidArgument("EffectiveHamiltonianGrid: point outside the mesh");
    nu = std::clamp(nu, nu_axis.front(), nu_axis.back());
    chi = std::clamp(chi, chi_axis.front(), chi_axis.back());
    int i = cell_index(nu_axis, nu), j = cell_index(chi_axis, chi);
    double u = (nu - nu_axis[i]) / (nu_axis[i + 1] - nu_axis[i]);
    double t = (chi - chi_axis[j]) / (chi_axis[j + 1] - chi_axis[j]);

    double rows[4];
    for (int di = -1; di <= 2; ++di) {
        int ii = std::clamp(i + di, 0, nn - 1);
        double p[4];
        for (int dj = -1; dj <= 2; ++dj) {
            int jj = std::clamp(j + dj, 0, nc - 1);
            p[dj + 1] = v[ii * nc + jj];
        }
        rows[di + 1] = catmull(p[0], p[1], p[2], p[3], t);
    }
    return catmull(rows[0], rows[1], rows[2], rows[3], u);
}

EffectiveHamiltonianGrid EffectiveHamiltonianGrid::build(int n_nu, int n_chi,
                                                         double nu_max, double chi_max,
                                                         double quad_tol, int threads) {
    if (n_nu < 8 || n_chi < 8)
        throw InvalidArgument("EffectiveHamiltonianGrid: mesh too coarse");
    EffectiveHamiltonianGrid g;
    g.quad_tol = quad_tol;
    g.nu_axis.resize(n_nu);
    g.chi_axis.resize(n_chi);
    for (int i = 0; i < n_nu; ++i) g.nu_axis[i] = nu_max * i / (n_nu - 1.0);
    for (int j = 0; j < n_chi; ++j) g.chi_axis[j] = chi_max * j / (n_chi - 1.0);
    g.v.assign(size_t(n_nu) * n_chi, 0.0);

    int hw = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    hw = std::clamp(hw, 1, 16);
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n_nu) return;
            for (int j = 0; j < n_chi; ++j)
                g.v[size_t(i) * n_chi + j] =
                    scaled_interaction(g.nu_axis[i], g.chi_axis[j], quad_tol);
        }
    };
    for (int t = 0; t < hw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return g;
}

std::string EffectiveHamiltonianGrid::cache_key() const {
    std::ostringstream os;
    os << "v-grid v1 " << nu_axis.size() << "x" << chi_axis.size() << " numax="
       << nu_axis.back() << " chimax=" << chi_axis.back() << " tol=" << quad_tol;
    return os.str();
}

void EffectiveHamiltonianGrid::save_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw NumericalError("EffectiveHamiltonianGrid: cannot write " + path);
    f.precision(16);
    f << "# " << cache_key() << "\n# nu,chi,v\n";
    for (size_t i = 0; i < nu_axis.size(); ++i)
        for (size_t j = 0; j < chi_axis.size(); ++j)
            f << nu_axis[i] << ',' << chi_axis[j] << ',' << v[i * chi_axis.size() + j]
              << '\n';
}

EffectiveHamiltonianGrid EffectiveHamiltonianGrid::load_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw NumericalError("EffectiveHamiltonianGrid: cannot read " + path);
    EffectiveHamiltonianGrid g;
    std::string line;
    std::vector<std::array<double, 3>> rows;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        double a, b, c;
        char comma;
        is >> a >> comma >> b >> comma >> c;
        rows.push_back({a, b, c});
    }
    for (const auto& r : rows) {
        if (g.nu_axis.empty() || r[0] > g.nu_axis.back() + 1e-15) g.nu_axis.push_back(r[0]);
        if (g.nu_axis.size() == 1) g.chi_axis.push_back(r[1]);
    }
    g.v.resize(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) g.v[k] = rows[k][2];
    if (g.v.size() != g.nu_axis.size() * g.chi_axis.size())
        throw NumericalError("EffectiveHamiltonianGrid: malformed cache file");
    return g;
}

// ---------------------------------------------------------------------------
// contours and quantization
// ---------------------------------------------------------------------------

namespace {

// nu(chi) root of v(nu, chi) = w; v is monotone increasing in nu
double contour_root(double w, double chi, const EffectiveHamiltonianGrid& grid) {
    auto f = [&](double nu) { return grid.value(nu, chi) - w; };
    double lo = 0.0, hi = grid.nu_max();
    if (f(lo) >= 0) return 0.0;  // already above the level at nu = 0
    if (f(hi) <= 0) return -1.0; // level exits through the nu edge
    numkit::RootOptions ro;
    ro.x_tol = 1e-12;
    return numkit::find_root(f, lo, hi, ro);
}

double turning_point(double w, const EffectiveHamiltonianGrid& grid) {
    // chi_m: v(0, chi_m) = w; v(0, .) increases toward the singular line
    auto f = [&](double chi) { return grid.value(0.0, chi) - w; };
    if (f(0.0) >= 0) throw EmptyContour("contour: w at or below the well bottom");
    if (f(grid.chi_max()) <= 0)
        throw NoRoot("contour: turning point beyond the mesh (q -> 1 regime)");
    numkit::RootOptions ro;
    ro.x_tol = 1e-12;
    return numkit::find_root(f, 0.0, grid.chi_max(), ro);
}

} // namespace

Contour contour_nu_of_chi(double w, const EffectiveHamiltonianGrid& grid, int n_points) {
    Contour c;
    c.chi_m = turning_point(w, grid);
    c.chi.resize(n_points);
    c.nu.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        double chi = c.chi_m * i / (n_points - 1.0);
        double nu = contour_root(w, chi, grid);
        if (nu < 0)
            throw NoRoot("contour: level set leaves the mesh through the nu edge");
        c.chi[i] = chi;
        c.nu[i] = nu;
    }
    return c;
}

namespace {

double action_integral(double w, const EffectiveHamiltonianGrid& grid) {
    double chi_m = turning_point(w, grid);
    // sqrt clustering toward the turning point where nu -> 0
    numkit::Quadrature q(1e-9, 1e-7, 800, numkit::EndpointMode::inv_sqrt_right);
    return numkit::integrate(
        [&](double chi) {
            double nu = contour_root(w, chi, grid);
            if (nu < 0)
                throw NoRoot("quantize_w: contour leaves the mesh");
            return nu;
        },
        0.0, chi_m, q);
}

} // namespace

QuantizedLevel quantize_w(int n, int k, const EffectiveHamiltonianGrid& grid) {
    if (n < 1 || k < 0 || k > n - 1)
        throw InvalidArgument("quantize_w: requires 0 <= k <= n-1");
    double q = (2.0 * k + 1.0) / (2.0 * n);
    double target = M_PI / 2.0 * q;

    double w_lo = grid.value(0.0, 0.0) * (1.0 + 1e-9) + 1e-12;
    // largest level whose contour still closes inside the mesh
    double w_hi = std::min(grid.value(0.0, grid.chi_max()),
                           grid.value(grid.nu_max(), 0.0)) *
                  (1.0 - 1e-9);
    auto g = [&](double w) { return action_integral(w, grid) - target; };
    double glo = g(w_lo), ghi;
    try {
        ghi = g(w_hi);
    } catch (const NoRoot&) {
        throw NoRoot("quantize_w: q outside the attainable range of the mesh");
    }
    if (glo > 0) throw NoRoot("quantize_w: q below the smallest resolvable contour");
    if (ghi < 0)
        throw NoRoot("quantize_w: q outside attainable range (q -> 1 regime)");
    numkit::RootOptions ro;
    ro.x_tol = 1e-11;
    double w = numkit::find_root(g, w_lo, w_hi, ro);
    return {q, w, turning_point(w, grid)};
}

double first_order_energy(double Z, int n, int k, const EffectiveHamiltonianGrid& grid) {
    if (Z <= 0) throw InvalidArgument("first_order_energy: Z > 0 required");
    return Z / (double(n) * n) * quantize_w(n, k, grid).w;
}

} // namespace semiclassica::heliumpt
