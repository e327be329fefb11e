#include "cli_core.hpp"

#include "semiclassica/classrep.hpp"
#include "semiclassica/collisions.hpp"
#include "semiclassica/crossed_fields.hpp"
#include "semiclassica/decay.hpp"
#include "semiclassica/errors.hpp"
#include "semiclassica/helium_collinear.hpp"
#include "semiclassica/helium_pt.hpp"
#include "semiclassica/milne.hpp"
#include "semiclassica/stark.hpp"
#include "semiclassica/units.hpp"
#include "semiclassica/wkb1d.hpp"
#include "semiclassica/zeeman.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace semiclassica::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// split a grid of independent evaluations over --jobs workers, order preserved
template <typename F>
std::vector<std::vector<double>> parallel_rows(int jobs, int count, const F& eval) {
    std::vector<std::vector<double>> rows(count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) rows[i] = eval(i);
        return rows;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            rows[i] = eval(i);
        }
    };
    std::vector<std::future<void>> fut;
    for (int j = 0; j < jobs; ++j) fut.push_back(std::async(std::launch::async, worker));
    for (auto& f : fut) f.get();
    return rows;
}

} // namespace

void emit_table(const TableOutput& t, const std::string& out_path,
                const std::string& format, double wall_seconds) {
    json sidecar;
    sidecar["tool"] = kVersion;
    sidecar["subcommand"] = t.subcommand;
    sidecar["parameters"] = t.params;
    sidecar["columns"] = t.columns;
    sidecar["wall_seconds"] = wall_seconds;

    if (format == "csv") {
        std::ofstream f(out_path);
        if (!f) throw InvalidArgument("cannot open output file: " + out_path);
        f << "# " << kVersion << "\n# subcommand: " << t.subcommand << "\n";
        for (const auto& [k, v] : t.params) f << "# " << k << " = " << v << "\n";
        for (size_t i = 0; i < t.columns.size(); ++i)
            f << (i ? "," : "") << t.columns[i];
        f << "\n";
        for (const auto& row : t.rows) {
            for (size_t i = 0; i < row.size(); ++i)
                f << (i ? "," : "") << format_number(row[i]);
            f << "\n";
        }
    } else if (format == "json") {
        json doc = sidecar;
        doc["rows"] = t.rows;
        std::ofstream f(out_path);
        if (!f) throw InvalidArgument("cannot open output file: " + out_path);
        f << doc.dump(2) << "\n";
    } else {
        throw InvalidArgument("unknown format: " + format);
    }
    std::ofstream side(out_path + ".meta.json");
    side << sidecar.dump(2) << "\n";
}

namespace {

struct CommonOpts {
    std::string out = "out.csv";
    std::string format = "csv";
    std::uint64_t seed = 1;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "output file path");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", c.seed, "deterministic seed for stochastic pieces");
    cmd->add_option("--jobs", c.jobs, "parallel workers over independent grid points")
        ->check(CLI::Range(1, 64));
}

TableOutput run_decay(int n, int l) {
    TableOutput t;
    t.subcommand = "decay";
    t.columns = {"n", "l", "tau_cl_ns", "tau_cl_au"};
    t.params = {{"n", std::to_string(n)}, {"l", std::to_string(l)}};
    t.rows.push_back({double(n), double(l), decay::lifetime_classical(n, l) * 1e9,
                      decay::lifetime_classical_au(n, l)});
    return t;
}

TableOutput run_stark(double field_kv_cm, int n1, int n2, int m) {
    TableOutput t;
    t.subcommand = "stark";
    t.columns = {"n1", "n2", "m", "E_au", "Gamma_au", "iterations", "residual"};
    t.params = {{"field_kv_cm", format_number(field_kv_cm)},
                {"field_au", format_number(units::kv_cm_to_au(field_kv_cm))},
                {"n1", std::to_string(n1)},
                {"n2", std::to_string(n2)},
                {"m", std::to_string(m)}};
    stark::ComplexResonance r =
        stark::solve_resonance({units::kv_cm_to_au(field_kv_cm), m, n1, n2});
    t.rows.push_back({double(n1), double(n2), double(m), r.E.real(), r.Gamma,
                      double(r.iterations), r.residual});
    return t;
}

TableOutput run_frozen_planet(int s, int k, int l) {
    TableOutput t;
    t.subcommand = "frozen-planet";
    t.columns = {"s", "k", "l", "E_au"};
    t.params = {{"s", std::to_string(s)},
                {"k", std::to_string(k)},
                {"l", std::to_string(l)},
                {"S_sc", format_number(collinear::FrozenPlanetQN::S_sc)},
                {"gamma1", format_number(collinear::FrozenPlanetQN::gamma1)},
                {"gamma2", format_number(collinear::FrozenPlanetQN::gamma2)}};
    t.rows.push_back({double(s), double(k), double(l),
                      collinear::frozen_planet_energy({s, k, l})});
    return t;
}

TableOutput run_zeeman(int n, int m, const std::string& branch, int index, bool full) {
    TableOutput t;
    t.subcommand = "zeeman";
    t.columns = {"index", "epsilon_osc", "epsilon", "lambda", "parity"};
    t.params = {{"n", std::to_string(n)},
                {"m", std::to_string(m)},
                {"branch", branch},
                {"index", std::to_string(index)},
                {"full_quantization", full ? "true" : "false"}};
    auto br = branch == "inside" ? zeeman::Branch::inside_cone
                                 : zeeman::Branch::outside_cone;
    double osc = zeeman::harmonic_shift(n, m, br, index);
    double eps = osc, lambda = 0, parity = 0;
    if (full) {
        auto st = zeeman::quantize_lambda(n, m, br, index);
        eps = st.epsilon;
        lambda = st.lambda;
        parity = st.parity;
    }
    t.rows.push_back({double(index), osc, eps, lambda, parity});
    return t;
}

TableOutput run_detach(double d, double eps_b, double emin_ev, double emax_ev,
                       int points, int jobs) {
    collisions::NegativeIonModel model{d, eps_b};
    TableOutput t;
    t.subcommand = "detach";
    t.columns = {"E_eV", "sigma_au2", "sigma_cm2"};
    t.params = {{"d_au", format_number(d)},
                {"eps_b_au", format_number(eps_b)},
                {"threshold_eV", format_number(units::au_to_ev(model.threshold()))},
                {"emin_eV", format_number(emin_ev)},
                {"emax_eV", format_number(emax_ev)},
                {"points", std::to_string(points)}};
    t.rows = parallel_rows(jobs, points, [&](int i) -> std::vector<double> {
        double e_ev = emin_ev + (emax_ev - emin_ev) * i / std::max(1, points - 1);
        double s = collisions::detachment_cross_section(units::ev_to_au(e_ev), model);
        return {e_ev, s, units::au2_to_cm2(s)};
    });
    return t;
}

TableOutput run_bea(double z, int n, int l, double vmin, double vmax, int points,
                    double eps_ev, int jobs) {
    collisions::BeaTarget target = collisions::BeaTarget::hydrogenic(z, n, l);
    double eps = eps_ev > 0 ? units::ev_to_au(eps_ev) : std::fabs(target.E_nl);
    TableOutput t;
    t.subcommand = "bea";
    t.columns = {"v_p_au", "sigma_au2", "sigma_cm2", "sigma_asymptote_au2"};
    t.params = {{"Z_t", format_number(z)},
                {"n", std::to_string(n)},
                {"l", std::to_string(l)},
                {"eps_au", format_number(eps)},
                {"eps_eV", format_number(units::au_to_ev(eps))},
                {"vmin_au", format_number(vmin)},
                {"vmax_au", format_number(vmax)},
                {"points", std::to_string(points)}};
    t.rows = parallel_rows(jobs, points, [&](int i) -> std::vector<double> {
        double v = vmin * std::pow(vmax / vmin, double(i) / std::max(1, points - 1));
        double s = collisions::bea_cross_section(target, v, eps);
        return {v, s, units::au2_to_cm2(s), collisions::bea_asymptote(target, v, eps)};
    });
    return t;
}

TableOutput run_wkb(const std::string& potential, int l, int m, int nr_max,
                    double elo, double ehi) {
    wkb1d::RadialProblem p;
    p.l = l;
    p.m = m;
    if (potential == "coulomb") {
        p.potential = [](double r) { return -1.0 / r; };
        p.inner_caustic = l == 0 ? wkb1d::CausticKind::coulomb_singularity
                                 : wkb1d::CausticKind::turning_point;
    } else if (potential == "oscillator") {
        p.potential = [](double r) { return 0.5 * r * r; };
    } else {
        throw InvalidArgument("wkb: unknown potential '" + potential + "'");
    }
    TableOutput t;
    t.subcommand = "wkb";
    t.columns = {"n_r", "l", "m", "E_au", "action_residual"};
    t.params = {{"potential", potential}, {"l", std::to_string(l)},
                {"m", std::to_string(m)}, {"nr_max", std::to_string(nr_max)},
                {"E_lo_au", format_number(elo)}, {"E_hi_au", format_number(ehi)}};
    for (const auto& s : wkb1d::radial_spectrum(p, nr_max, elo, ehi))
        t.rows.push_back({double(s.n_r), double(s.l), double(s.m), s.energy,
                          s.action_residual});
    return t;
}

TableOutput run_crossed(int n, double n1, double n2, double f_kv_cm, double b_tesla,
                        double cos_theta, double rate, std::uint64_t seed) {
    fields::FieldConfig cfg;
    cfg.n = n;
    cfg.n1 = n1;
    cfg.n2 = n2;
    double F = units::kv_cm_to_au(f_kv_cm);
    double B = units::tesla_to_au(b_tesla);
    double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    cfg.F = {F, 0, 0};
    cfg.B = {B * cos_theta, B * sin_theta, 0};

    fields::QuantizedState st = fields::quantized_initial_conditions(cfg, seed);
    fields::SwitchingParams run;
    run.rate = rate;
    fields::SwitchingRun out = fields::adiabatic_switch(cfg, st, run);

    TableOutput t;
    t.subcommand = "crossed";
    t.columns = {"t_au", "lambda", "E_au"};
    t.params = {{"n", std::to_string(n)},   {"n1", format_number(n1)},
                {"n2", format_number(n2)},  {"field_kv_cm", format_number(f_kv_cm)},
                {"b_tesla", format_number(b_tesla)},
                {"cos_theta", format_number(cos_theta)},
                {"rate_au", format_number(rate)},
                {"seed", std::to_string(seed)},
                {"E_first_order_au", format_number(fields::first_order_energy(cfg))},
                {"final_E_au", format_number(out.final_energy)},
                {"ionized", out.ionized ? "true" : "false"}};
    for (const auto& s : out.samples) t.rows.push_back({s.t, s.lambda, s.energy});
    return t;
}

TableOutput run_helium_pt(int n, int k, double z, const std::string& cache) {
    heliumpt::EffectiveHamiltonianGrid grid = [&]() {
        if (!cache.empty() && fs::exists(cache))
            return heliumpt::EffectiveHamiltonianGrid::load_csv(cache);
        auto g = heliumpt::EffectiveHamiltonianGrid::build();
        if (!cache.empty()) g.save_csv(cache);
        return g;
    }();
    auto lev = heliumpt::quantize_w(n, k, grid);
    TableOutput t;
    t.subcommand = "helium-pt";
    t.columns = {"n", "k", "q", "w", "chi_m", "E1_au"};
    t.params = {{"n", std::to_string(n)}, {"k", std::to_string(k)},
                {"Z", format_number(z)},  {"grid", grid.cache_key()}};
    t.rows.push_back({double(n), double(k), lev.q, lev.w, lev.chi_m,
                      z / (double(n) * n) * lev.w});
    return t;
}

TableOutput run_classrep(const std::string& mode, int n, int k, double omega,
                         double gamma, int points) {
    TableOutput t;
    t.subcommand = "classrep";
    t.params = {{"mode", mode},           {"n", std::to_string(n)},
                {"k", std::to_string(k)}, {"omega_au", format_number(omega)},
                {"gamma", format_number(gamma)}, {"points", std::to_string(points)}};
    if (mode == "ho-distribution") {
        t.columns = {"eps_au", "phi_per_au"};
        auto d = classrep::ho_distribution(n, omega, points);
        for (size_t i = 0; i < d.eps.size(); ++i) t.rows.push_back({d.eps[i], d.phi[i]});
    } else if (mode == "feynman") {
        t.columns = {"n", "k", "gamma", "P_closed_form", "P_double_integral"};
        classrep::FeynmanDrive drive{omega, gamma * omega};
        auto p = classrep::feynman_transition(n, k, drive);
        t.rows.push_back({double(n), double(k), gamma, p.closed_form, p.double_integral});
    } else {
        throw InvalidArgument("classrep: unknown mode '" + mode + "'");
    }
    return t;
}

TableOutput run_milne(double nu, double alpha, double x, int nmax, double hbar) {
    milne::PowerLawCase c;
    c.nu = nu;
    c.alpha = alpha;
    c.x = x;
    if (const char* env = std::getenv("SEMICLASSICA_PRECISION"))
        c.precision = std::max(30, std::atoi(env));
    auto terms = milne::lambda_recurrence(c, nmax);

    TableOutput t;
    t.subcommand = "milne";
    t.columns = {"order", "log10_abs_term", "term"};
    t.params = {{"nu", format_number(nu)},       {"alpha", format_number(alpha)},
                {"x", format_number(x)},         {"nmax", std::to_string(nmax)},
                {"hbar", format_number(hbar)},   {"precision_digits",
                 std::to_string(c.precision)}};
    try {
        auto ci = milne::critical_index(c, hbar);
        t.params["critical_index"] = std::to_string(ci.argmin);
        t.params["critical_index_prediction"] = format_number(ci.prediction);
    } catch (const milne::NoMinimum&) {
        t.params["critical_index"] = "series truncates exactly";
    }
    for (int i = 0; i < int(terms.size()); ++i) {
        double v = double(terms[i]);
        double lg = terms[i] == 0 ? -INFINITY : double(log10(abs(terms[i])));
        t.rows.push_back({double(i), lg, v});
    }
    return t;
}

// ---------------------------------------------------------------------------
// golden-table regeneration
// ---------------------------------------------------------------------------

class FixtureMissing : public InvalidArgument {
public:
    explicit FixtureMissing(const std::string& msg) : InvalidArgument(msg) {}
};

TableOutput dispatch_fixture(const json& spec) {
    const std::string sub = spec.at("subcommand");
    const json& a = spec.at("args");
    if (sub == "decay") return run_decay(a.at("n"), a.at("l"));
    if (sub == "stark")
        return run_stark(a.at("field_kv_cm"), a.at("n1"), a.at("n2"), a.at("m"));
    if (sub == "frozen-planet") return run_frozen_planet(a.at("s"), a.at("k"), a.at("l"));
    if (sub == "zeeman")
        return run_zeeman(a.at("n"), a.at("m"), a.at("branch"), a.at("index"),
                          a.value("full", false));
    if (sub == "detach")
        return run_detach(a.at("d"), a.at("eps_b"), a.at("emin_ev"), a.at("emax_ev"),
                          a.at("points"), 1);
    throw InvalidArgument("golden: fixture subcommand not supported: " + sub);
}

int run_golden(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw FixtureMissing("golden: spec directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw FixtureMissing("golden: no fixtures in " + dir);

    int failures = 0;
    for (const auto& path : files) {
        std::ifstream f(path);
        json fixture = json::parse(f);
        bool ok = true;
        std::string why;
        for (const auto& spec : fixture.at("cases")) {
            TableOutput got = dispatch_fixture(spec);
            const auto& expect = spec.at("expect");
            double tol_rel = spec.value("tol_rel", 0.0);
            double tol_abs = spec.value("tol_abs", 0.0);
            std::vector<int> cols = spec.value("check_columns", std::vector<int>{});
            if (expect.size() != got.rows.size()) {
                ok = false;
                why = "row count mismatch";
                break;
            }
            for (size_t i = 0; ok && i < got.rows.size(); ++i) {
                const auto& erow = expect[i];
                for (size_t jj = 0; jj < cols.size(); ++jj) {
                    int c = cols[jj];
                    double want = erow[jj];
                    double have = got.rows[i][c];
                    double tol = tol_abs + tol_rel * std::fabs(want);
                    if (std::fabs(have - want) > tol) {
                        ok = false;
                        std::ostringstream os;
                        os << "row " << i << " column " << got.columns[c] << ": got "
                           << have << ", want " << want << " (tol " << tol << ")";
                        why = os.str();
                        break;
                    }
                }
            }
            if (!ok) break;
        }
        std::printf("%-4s %s\n", ok ? "PASS" : "FAIL", path.filename().string().c_str());
        if (!ok) {
            std::printf("     %s\n", why.c_str());
            ++failures;
        }
    }
    std::printf("golden: %d/%zu fixtures passed\n", int(files.size()) - failures,
                files.size());
    return failures == 0 ? kExitOk : 1;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"semiclassical atomic-physics toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts common;

    // decay
    auto* c_decay = app.add_subcommand("decay", "classical radiative lifetimes");
    int d_n = 2, d_l = 1;
    c_decay->add_option("--n", d_n, "principal quantum number")->required();
    c_decay->add_option("--l", d_l, "angular momentum quantum number")->required();
    add_common(c_decay, common);

    // stark
    auto* c_stark = app.add_subcommand("stark", "broad Stark resonances");
    double s_field = 8.0;
    int s_n1 = 23, s_n2 = 0, s_m = 0;
    c_stark->add_option("--field-kv-cm", s_field, "electric field in kV/cm")->required();
    c_stark->add_option("--n1", s_n1)->required();
    c_stark->add_option("--n2", s_n2)->required();
    c_stark->add_option("--m", s_m)->required();
    add_common(c_stark, common);

    // frozen-planet
    auto* c_fp = app.add_subcommand("frozen-planet", "collinear helium series");
    int f_s = 4, f_k = 0, f_l = 0;
    c_fp->add_option("--s", f_s)->required();
    c_fp->add_option("--k", f_k)->required();
    c_fp->add_option("--l", f_l)->required();
    add_common(c_fp, common);

    // zeeman
    auto* c_zee = app.add_subcommand("zeeman", "quadratic Zeeman manifold shifts");
    int z_n = 40, z_m = 0, z_index = 0;
    std::string z_branch = "inside";
    bool z_full = false;
    c_zee->add_option("--n", z_n)->required();
    c_zee->add_option("--m", z_m)->required();
    c_zee->add_option("--branch", z_branch)->check(CLI::IsMember({"inside", "outside"}));
    c_zee->add_option("--index", z_index, "s (inside) or k (outside)");
    c_zee->add_flag("--full", z_full, "solve the full quantization (not just harmonic)");
    add_common(c_zee, common);

    // detach
    auto* c_det = app.add_subcommand("detach", "electron-impact detachment curve");
    double det_d = 2.7, det_eps = 0.0278, det_emin = 2.0, det_emax = 40.0;
    int det_points = 100;
    c_det->add_option("--d", det_d, "oscillation amplitude, au");
    c_det->add_option("--eps-b", det_eps, "binding energy, au");
    c_det->add_option("--emin-ev", det_emin);
    c_det->add_option("--emax-ev", det_emax);
    c_det->add_option("--points", det_points);
    add_common(c_det, common);

    // bea
    auto* c_bea = app.add_subcommand("bea", "binary-encounter cross sections");
    double b_z = 1.0, b_vmin = 1.0, b_vmax = 12.0, b_eps_ev = -1.0;
    int b_n = 1, b_l = 0, b_points = 40;
    c_bea->add_option("--z", b_z, "target nuclear charge");
    c_bea->add_option("--n", b_n)->required();
    c_bea->add_option("--l", b_l)->required();
    c_bea->add_option("--vmin", b_vmin, "projectile speed range, au");
    c_bea->add_option("--vmax", b_vmax);
    c_bea->add_option("--points", b_points);
    c_bea->add_option("--energy-ev", b_eps_ev,
                      "energy transfer threshold in eV (default: ionization)");
    add_common(c_bea, common);

    // wkb
    auto* c_wkb = app.add_subcommand("wkb", "radial semiclassical spectra");
    std::string w_pot = "coulomb";
    int w_l = 0, w_m = 0, w_nrmax = 3;
    double w_elo = -0.6, w_ehi = -0.01;
    c_wkb->add_option("--potential", w_pot)->check(CLI::IsMember({"coulomb", "oscillator"}));
    c_wkb->add_option("--l", w_l);
    c_wkb->add_option("--m", w_m);
    c_wkb->add_option("--nr-max", w_nrmax);
    c_wkb->add_option("--elo", w_elo, "bracket lower edge, au");
    c_wkb->add_option("--ehi", w_ehi, "bracket upper edge, au");
    add_common(c_wkb, common);

    // crossed
    auto* c_cross = app.add_subcommand("crossed", "adiabatic switching in crossed fields");
    int x_n = 3;
    double x_n1 = 1, x_n2 = 1, x_f = 0.005, x_b = 0.1, x_cos = 0.5, x_rate = 2.5e-5;
    c_cross->add_option("--n", x_n)->required();
    c_cross->add_option("--n1", x_n1)->required();
    c_cross->add_option("--n2", x_n2)->required();
    c_cross->add_option("--field-kv-cm", x_f, "electric field in kV/cm");
    c_cross->add_option("--b-tesla", x_b, "magnetic field in tesla");
    c_cross->add_option("--cos-theta", x_cos, "angle between the fields");
    c_cross->add_option("--rate", x_rate, "switching rate dlambda/dt, au");
    add_common(c_cross, common);

    // helium-pt
    auto* c_he = app.add_subcommand("helium-pt", "equivalent-electron perturbation theory");
    int h_n = 3, h_k = 0;
    double h_z = 2.0;
    std::string h_cache;
    c_he->add_option("--n", h_n)->required();
    c_he->add_option("--k", h_k)->required();
    c_he->add_option("--z", h_z, "nuclear charge");
    c_he->add_option("--grid-cache", h_cache, "CSV cache path for the v(nu,chi) mesh");
    add_common(c_he, common);

    // classrep
    auto* c_cr = app.add_subcommand("classrep", "classical representation tools");
    std::string cr_mode = "ho-distribution";
    int cr_n = 0, cr_k = 0, cr_points = 200;
    double cr_omega = 1.0, cr_gamma = 1.0;
    c_cr->add_option("--mode", cr_mode)->check(CLI::IsMember({"ho-distribution", "feynman"}));
    c_cr->add_option("--n", cr_n);
    c_cr->add_option("--k", cr_k);
    c_cr->add_option("--omega", cr_omega, "oscillator frequency, au");
    c_cr->add_option("--gamma", cr_gamma, "drive fluence in units of hbar omega");
    c_cr->add_option("--points", cr_points);
    add_common(c_cr, common);

    // milne
    auto* c_mil = app.add_subcommand("milne", "higher-order wavelength series");
    double m_nu = 0.5, m_alpha = 1.0, m_x = 1.0, m_hbar = 1.0;
    int m_nmax = 20;
    c_mil->add_option("--nu", m_nu, "potential exponent");
    c_mil->add_option("--alpha", m_alpha);
    c_mil->add_option("--x", m_x);
    c_mil->add_option("--nmax", m_nmax);
    c_mil->add_option("--hbar", m_hbar);
    add_common(c_mil, common);

    // golden
    auto* c_gold = app.add_subcommand("golden", "rerun stored fixtures and diff");
    std::string g_dir;
    c_gold->add_option("--spec-dir", g_dir, "directory of fixture json files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        TableOutput out;
        if (app.got_subcommand(c_decay)) out = run_decay(d_n, d_l);
        else if (app.got_subcommand(c_stark)) out = run_stark(s_field, s_n1, s_n2, s_m);
        else if (app.got_subcommand(c_fp)) out = run_frozen_planet(f_s, f_k, f_l);
        else if (app.got_subcommand(c_zee)) out = run_zeeman(z_n, z_m, z_branch, z_index, z_full);
        else if (app.got_subcommand(c_det))
            out = run_detach(det_d, det_eps, det_emin, det_emax, det_points, common.jobs);
        else if (app.got_subcommand(c_bea))
            out = run_bea(b_z, b_n, b_l, b_vmin, b_vmax, b_points, b_eps_ev, common.jobs);
        else if (app.got_subcommand(c_wkb))
            out = run_wkb(w_pot, w_l, w_m, w_nrmax, w_elo, w_ehi);
        else if (app.got_subcommand(c_cross))
            out = run_crossed(x_n, x_n1, x_n2, x_f, x_b, x_cos, x_rate, common.seed);
        else if (app.got_subcommand(c_he)) out = run_helium_pt(h_n, h_k, h_z, h_cache);
        else if (app.got_subcommand(c_cr))
            out = run_classrep(cr_mode, cr_n, cr_k, cr_omega, cr_gamma, cr_points);
        else if (app.got_subcommand(c_mil))
            out = run_milne(m_nu, m_alpha, m_x, m_nmax, m_hbar);
        else if (app.got_subcommand(c_gold)) return run_golden(g_dir);

        out.params["seed"] = std::to_string(common.seed);
        out.params["jobs"] = std::to_string(common.jobs);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit_table(out, common.out, common.format, wall);
        std::printf("wrote %s (%zu rows)\n", common.out.c_str(), out.rows.size());
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}

} // namespace semiclassica::cli
