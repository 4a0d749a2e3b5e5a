#include "twinbeam/pipeline.hpp"

#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "twinbeam/analysis.hpp"
#include "twinbeam/decomposition.hpp"
#include "twinbeam/errors.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/io.hpp"
#include "twinbeam/kernel.hpp"
#include "twinbeam/units.hpp"
#include "twinbeam/validity.hpp"

namespace twinbeam {

namespace fs = std::filesystem;

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

struct Context {
    RunConfig cfg;
    Setup setup;
    fs::path out;
    std::vector<std::pair<std::string, std::string>> files;       // name, units
    std::vector<std::pair<std::string, std::string>> indicators;  // name, value
};

void note_file(Context& c, const std::string& name, const std::string& units) { c.files.push_back({name, units}); }

void write_grid(Context& c, const std::string& stem, const GridFile& g, const std::string& units) {
    if (c.cfg.format == "csv") {
        write_grid_csv((c.out / (stem + ".csv")).string(), g, units);
        note_file(c, stem + ".csv", units);
    } else {
        write_grid_bin((c.out / (stem + ".bin")).string(), g);
        note_file(c, stem + ".bin", units);
    }
}

void write_table(Context& c, const std::string& name, const CsvTable& t) {
    t.write((c.out / name).string());
    note_file(c, name, t.units);
}

struct Decomp {
    Grid2D grid;
    ModeSet modes;
    std::vector<Orders> orders;
};

Decomp decompose(Context& c) {
    Decomp d;
    d.grid = stage("grid", [&] { return Grid2D::make(c.setup.filter, c.cfg.nq, c.cfg.nW, c.cfg.margin); });
    KernelMatrix k = stage("kernel", [&] { return build_weighted_jsa(d.grid, c.setup); });
    if (c.cfg.kernel_dump) {
        GridFile g{k.J, {0, 1, int(k.J.rows())}, {0, 1, int(k.J.cols())}};
        write_grid(c, "kernel", g, "rows: signal point index iq*nomega+jW; cols: mirrored idler point; value: J*hq*hW [A0 um^-1 fs^-1]");
    }
    Eigenpairs e = stage("decomposition", [&] { return spectral_decompose(k); });
    d.modes = takagi_reduce(e);
    const double rec = stage("decomposition", [&] { return reconstruction_error(k, d.modes, d.modes.size()); });
    c.indicators.push_back({"symmetry_residual", num(e.symmetry_residual)});
    c.indicators.push_back({"reconstruction_error_full", num(rec)});
    c.indicators.push_back({"orthonormality_error_first_100", num(orthonormality_error(d.modes, 100))});
    c.indicators.push_back({"s20_over_s1", num(d.modes.s(std::min(19, d.modes.size() - 1)) / d.modes.s(0))});
    c.indicators.push_back({"hq_rad_per_um", num(d.grid.hq)});
    c.indicators.push_back({"hW_rad_per_fs", num(d.grid.hW)});
    const int n = std::min(d.modes.size(), 300);
    for (int l = 0; l < n; ++l) d.orders.push_back(classify_orders(d.modes, l));
    return d;
}

double resolve_mu(Context& c, const Decomp* d, MuFit* fit_out) {
    if (c.cfg.mu && !fit_out) return *c.cfg.mu;
    if (!d) throw StageError("fit", "mu fit requires a numerical decomposition");
    MuFit f = stage("fit", [&] { return fit_mu(d->modes, c.setup); });
    if (f.at_boundary) std::cerr << "warning: mu fit reached the search bracket boundary\n";
    if (fit_out) *fit_out = f;
    c.indicators.push_back({"mu_fit", num(f.mu)});
    c.indicators.push_back({"mu_fit_mean_overlap", num(f.mean_overlap)});
    return c.cfg.mu ? *c.cfg.mu : f.mu;
}

std::string validity_text(const ValidityReport& v) {
    std::string s;
    s += fmt::format("tau_wo_max_fs = {}\n", num(v.tau_wo_max));
    s += fmt::format("x_wo_max_um = {}\n", num(v.x_wo_max));
    s += fmt::format("y_wo_max_um = {}\n", num(v.y_wo_max));
    s += fmt::format("rho_p_rad = {}\n", num(v.rho_p));
    s += fmt::format("rho_p_L_um = {}\n", num(v.rho_p_L));
    s += fmt::format("rho_p_at_pump_frequency_rad = {}\n", num(v.rho_p_pump));
    s += fmt::format("tau_npmpa_fs = {}\n", num(v.tau_npmpa));
    s += fmt::format("w_npmpa_um = {}\n", num(v.w_npmpa));
    s += fmt::format("tau_ratio = {} (pass {} at {}, comfortable {} at {})\n", num(v.tau_ratio), v.tau_pass,
                     pass_threshold, v.tau_comfortable, comfortable_threshold);
    s += fmt::format("w_ratio = {} (pass {} at {}, comfortable {} at {})\n", num(v.w_ratio), v.w_pass,
                     pass_threshold, v.w_comfortable, comfortable_threshold);
    s += fmt::format("within_validity = {}\n", v.tau_pass && v.w_pass);
    if (v.w_discrepancy)
        s += fmt::format("w_npmpa_discrepancy: computed {} um vs quoted {} um (delta {} um)\n", num(v.w_npmpa),
                         quoted_w_npmpa, num(v.w_npmpa - quoted_w_npmpa));
    return s;
}

CsvTable validity_table(const ValidityReport& v) {
    CsvTable t;
    t.units = "quantity,value,unit";
    t.columns = {"quantity", "value", "unit"};
    t.add({"tau_wo_max", num(v.tau_wo_max), "fs"});
    t.add({"x_wo_max", num(v.x_wo_max), "um"});
    t.add({"y_wo_max", num(v.y_wo_max), "um"});
    t.add({"rho_p", num(v.rho_p), "rad"});
    t.add({"rho_p_L", num(v.rho_p_L), "um"});
    t.add({"rho_p_at_pump_frequency", num(v.rho_p_pump), "rad"});
    t.add({"tau_npmpa", num(v.tau_npmpa), "fs"});
    t.add({"w_npmpa", num(v.w_npmpa), "um"});
    t.add({"tau_ratio", num(v.tau_ratio), "1"});
    t.add({"w_ratio", num(v.w_ratio), "1"});
    t.add({"tau_pass", v.tau_pass ? "1" : "0", "flag"});
    t.add({"w_pass", v.w_pass ? "1" : "0", "flag"});
    t.add({"tau_comfortable", v.tau_comfortable ? "1" : "0", "flag"});
    t.add({"w_comfortable", v.w_comfortable ? "1" : "0", "flag"});
    t.add({"w_npmpa_discrepancy", v.w_discrepancy ? "1" : "0", "flag"});
    return t;
}

ValidityReport validity(const Context& c) {
    return stage("validity", [&] { return npmpa_bounds(walkoff_quantities(c.setup), c.setup.pump); });
}

void write_metadata(Context& c, const std::string& sub) {
    std::ofstream f(c.out / "metadata.txt");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[64];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    f << "# generated: " << ts << "\n";
    f << fmt::format("twinbeam {}\nsubcommand {}\neigen {}.{}.{}\nfftw {}\n", version, sub, EIGEN_WORLD_VERSION,
                     EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION, fftw_version);
    f << "\n[config " << (c.cfg.path.empty() ? "<inline>" : c.cfg.path) << "]\n" << c.cfg.source << "\n";
    const Setup& s = c.setup;
    f << "\n[derived] units: um, fs, rad/fs, rad/um\n";
    f << fmt::format("k0 = {}\nk0p = {}\nk0pp = {}\nkp = {}\nkpp = {}\n", num(s.coeffs.k0), num(s.coeffs.k0p),
                     num(s.coeffs.k0pp), num(s.coeffs.kp), num(s.coeffs.kpp));
    f << fmt::format("gamma = {}\nq_d = {}\ntheta_s_deg = {}\nQ0 = {}\nOmega0 = {}\neta_s = {}\n", num(s.pqda.gamma),
                     num(s.pqda.q_d), num(s.pqda.theta_s * 180 / pi), num(s.pqda.Q0), num(s.pqda.Omega0),
                     num(s.pqda.eta_s));
    f << fmt::format("qx_min = {}\nqx_max = {}\nqy_max = {}\nOmega_max = {}\ntau0 = {}\nw0 = {}\n",
                     num(s.filter.qx_min), num(s.filter.qx_max), num(s.filter.qy_max), num(s.filter.Omega_max),
                     num(s.pqda.tau0), num(s.pqda.w0));
    f << fmt::format("grid = {}x{} margin {}\n", c.cfg.nq, c.cfg.nW, num(c.cfg.margin));
    f << "\n[indicators]\n";
    for (const auto& [k, v] : c.indicators) f << k << " = " << v << "\n";
    f << "\n[files]\n";
    for (const auto& [k, v] : c.files) f << k << ": " << v << "\n";
    const ValidityReport v = validity(c);
    f << "\n[validity]\n" << validity_text(v);
    f << "\n[validity csv]\n";
    const CsvTable t = validity_table(v);
    f << "quantity,value,unit\n";
    for (const auto& r : t.rows) f << r[0] << "," << r[1] << "," << r[2] << "\n";
}

// --- subcommands ---

void cmd_phasematch(Context& c) {
    const Setup& s = c.setup;
    const int nq = 256, nW = 256;
    Axis qa{0.0, 1.25 * s.filter.qx_max / (nq - 1), nq};
    Axis Wa{-1.25 * s.filter.Omega_max, 2.5 * s.filter.Omega_max / (nW - 1), nW};
    GridFile ex{Eigen::MatrixXd(nq, nW), qa, Wa}, pq{Eigen::MatrixXd(nq, nW), qa, Wa};
    double asym = 0;
    stage("phasematch", [&] {
        for (int i = 0; i < nq; ++i)
            for (int j = 0; j < nW; ++j) {
                const QVec q{qa.at(i), 0};
                double v = NAN;
                try {
                    v = phi0(s.disp, s.pqda, q, Wa.at(j));
                    asym = std::max(asym, std::abs(v - phi0(s.disp, s.pqda, q, -Wa.at(j))));
                } catch (const DomainError&) {
                }
                ex.data(i, j) = v;
                pq.data(i, j) = phi0(s.disp, s.pqda, q, Wa.at(j), Model::pqda);
            }
        return 0;
    });
    const std::string units = "rows: q_x [rad/um] at q_y = 0; cols: Omega [rad/fs]; value: Phi0 [1]";
    write_grid(c, "phi0_exact", ex, units);
    write_grid(c, "phi0_pqda", pq, units);
    c.indicators.push_back({"max_abs_phi0_asymmetry_exact", num(asym)});

    CsvTable curve;
    curve.units = "Omega [rad/fs], q_exact [rad/um], q_pqda [rad/um], omega_pm_of_q_exact [rad/fs]";
    curve.columns = {"Omega", "q_exact", "q_pqda", "omega_pm_of_q_exact"};
    for (int j = 0; j <= 100; ++j) {
        const double W = s.filter.Omega_max * j / 100.0;
        const double qe = stage("phasematch", [&] { return exact_matched_q(s.disp, W); });
        curve.add({num(W), num(qe), num(qx_pm(s.pqda, 0, W)), num(qe >= s.pqda.q_d ? omega_pm(s.pqda, qe) : 0.0)});
    }
    write_table(c, "matched_curve.csv", curve);

    CsvTable p;
    p.units = "quantity,value,unit";
    p.columns = {"quantity", "value", "unit"};
    p.add({"gamma", num(s.pqda.gamma), "rad"});
    p.add({"q_d", num(s.pqda.q_d), "rad/um"});
    p.add({"theta_s", num(s.pqda.theta_s * 180 / pi), "deg"});
    p.add({"Q0", num(s.pqda.Q0), "rad/um"});
    p.add({"Omega0", num(s.pqda.Omega0), "rad/fs"});
    p.add({"eta_s", num(s.pqda.eta_s), "rad/um"});
    p.add({"qx_min", num(s.filter.qx_min), "rad/um"});
    p.add({"qx_max", num(s.filter.qx_max), "rad/um"});
    p.add({"Omega_max", num(s.pqda.Omega_max), "rad/fs"});
    p.add({"tau0", num(s.pqda.tau0), "fs"});
    p.add({"w0", num(s.pqda.w0), "um"});
    write_table(c, "pqda.csv", p);
}

GridFile mode_grid(const Grid2D& g, const Eigen::VectorXd& v, bool idler) {
    GridFile f{Eigen::MatrixXd(g.nq(), g.nW()), {idler ? -g.q(0) : g.q(0), idler ? -g.hq : g.hq, g.nq()},
               {g.Omega(0), g.hW, g.nW()}};
    for (int i = 0; i < g.nq(); ++i)
        for (int j = 0; j < g.nW(); ++j) f.data(i, j) = v(g.index(i, j));
    return f;
}

void write_spectrum(Context& c, const Decomp& d) {
    CsvTable t;
    t.units = "n [1], s [A0 (continuous operator)], s_norm [1], ln_s_norm [1], tag, i, k";
    t.columns = {"n", "s", "s_norm", "ln_s_norm", "tag", "i", "k"};
    const ModeSet& m = d.modes;
    for (int l = 0; l < m.size(); ++l) {
        const double r = m.s(l) / m.s(0);
        const bool cls = l < int(d.orders.size());
        t.add({std::to_string(l + 1), num(m.s(l)), num(r), r > 0 ? num(std::log(r)) : "-inf",
               m.tag[l] == PhaseTag::real ? "real" : "imaginary", cls ? std::to_string(d.orders[l].i) : "",
               cls ? std::to_string(d.orders[l].k) : ""});
    }
    write_table(c, "singular_values.csv", t);
    std::vector<double> sv(m.s.data(), m.s.data() + std::min(m.size(), 200));
    const SeriesStructure st = stage("analysis", [&] { return series_structure(sv); });
    c.indicators.push_back({"first_bend", std::to_string(st.first_bend)});
    for (int l = 0; l < int(d.orders.size()); ++l)
        if (d.orders[l].i >= 1) {
            c.indicators.push_back({"first_spatial_mode_n", std::to_string(l + 1)});
            break;
        }
}

void cmd_decompose(Context& c) {
    Decomp d = decompose(c);
    write_spectrum(c, d);
    const std::string u = "rows: q_x [rad/um]; cols: Omega [rad/fs]; value: mode amplitude [um^1/2 fs^1/2]";
    for (int l = 0; l < std::min(c.cfg.modes, d.modes.size()); ++l) {
        write_grid(c, fmt::format("mode_{:04d}_signal", l + 1), mode_grid(d.grid, d.modes.C.col(l), false), u);
        write_grid(c, fmt::format("mode_{:04d}_idler", l + 1), mode_grid(d.grid, d.modes.D.col(l), true), u);
    }
}

void write_gaussian(Context& c, const GaussianModel& m) {
    const SchmidtReport r = schmidt_numbers(m);
    const Thresholds th = rounding_thresholds();
    const Disregarded dis = disregarded_values(r.K, r.K_x);
    CsvTable t;
    t.units = "quantity,value,unit";
    t.columns = {"quantity", "value", "unit"};
    t.add({"mu", num(m.mu), "1"});
    t.add({"r_x", num(m.r_x), "1"});
    t.add({"r_t", num(m.r_t), "1"});
    t.add({"xi_x", num(m.xi_x), "1"});
    t.add({"xi_t", num(m.xi_t), "1"});
    if (m.xi_y) {
        t.add({"r_y", num(*m.r_y), "1"});
        t.add({"xi_y", num(*m.xi_y), "1"});
        t.add({"v", num(*m.v), "um"});
        t.add({"K_y", num(*r.K_y), "1"});
        t.add({"K_3d", num(r.K_3d), "1"});
    }
    t.add({"y_single_mode", r.y_single_mode ? "1" : "0", "flag"});
    t.add({"u", num(m.u), "um"});
    t.add({"tau", num(m.tau), "fs"});
    t.add({"g", num(m.g), "1"});
    t.add({"g_experimental_form", num(coupling_from_experiment(c.setup, m.mu)), "1"});
    t.add({"norm_2d", num(m.norm), "A0 um fs"});
    t.add({"K_x", num(r.K_x), "1"});
    t.add({"K_t", num(r.K_t), "1"});
    t.add({"K", num(r.K), "1"});
    t.add({"M", num(r.M), "1"});
    t.add({"K0", num(th.K0), "1"});
    t.add({"K0_prime", num(th.K0p), "1"});
    t.add({"xi_threshold_x", num(th.xi_x), "1"});
    t.add({"xi_threshold_y", num(th.xi_y), "1"});
    t.add({"s_dis_1d", num(dis.one_d), "N"});
    t.add({"s_dis_2d", num(dis.two_d), "N"});
    write_table(c, "gaussian_report.csv", t);

    std::ofstream f(c.out / "gaussian_summary.txt");
    f << "# analytic Gaussian model; widths in um and fs\n";
    for (const auto& row : t.rows) f << fmt::format("{:<22} {:>16} {}\n", row[0], row[1], row[2]);
    f << "predicted series borders:";
    for (int b : r.predicted_bends) f << " " << b;
    f << "\n";
    note_file(c, "gaussian_summary.txt", "see per-line units");

    CsvTable sp;
    sp.units = "n [1], i, k, s_over_N [1]";
    sp.columns = {"n", "i", "k", "s_over_N"};
    const auto labels = analytic_spectrum(m, 300);
    for (size_t n = 0; n < labels.size(); ++n)
        sp.add({std::to_string(n + 1), std::to_string(labels[n].i), std::to_string(labels[n].k), num(labels[n].value)});
    write_table(c, "analytic_spectrum.csv", sp);
}

void cmd_gaussian(Context& c) {
    std::optional<Decomp> d;
    if (!c.cfg.mu) d = decompose(c);
    const double mu = resolve_mu(c, d ? &*d : nullptr, nullptr);
    const GaussianModel m = stage("gaussian", [&] { return model_params(c.setup, mu); });
    stage("gaussian", [&] {
        write_gaussian(c, m);
        return 0;
    });
}

void cmd_validity(Context& c) {
    const ValidityReport v = validity(c);
    write_table(c, "validity.csv", validity_table(v));
    std::ofstream f(c.out / "validity.txt");
    f << "# NPMPA validity; times in fs, lengths in um\n" << validity_text(v);
    note_file(c, "validity.txt", "fs, um, rad");
}

void cmd_compare(Context& c) {
    Decomp d = decompose(c);
    write_spectrum(c, d);
    MuFit fit;
    const double mu = resolve_mu(c, &d, &fit);
    const GaussianModel m = stage("gaussian", [&] { return model_params(c.setup, mu); });
    const OverlapTable ot = stage("analysis", [&] { return overlap_table(d.modes, m, std::max(c.cfg.modes, 100)); });
    CsvTable t;
    t.units = "n [1], i, k, overlap [1]";
    t.columns = {"n", "i", "k", "overlap"};
    for (const auto& r : ot.rows) t.add({std::to_string(r.n), std::to_string(r.i), std::to_string(r.k), num(r.value)});
    write_table(c, "overlaps.csv", t);

    CsvTable f;
    f.units = "quantity,value,unit";
    f.columns = {"quantity", "value", "unit"};
    f.add({"mu_fit", num(fit.mu), "1"});
    f.add({"mu_used", num(mu), "1"});
    f.add({"mean_overlap_first_six", num(fit.mean_overlap), "1"});
    for (size_t i = 0; i < fit.overlaps.size(); ++i) f.add({fmt::format("overlap_fit_{}", i + 1), num(fit.overlaps[i]), "1"});
    f.add({"mu_fit_at_boundary", fit.at_boundary ? "1" : "0", "flag"});
    f.add({"numerical_first_bend", std::to_string(fit.numerical_bend), "1"});
    f.add({"mu_bend_matching", num(fit.mu_bend), "1"});
    f.add({"M_bend_matching", num(fit.M_bend), "1"});
    write_table(c, "mu_fit.csv", f);
}

void cmd_spacetime(Context& c) {
    Decomp d = decompose(c);
    const double mu = resolve_mu(c, &d, nullptr);
    const GaussianModel m = stage("gaussian", [&] { return model_params(c.setup, mu); });
    const int N = d.grid.size();
    CsvTable t;
    t.units = "n [1], i, k, norm2 [1], rank1_fraction_signal [1]";
    t.columns = {"n", "i", "k", "norm2", "rank1_fraction_signal"};
    const std::string u = "rows: x [um]; cols: t [fs]; value: |F| [um^-1/2 fs^-1/2]";
    for (int l = 0; l < std::min(c.cfg.modes, d.modes.size()); ++l) {
        const Orders o = l < int(d.orders.size()) ? d.orders[l] : classify_orders(d.modes, l);
        SpatioTemporalMode num_st = stage("spacetime", [&] { return to_spacetime(d.modes.f_plus(l), d.grid, c.cfg.pad); });
        SpatioTemporalMode sig = stage("spacetime", [&] {
            return to_spacetime(d.modes.C.col(l).cast<std::complex<double>>(), d.grid, c.cfg.pad);
        });
        Eigen::VectorXd as = analytic_signal(m, d.grid, o.i, o.k), ai = analytic_idler(m, d.grid, o.i, o.k);
        const double nrm = std::sqrt(as.squaredNorm() * d.grid.weight());
        Eigen::VectorXcd fa(2 * N);
        fa.head(N) = (as / nrm).cast<std::complex<double>>() / std::sqrt(2.0);
        fa.tail(N) = (ai / nrm).cast<std::complex<double>>() / std::sqrt(2.0);
        SpatioTemporalMode ana_st = stage("spacetime", [&] { return to_spacetime(fa, d.grid, c.cfg.pad); });
        GridFile gn{num_st.F.cwiseAbs(), num_st.x, num_st.t}, ga{ana_st.F.cwiseAbs(), ana_st.x, ana_st.t};
        num_st.parent = l;
        write_grid(c, fmt::format("spacetime_{:04d}_numerical", l + 1), gn, u);
        write_grid(c, fmt::format("spacetime_{:04d}_analytic", l + 1), ga, u);
        t.add({std::to_string(l + 1), std::to_string(o.i), std::to_string(o.k), num(field_norm2(num_st)),
               num(rank1_fraction(sig))});
    }
    write_table(c, "spacetime.csv", t);
}

}  // namespace

void run(const std::string& sub, const RunConfig& cfg) {
    static const std::map<std::string, std::function<void(Context&)>> cmds = {
        {"phasematch", cmd_phasematch}, {"decompose", cmd_decompose}, {"gaussian", cmd_gaussian},
        {"validity", cmd_validity},     {"compare", cmd_compare},     {"spacetime", cmd_spacetime},
    };
    auto it = cmds.find(sub);
    if (it == cmds.end()) throw StageError("cli", fmt::format("unknown subcommand '{}'", sub));
    Context c{cfg, stage("setup", [&] { return make_setup(cfg.crystal, cfg.pump, cfg.filter); }), cfg.out_dir, {}, {}};
    stage("output", [&] {
        fs::create_directories(c.out);
        return 0;
    });
    it->second(c);
    stage("output", [&] {
        write_metadata(c, sub);
        return 0;
    });
}

}  // namespace twinbeam
