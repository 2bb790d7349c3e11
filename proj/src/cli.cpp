#include "quasiphase/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "quasiphase/clicks.hpp"
#include "quasiphase/hybrid.hpp"
#include "quasiphase/io.hpp"
#include "quasiphase/phasespace.hpp"

namespace quasiphase {

namespace {

struct OutputOptions {
    std::string out_path;
    std::string format = "csv";
    std::string manifest_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--manifest", opts.manifest_path, "write the run manifest to this path");
}

void write_text(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << payload;
}

struct Emitter {
    OutputOptions opts;
    RunManifest manifest{};
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Emitter(OutputOptions o) : opts(std::move(o)) {}

    void finish_manifest(const std::string& payload) {
        manifest.checksum = checksum_hex(payload);
        manifest.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    void emit_grid(const RealGrid& grid) {
        const std::string csv = grid_to_csv(grid);
        finish_manifest(csv);
        write_text(opts.out_path, opts.format == "json" ? grid_to_json(grid, manifest).dump(2) + "\n" : csv);
        write_manifest();
    }

    void emit_raw(const std::string& payload) {
        finish_manifest(payload);
        if (opts.format == "json") {
            nlohmann::json j{{"manifest", manifest.to_json()}, {"payload", payload}};
            write_text(opts.out_path, j.dump(2) + "\n");
        } else {
            write_text(opts.out_path, payload);
        }
        write_manifest();
    }

    void emit_table(const EntQuasiTable& table) {
        const std::string csv = ent_table_to_csv(table);
        finish_manifest(csv);
        write_text(opts.out_path,
                   opts.format == "json" ? ent_table_to_json(table, manifest).dump(2) + "\n" : csv);
        write_manifest();
    }

    void write_manifest() {
        if (!opts.manifest_path.empty())
            write_text(opts.manifest_path, manifest.to_json().dump(2) + "\n");
    }
};

KernelSpec kernel_from_flags(const std::string& kind, double w, double s) {
    if (kind == "sinc2") return KernelSpec::sinc2_kernel(w);
    if (kind == "gauss") return KernelSpec::gaussian_kernel(s);
    throw CLI::ValidationError("--kernel", "kernel must be sinc2 or gauss");
}

// --cut re=X or --cut im=Y; sweeping the other axis
std::pair<bool, double> parse_cut(const std::string& text) {
    const size_t eq = text.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--cut", "expected re=VALUE or im=VALUE");
    const std::string axis = text.substr(0, eq);
    const double value = std::stod(text.substr(eq + 1));
    if (axis == "re") return {true, value};   // sweep imaginary axis
    if (axis == "im") return {false, value};  // sweep real axis
    throw CLI::ValidationError("--cut", "axis must be re or im");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"regularized phase-space quasiprobability toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // --- spats ---
    auto* spats = app.add_subcommand("spats", "photon-added thermal-state distribution grid");
    double spats_nbar = 0.0;
    std::string spats_grid = "-3:3:201,-3:3:201";
    OutputOptions spats_out;
    spats->add_option("--nbar", spats_nbar, "thermal mean photon number (example: 1.11)")
        ->required();
    spats->add_option("--grid", spats_grid, "re_min:re_max:n,im_min:im_max:n");
    add_output_options(spats, spats_out);

    // --- cat-p ---
    auto* catp = app.add_subcommand("cat-p", "regularized interference / cat-state grids");
    std::string catp_mode = "even-cat";
    std::string catp_beta = "1";
    std::string catp_beta_tilde;
    std::string catp_kernel = "sinc2";
    double catp_w = 3.0, catp_s = -1.0;
    std::string catp_grid = "-4:4:201,-4:4:201";
    OutputOptions catp_out;
    catp->add_option("--mode", catp_mode, "interference, even-cat or odd-cat")
        ->check(CLI::IsMember({"interference", "even-cat", "odd-cat"}));
    catp->add_option("--beta", catp_beta, "coherent amplitude (complex, e.g. 1 or 0.5+0.2i)");
    catp->add_option("--beta-tilde", catp_beta_tilde, "ket amplitude for interference mode (default -beta)");
    catp->add_option("--kernel", catp_kernel, "sinc2 or gauss");
    catp->add_option("--w", catp_w, "sinc2 width");
    catp->add_option("--s", catp_s, "Gaussian order parameter (s < 1)");
    catp->add_option("--grid", catp_grid, "grid spec");
    add_output_options(catp, catp_out);

    // --- clicks ---
    auto* clicks = app.add_subcommand("clicks", "multiplexed click-detection representation");
    std::string clicks_state = "even-cat";
    std::string clicks_beta = "1";
    double clicks_nbar = 1.0, clicks_z = -1.0, clicks_eta = 0.5, clicks_t = 1.0 / std::sqrt(2.0);
    int clicks_n = 2;
    std::string clicks_cut, clicks_grid, clicks_range = "-5:5:201";
    bool clicks_mc = false;
    long long clicks_shots = 1000000;
    uint64_t clicks_seed = 1;
    OutputOptions clicks_out;
    clicks->add_option("--state", clicks_state, "even-cat, odd-cat, coherent or thermal")
        ->check(CLI::IsMember({"even-cat", "odd-cat", "coherent", "thermal"}));
    clicks->add_option("--beta", clicks_beta, "state amplitude (complex)");
    clicks->add_option("--nbar", clicks_nbar, "thermal mean photon number");
    clicks->add_option("--z", clicks_z, "generating-function parameter");
    clicks->add_option("--eta", clicks_eta, "quantum efficiency");
    clicks->add_option("--N", clicks_n, "number of on-off detectors (power of two)");
    clicks->add_option("--t", clicks_t, "beam-splitter transmission amplitude");
    clicks->add_option("--cut", clicks_cut, "1-D cut, re=VALUE or im=VALUE");
    clicks->add_option("--grid", clicks_grid, "2-D grid spec (alternative to --cut)");
    clicks->add_option("--range", clicks_range, "sweep axis for --cut (min:max:count)");
    clicks->add_flag("--mc", clicks_mc, "validate classical states by Monte Carlo");
    clicks->add_option("--shots", clicks_shots, "Monte Carlo shots");
    clicks->add_option("--seed", clicks_seed, "Monte Carlo seed");
    add_output_options(clicks, clicks_out);

    // --- hybrid ---
    auto* hybrid = app.add_subcommand("hybrid", "hybrid quasiprobability matrix eigenvalue scan");
    std::string hybrid_beta = "1";
    std::string hybrid_kernel = "sinc2";
    double hybrid_w = 3.0, hybrid_s = -1.0;
    std::string hybrid_grid = "-4:4:101,-4:4:101";
    bool hybrid_diag_only = false;
    OutputOptions hybrid_out;
    hybrid->add_option("--beta", hybrid_beta, "coherent amplitude (complex)");
    hybrid->add_option("--kernel", hybrid_kernel, "sinc2 or gauss");
    hybrid->add_option("--w", hybrid_w, "sinc2 width");
    hybrid->add_option("--s", hybrid_s, "Gaussian order parameter");
    hybrid->add_option("--grid", hybrid_grid, "grid spec");
    hybrid->add_flag("--diagonal-only", hybrid_diag_only, "drop interference entries");
    add_output_options(hybrid, hybrid_out);

    // --- tripartite ---
    auto* tri = app.add_subcommand("tripartite", "three-mode cat distribution slices and limits");
    std::string tri_beta = "1";
    std::string tri_kernel = "gauss";
    double tri_w = 3.0, tri_s = -1.0;
    std::string tri_alpha2 = "0", tri_alpha3 = "0";
    std::string tri_grid = "-4:4:101,-4:4:101";
    double tri_beta_small = 0.1, tri_beta_large = 1.5;
    int tri_cutoff = 24;
    OutputOptions tri_out;
    tri->add_option("--beta", tri_beta, "cat amplitude (complex)");
    tri->add_option("--kernel", tri_kernel, "sinc2 or gauss");
    tri->add_option("--w", tri_w, "sinc2 width");
    tri->add_option("--s", tri_s, "Gaussian order parameter");
    tri->add_option("--alpha2", tri_alpha2, "fixed second-mode argument (complex)");
    tri->add_option("--alpha3", tri_alpha3, "fixed third-mode argument (complex)");
    tri->add_option("--grid", tri_grid, "grid spec for the first mode");
    tri->add_option("--beta-small", tri_beta_small, "amplitude for the W-state limit");
    tri->add_option("--beta-large", tri_beta_large, "amplitude for the GHZ orthogonality diagnostic");
    tri->add_option("--cutoff", tri_cutoff, "photon-number cutoff for the fidelity");
    add_output_options(tri, tri_out);

    // --- ent-bell ---
    auto* ent = app.add_subcommand("ent-bell", "entanglement quasiprobability table");
    double ent_werner = 1.0;
    std::string ent_mode = "nnls";
    OutputOptions ent_out;
    ent->add_option("--werner-p", ent_werner, "singlet weight p in p*singlet + (1-p)*I/4");
    ent->add_option("--mode", ent_mode, "nnls (with min-norm fallback) or min-norm")
        ->check(CLI::IsMember({"nnls", "min-norm"}));
    add_output_options(ent, ent_out);

    // --- validate ---
    auto* validate = app.add_subcommand("validate", "run the oracle-equivalence suite twice");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help requests exit 0; anything else is a usage error
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (spats->parsed()) {
        Emitter em{spats_out};
        em.manifest.subcommand = "spats";
        em.manifest.parameters = {{"nbar", spats_nbar}};
        em.manifest.grid_spec = spats_grid;
        auto [re, im] = parse_grid_spec(spats_grid);
        if (!(spats_nbar > 0)) throw CLI::ValidationError("--nbar", "must be > 0");
        em.emit_grid(eval_grid(re, im, [&](cplx a) { return spats_p(spats_nbar, a); }));
        return 0;
    }

    if (catp->parsed()) {
        Emitter em{catp_out};
        const cplx beta = parse_complex(catp_beta);
        const cplx beta_tilde =
            catp_beta_tilde.empty() ? -beta : parse_complex(catp_beta_tilde);
        const KernelSpec kernel = kernel_from_flags(catp_kernel, catp_w, catp_s);
        em.manifest.subcommand = "cat-p";
        em.manifest.parameters = {{"mode", catp_mode},
                                  {"beta", catp_beta},
                                  {"kernel", catp_kernel},
                                  {"w", catp_w},
                                  {"s", catp_s}};
        em.manifest.grid_spec = catp_grid;
        auto [re, im] = parse_grid_spec(catp_grid);
        if (catp_mode == "interference") {
            const DeltaTerm term = interference_term(beta_tilde, beta);
            em.manifest.parameters["beta_tilde"] = catp_beta_tilde.empty() ? "-beta" : catp_beta_tilde;
            ComplexGrid grid = eval_grid_complex(
                re, im, [&](cplx a) { return regularized_delta(term, kernel, a); });
            const std::string csv = grid_to_csv(grid);
            em.finish_manifest(csv);
            write_text(catp_out.out_path, catp_out.format == "json"
                                              ? grid_to_json(grid, em.manifest).dump(2) + "\n"
                                              : csv);
            em.write_manifest();
            return 0;
        }
        const CoherentSuperposition state = catp_mode == "even-cat"
                                                ? CoherentSuperposition::even_cat(beta)
                                                : CoherentSuperposition::odd_cat(beta);
        const StateP expansion = StateP::from_superposition(state);
        em.emit_grid(
            eval_grid(re, im, [&](cplx a) { return state_p_regularized(expansion, kernel, a); }));
        return 0;
    }

    if (clicks->parsed()) {
        Emitter em{clicks_out};
        const DetectionConfig cfg = DetectionConfig::balanced(clicks_n, clicks_eta, clicks_t, clicks_z);
        const cplx beta = parse_complex(clicks_beta);
        em.manifest.subcommand = "clicks";
        em.manifest.parameters = {{"state", clicks_state}, {"beta", clicks_beta},
                                  {"nbar", clicks_nbar},   {"z", clicks_z},
                                  {"eta", clicks_eta},     {"N", clicks_n},
                                  {"t", clicks_t}};

        std::function<double(cplx)> value;
        if (clicks_state == "even-cat" || clicks_state == "odd-cat") {
            const CoherentSuperposition state = clicks_state == "even-cat"
                                                    ? CoherentSuperposition::even_cat(beta)
                                                    : CoherentSuperposition::odd_cat(beta);
            value = [state, cfg](cplx a) { return g_state(state, a, cfg); };
        } else if (clicks_state == "coherent") {
            const CoherentSuperposition state = CoherentSuperposition::coherent(beta);
            value = [state, cfg](cplx a) { return g_state(state, a, cfg); };
        } else {
            if (!(clicks_nbar > 0)) throw CLI::ValidationError("--nbar", "must be > 0");
            value = [clicks_nbar, cfg](cplx a) { return thermal_g_quadrature(clicks_nbar, a, cfg); };
        }

        if (clicks_mc) {
            if (clicks_state != "coherent" && clicks_state != "thermal")
                throw CLI::ValidationError("--mc", "Monte Carlo needs a classical state "
                                                   "(coherent or thermal)");
            const ClassicalState cls = clicks_state == "coherent"
                                           ? ClassicalState::coherent(beta)
                                           : ClassicalState::thermal(clicks_nbar);
            em.manifest.seed = clicks_seed;
            em.manifest.parameters["shots"] = clicks_shots;
            cplx probe = clicks_cut.empty() ? cplx(1.0, 0.0) : [&] {
                auto [sweep_im, fixed] = parse_cut(clicks_cut);
                return sweep_im ? cplx(fixed, 1.0) : cplx(1.0, fixed);
            }();
            const MonteCarloEstimate est = monte_carlo_g(cls, probe, cfg, clicks_shots, clicks_seed);
            const double analytic = value(probe);
            const double pull = est.std_error > 0 ? std::abs(est.value - analytic) / est.std_error : 0.0;
            std::string payload =
                "alpha,analytic,mc_estimate,mc_stderr,pull\n" + format_double(probe.real()) + "+" +
                format_double(probe.imag()) + "i," + format_double(analytic) + "," +
                format_double(est.value) + "," + format_double(est.std_error) + "," +
                format_double(pull) + "\n";
            em.emit_raw(payload);
            if (pull > 3.0) {
                std::cerr << "tolerance failure: Monte Carlo estimate " << est.value
                          << " deviates from the closed form " << analytic << " by " << pull
                          << " standard errors\n";
                return 2;
            }
            return 0;
        }

        if (!clicks_grid.empty()) {
            em.manifest.grid_spec = clicks_grid;
            auto [re, im] = parse_grid_spec(clicks_grid);
            em.emit_grid(eval_grid(re, im, value));
            return 0;
        }
        if (clicks_cut.empty()) throw CLI::ValidationError("clicks", "need --cut or --grid");
        auto [sweep_im, fixed] = parse_cut(clicks_cut);
        em.manifest.grid_spec = clicks_range;
        em.manifest.parameters["cut"] = clicks_cut;
        const size_t comma = clicks_range.find(',');
        const Axis sweep = parse_grid_spec(comma == std::string::npos
                                               ? clicks_range + "," + clicks_range
                                               : clicks_range)
                               .first;
        em.emit_raw(cut_to_csv(sweep_im, fixed, sweep, value));
        return 0;
    }

    if (hybrid->parsed()) {
        Emitter em{hybrid_out};
        const cplx beta = parse_complex(hybrid_beta);
        const KernelSpec kernel = kernel_from_flags(hybrid_kernel, hybrid_w, hybrid_s);
        em.manifest.subcommand = "hybrid";
        em.manifest.parameters = {{"beta", hybrid_beta},
                                  {"kernel", hybrid_kernel},
                                  {"w", hybrid_w},
                                  {"s", hybrid_s},
                                  {"diagonal_only", hybrid_diag_only}};
        em.manifest.grid_spec = hybrid_grid;
        auto [re, im] = parse_grid_spec(hybrid_grid);
        auto [grid, result] = min_eig_grid(beta, kernel, re, im, hybrid_diag_only);
        em.emit_grid(grid);
        std::cerr << "lambda_min = " << format_double(result.lambda_min) << " at alpha = ("
                  << format_double(result.alpha_star.real()) << ", "
                  << format_double(result.alpha_star.imag()) << ")\n";
        return 0;
    }

    if (tri->parsed()) {
        Emitter em{tri_out};
        const cplx beta = parse_complex(tri_beta);
        const KernelSpec kernel = kernel_from_flags(tri_kernel, tri_w, tri_s);
        const cplx a2 = parse_complex(tri_alpha2);
        const cplx a3 = parse_complex(tri_alpha3);
        em.manifest.subcommand = "tripartite";
        em.manifest.parameters = {{"beta", tri_beta},   {"kernel", tri_kernel},
                                  {"w", tri_w},         {"s", tri_s},
                                  {"alpha2", tri_alpha2}, {"alpha3", tri_alpha3},
                                  {"beta_small", tri_beta_small},
                                  {"beta_large", tri_beta_large}};
        em.manifest.grid_spec = tri_grid;
        auto [re, im] = parse_grid_spec(tri_grid);
        em.emit_grid(
            eval_grid(re, im, [&](cplx a1) { return tripartite_p(beta, kernel, a1, a2, a3); }));
        const GhzWLimits limits = ghz_w_limits(tri_beta_small, tri_beta_large, tri_cutoff);
        std::cerr << "w_fidelity(" << format_double(tri_beta_small)
                  << ") = " << format_double(limits.w_fidelity) << ", ghz_cross("
                  << format_double(tri_beta_large) << ") = " << format_double(limits.ghz_cross)
                  << "\n";
        return 0;
    }

    if (ent->parsed()) {
        Emitter em{ent_out};
        em.manifest.subcommand = "ent-bell";
        em.manifest.parameters = {{"werner_p", ent_werner}, {"mode", ent_mode}};
        const TwoQubitState state =
            ent_werner >= 1.0 ? TwoQubitState::singlet() : TwoQubitState::werner(ent_werner);
        const EntQuasiTable table = ent_quasiprob(
            state, ent_mode == "min-norm" ? EntSolveMode::min_norm : EntSolveMode::nnls_first);
        em.emit_table(table);
        return 0;
    }

    if (validate->parsed()) return run_validate(std::cout);
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CLI::ParseError& e) {
        // validation errors raised after parsing (bad --kernel, --cut, ...)
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const tolerance_error& e) {
        std::cerr << "tolerance failure: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace quasiphase
