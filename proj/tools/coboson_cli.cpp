#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coboson/chi.hpp"
#include "coboson/errors.hpp"
#include "coboson/fock.hpp"
#include "coboson/grid_io.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/verify.hpp"

namespace {

using namespace coboson;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string opt_str(const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string("blocked");
}

Statistics parse_single_stats(const std::string& name) {
    if (name == "boson") return Statistics::Boson;
    if (name == "fermion") return Statistics::Fermion;
    throw InvalidParameter("stats must be 'boson' or 'fermion'");
}

std::vector<Statistics> parse_stats_list(const std::string& name) {
    if (name == "both") return {Statistics::Boson, Statistics::Fermion};
    return {parse_single_stats(name)};
}

void render_report(std::ostream& out, const QualityReport& report) {
    out << "statistics: " << statistics_name(report.stats) << '\n';
    out << "  K = " << fmt17(report.schmidt_number);
    if (report.tail_error_bound > 0.0) {
        out << "   tail error bound = " << fmt17(report.tail_error_bound);
    }
    out << '\n';
    out << "  N  alpha_N  eps_norm_sq  ratio  asymptotic(1+sN/K)\n";
    for (const QualityRow& row : report.rows) {
        out << "  " << row.n << "  " << opt_str(row.alpha) << "  ";
        if (row.n < 2 && !row.pauli_blocked) {
            out << "n/a";
        } else {
            out << opt_str(row.eps_norm_sq);
        }
        out << "  " << opt_str(row.ratio) << "  " << fmt17(row.asymptotic_ratio) << '\n';
        if (row.pauli_blocked) {
            out << "     (Pauli blocked: chi_" << row.n << " = 0, no " << row.n
                << "-composite state exists)\n";
        }
    }
}

// ---------------------------------------------------------------- analyze --

struct AnalyzeOptions {
    double sigma_c = 1.0;
    double sigma_r = 1.0;
    double half_extent = 0.0;  // 0 = auto (5 * max width)
    int points = 256;
    int rank_cut = 0;  // 0 = auto
    int n_max = 5;
    std::string stats = "both";
};

void analyze_spectrum(std::ostream& out, const SchmidtSpectrum& spec, const std::string& stats,
                      int n_max) {
    out << "kept modes = " << spec.size() << "   tail mass = " << fmt17(spec.tail_mass) << '\n';
    out << "numeric K = " << fmt17(schmidt_number(spec)) << '\n';
    out << "entanglement entropy = " << fmt17(entanglement_entropy(spec)) << " bits\n";
    const std::size_t show = std::min<std::size_t>(spec.size(), 8);
    out << "leading lambda:";
    for (std::size_t i = 0; i < show; ++i) out << ' ' << fmt17(spec.lambdas[i]);
    out << '\n';
    for (Statistics s : parse_stats_list(stats)) {
        render_report(out, quality_report(spec, s, n_max));
    }
}

int cmd_analyze_gaussian(const AnalyzeOptions& opt) {
    const GaussianParams params{opt.sigma_c, opt.sigma_r};
    const double extent =
        opt.half_extent > 0.0 ? opt.half_extent : 5.0 * std::max(opt.sigma_c, opt.sigma_r);
    const WaveFunctionGrid grid = build_gaussian_grid(params, extent, opt.points);
    const int rank = opt.rank_cut > 0 ? opt.rank_cut : std::min(64, opt.points);
    const SchmidtSpectrum spec = schmidt_decompose(grid, rank);

    const double z = z_from_widths(params);
    std::cout << "double-Gaussian pair wavefunction\n";
    std::cout << "sigma_c = " << fmt17(opt.sigma_c) << "   sigma_r = " << fmt17(opt.sigma_r)
              << "   half extent = " << fmt17(extent) << "   points = " << opt.points << '\n';
    std::cout << "analytic z (from widths) = " << fmt17(z) << '\n';
    std::cout << "analytic K (from z) = " << fmt17(k_from_z(z)) << '\n';
    analyze_spectrum(std::cout, spec, opt.stats, opt.n_max);
    return 0;
}

// ------------------------------------------------------------------- chi --

struct ChiOptions {
    double z = kNaN;
    std::string spectrum_file;
    int n = 1;
    std::string stats = "boson";
    std::string method = "dp";
    double tolerance = 1e-14;
};

int cmd_chi(const ChiOptions& opt) {
    const bool have_z = !std::isnan(opt.z);
    const bool have_file = !opt.spectrum_file.empty();
    if (have_z == have_file) {
        throw InvalidParameter("provide exactly one spectrum source: --z or --spectrum-file");
    }
    if (opt.n < 1) throw InvalidParameter("--n must be >= 1");
    const Statistics stats = parse_single_stats(opt.stats);

    double chi_n = 0.0, ratio = kNaN, alpha_n = kNaN, eps = kNaN;
    double error_bound = 0.0;
    std::string method_label;

    if (opt.method == "closed") {
        if (!have_z) throw InvalidParameter("--method closed requires --z");
        const ChiTable table = chi_geometric_closed(opt.z, stats, opt.n + 1);
        method_label = "closed-form-geometric";
        chi_n = table.chi[opt.n].to_double();
        ratio = normalization_ratio(table, opt.n);
        alpha_n = alpha(table, opt.n);
        if (opt.n >= 2) eps = epsilon_norm_sq(table, opt.n);
    } else if (opt.method == "dp") {
        SchmidtSpectrum spec;
        if (have_z) {
            spec = geometric_spectrum(opt.z, opt.tolerance);
        } else {
            const SpectrumFile file = read_spectrum_file(opt.spectrum_file);
            if (file.normalization_warning) {
                std::cerr << "warning: spectrum sums to " << fmt17(file.raw_sum)
                          << "; normalized on load\n";
            }
            spec = file.spectrum;
        }
        const ChiTable table = chi_table(spec, stats, opt.n + 1);
        method_label = "dp-recurrence";
        error_bound = table.tail_error_bounds[static_cast<std::size_t>(opt.n)];
        chi_n = table.chi[static_cast<std::size_t>(opt.n)].to_double();
        alpha_n = alpha(table, opt.n);
        ratio = normalization_ratio(table, opt.n);
        if (opt.n >= 2) eps = epsilon_norm_sq(table, opt.n);
    } else if (opt.method == "oracle") {
        std::vector<double> lambdas;
        double tail = 0.0;
        if (have_z) {
            const SchmidtSpectrum spec = geometric_spectrum(opt.z, opt.tolerance);
            lambdas = spec.lambdas;
            tail = spec.tail_mass;
        } else {
            const SpectrumFile file = read_spectrum_file(opt.spectrum_file);
            lambdas = file.spectrum.lambdas;
        }
        method_label = "fock-oracle";
        const double chi_below = chi_by_oracle(lambdas, stats, opt.n - 1);
        chi_n = chi_by_oracle(lambdas, stats, opt.n);
        const double chi_above = chi_by_oracle(lambdas, stats, opt.n + 1);
        if (chi_n > 0.0) ratio = chi_above / chi_n;
        if (chi_below > 0.0) alpha_n = std::sqrt(chi_n / chi_below);
        if (opt.n >= 2 && chi_n > 0.0) {
            eps = epsilon_by_oracle(lambdas, stats, opt.n).eps_norm_sq;
        }
        error_bound = tail;
    } else {
        throw InvalidParameter("--method must be closed, dp or oracle");
    }

    std::cout << "method: " << method_label << '\n';
    std::cout << "chi_" << opt.n << " (" << statistics_name(stats) << ") = " << fmt17(chi_n) << '\n';
    std::cout << "ratio chi_" << opt.n + 1 << "/chi_" << opt.n << " = " << fmt17(ratio) << '\n';
    std::cout << "alpha_" << opt.n << " = " << fmt17(alpha_n) << '\n';
    std::cout << "eps_norm_sq_" << opt.n << " = "
              << (opt.n >= 2 ? fmt17(eps) : std::string("n/a (defined for N >= 2)")) << '\n';
    std::cout << "error bound = " << fmt17(error_bound) << '\n';
    return 0;
}

// ----------------------------------------------------------------- sweep --

struct SweepConfig {
    std::vector<double> z_values;
    std::vector<double> k_values;
    std::vector<int> n_values;
    std::string stats = "both";
    std::string output_path;
    std::string format = "csv";
};

struct SweepRow {
    double z = 0.0, schmidt_number = 0.0;
    int n = 0;
    Statistics stats = Statistics::Boson;
    double chi_log = 0.0, ratio = kNaN, alpha = kNaN, eps_norm_sq = kNaN;
    double asymptotic_ratio = 0.0, abs_err_vs_asymptotic = kNaN;
};

std::vector<SweepRow> sweep_rows_for_z(double z, const std::vector<int>& n_values,
                                       const std::vector<Statistics>& stats_list) {
    const int n_top = *std::max_element(n_values.begin(), n_values.end());
    // z = 0 (K = 1) falls outside the closed form; the DP path on the
    // single-mode spectrum covers it.
    std::vector<ChiTable> tables;
    for (Statistics stats : stats_list) {
        tables.push_back(z > 0.0 ? chi_geometric_closed(z, stats, n_top + 1)
                                 : chi_table(geometric_spectrum(0.0), stats, n_top + 1));
    }
    std::vector<SweepRow> rows;
    for (int n : n_values) {
        for (std::size_t si = 0; si < stats_list.size(); ++si) {
            const ChiTable& table = tables[si];
            SweepRow row;
            row.z = z;
            row.schmidt_number = k_from_z(z);
            row.n = n;
            row.stats = stats_list[si];
            const LogValue& chi_n = table.chi[static_cast<std::size_t>(n)];
            row.chi_log = chi_n.is_zero() ? -std::numeric_limits<double>::infinity()
                                          : chi_n.log_magnitude;
            row.asymptotic_ratio = asymptotic_ratio(row.schmidt_number, n, row.stats);
            if (!chi_n.is_zero()) {
                row.ratio = normalization_ratio(table, n);
                row.alpha = alpha(table, n);
                if (n >= 2) row.eps_norm_sq = epsilon_norm_sq(table, n);
                row.abs_err_vs_asymptotic = std::abs(row.ratio - row.asymptotic_ratio);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

int cmd_sweep(const SweepConfig& config) {
    if (config.z_values.empty() == config.k_values.empty()) {
        throw InvalidParameter("provide exactly one of --z-values or --k-values");
    }
    if (config.n_values.empty()) throw InvalidParameter("--n-values must not be empty");
    for (int n : config.n_values) {
        if (n < 1) throw InvalidParameter("sweep N values must be >= 1");
    }
    if (config.output_path.empty()) throw InvalidParameter("--output is required");
    if (config.format != "csv" && config.format != "json") {
        throw InvalidParameter("--format must be csv or json");
    }

    std::vector<double> zs;
    if (!config.z_values.empty()) {
        for (double z : config.z_values) {
            if (!(z > 0.0) || z >= 1.0) throw InvalidParameter("sweep z values must lie in (0, 1)");
            zs.push_back(z);
        }
    } else {
        for (double k : config.k_values) zs.push_back(z_from_k(k));  // validates K >= 1
    }
    const std::vector<Statistics> stats_list = parse_stats_list(config.stats);

    // Grid points evaluate concurrently; rows are assembled in deterministic
    // order (z outer, N inner, boson before fermion).
    std::vector<std::future<std::vector<SweepRow>>> futures;
    futures.reserve(zs.size());
    for (double z : zs) {
        futures.push_back(std::async(std::launch::async, sweep_rows_for_z, z, config.n_values,
                                     stats_list));
    }
    std::vector<SweepRow> rows;
    for (auto& f : futures) {
        auto part = f.get();
        rows.insert(rows.end(), part.begin(), part.end());
    }

    std::ostringstream body;
    if (config.format == "csv") {
        body << "z,K,N,stats,chi_log,ratio,alpha,eps_norm_sq,asymptotic_ratio,abs_err_vs_asymptotic\n";
        for (const SweepRow& r : rows) {
            body << fmt17(r.z) << ',' << fmt17(r.schmidt_number) << ',' << r.n << ','
                 << statistics_name(r.stats) << ',' << fmt17(r.chi_log) << ',' << fmt17(r.ratio)
                 << ',' << fmt17(r.alpha) << ',' << fmt17(r.eps_norm_sq) << ','
                 << fmt17(r.asymptotic_ratio) << ',' << fmt17(r.abs_err_vs_asymptotic) << '\n';
        }
    } else {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const SweepRow& r : rows) {
            nlohmann::ordered_json item;
            item["z"] = r.z;
            item["K"] = r.schmidt_number;
            item["N"] = r.n;
            item["stats"] = statistics_name(r.stats);
            item["chi_log"] = r.chi_log;
            item["ratio"] = r.ratio;
            item["alpha"] = r.alpha;
            item["eps_norm_sq"] = r.eps_norm_sq;
            item["asymptotic_ratio"] = r.asymptotic_ratio;
            item["abs_err_vs_asymptotic"] = r.abs_err_vs_asymptotic;
            doc.push_back(std::move(item));
        }
        body << doc.dump(2) << '\n';
    }

    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + config.output_path);
    out << body.str();
    out.flush();
    if (!out) throw IoError("write failed: " + config.output_path);
    std::cout << "wrote " << rows.size() << " rows to " << config.output_path << '\n';
    return 0;
}

// ---------------------------------------------------------------- verify --

int cmd_verify(int max_n, int max_m, std::uint64_t seed) {
    VerifyOptions options;
    options.max_n = max_n;
    options.max_m = max_m;
    options.seed = seed;
    const auto suites = run_verification(options);
    bool all_passed = true;
    for (const SuiteResult& suite : suites) {
        std::cout << (suite.passed ? "PASS" : "FAIL") << "  " << suite.name << ": " << suite.cases
                  << " cases, max rel err = " << fmt17(suite.max_rel_err)
                  << ", worst allowance use = " << fmt17(suite.worst_allowance_fraction);
        if (!suite.passed) std::cout << "  [" << suite.detail << "]";
        std::cout << '\n';
        all_passed = all_passed && suite.passed;
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compositeness analysis of two-particle states: Schmidt spectra, chi_N "
                 "normalization constants, ladder-operator quality measures."};
    app.require_subcommand(1);

    AnalyzeOptions gauss;
    auto* analyze_gaussian = app.add_subcommand(
        "analyze-gaussian", "Decompose a double-Gaussian pair wavefunction and report quality");
    analyze_gaussian->add_option("--sigma-c", gauss.sigma_c, "width along x_A + x_B")->required();
    analyze_gaussian->add_option("--sigma-r", gauss.sigma_r, "width along x_A - x_B")->required();
    analyze_gaussian->add_option("--half-extent", gauss.half_extent,
                                 "grid half extent (default 5*max(sigma))");
    analyze_gaussian->add_option("--points", gauss.points, "samples per axis (default 256)");
    analyze_gaussian->add_option("--rank-cut", gauss.rank_cut,
                                 "kept Schmidt modes (default min(64, points))");
    analyze_gaussian->add_option("--n-max", gauss.n_max, "largest composite number N");
    analyze_gaussian->add_option("--stats", gauss.stats, "boson | fermion | both");

    struct GridOptions {
        std::string input;
        int rank_cut = 0;
        int n_max = 5;
        std::string stats = "both";
    } grid_opt;
    auto* analyze_grid =
        app.add_subcommand("analyze-grid", "Decompose a WFGRID v1 file and report quality");
    analyze_grid->add_option("--input", grid_opt.input, "WFGRID v1 file")->required();
    analyze_grid->add_option("--rank-cut", grid_opt.rank_cut, "kept Schmidt modes");
    analyze_grid->add_option("--n-max", grid_opt.n_max, "largest composite number N");
    analyze_grid->add_option("--stats", grid_opt.stats, "boson | fermion | both");

    ChiOptions chi_opt;
    auto* chi_cmd = app.add_subcommand("chi", "Evaluate chi_N and derived quantities");
    chi_cmd->add_option("--z", chi_opt.z, "geometric spectrum parameter, 0 <= z < 1");
    chi_cmd->add_option("--spectrum-file", chi_opt.spectrum_file, "eigenvalue list file");
    chi_cmd->add_option("--n", chi_opt.n, "composite number N")->required();
    chi_cmd->add_option("--stats", chi_opt.stats, "boson | fermion")->required();
    chi_cmd->add_option("--method", chi_opt.method, "closed | dp | oracle");
    chi_cmd->add_option("--tolerance", chi_opt.tolerance, "truncation tail tolerance");

    SweepConfig sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate quality measures over z or K grids");
    sweep_cmd->add_option("--z-values", sweep.z_values, "z grid points in (0, 1)");
    sweep_cmd->add_option("--k-values", sweep.k_values, "Schmidt number grid points, K >= 1");
    sweep_cmd->add_option("--n-values", sweep.n_values, "composite numbers N");
    sweep_cmd->add_option("--stats", sweep.stats, "boson | fermion | both");
    sweep_cmd->add_option("--output", sweep.output_path, "output file path");
    sweep_cmd->add_option("--format", sweep.format, "csv | json");

    int verify_max_n = 5;
    int verify_max_m = 8;
    std::uint64_t verify_seed = 20240601;
    auto* verify_cmd = app.add_subcommand("verify", "Run the cross-route verification suites");
    verify_cmd->add_option("--max-n", verify_max_n, "largest composite number exercised");
    verify_cmd->add_option("--max-m", verify_max_m, "largest random spectrum length");
    verify_cmd->add_option("--seed", verify_seed, "random generator seed");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(analyze_gaussian)) return cmd_analyze_gaussian(gauss);
        if (app.got_subcommand(analyze_grid)) {
            const WaveFunctionGrid grid = read_wfgrid_file(grid_opt.input);
            if (!grid.is_normalized()) {
                throw ContractViolation("grid file is not L2-normalized");
            }
            const int max_rank = static_cast<int>(std::min(grid.amplitudes.rows(), grid.amplitudes.cols()));
            const int rank = grid_opt.rank_cut > 0 ? grid_opt.rank_cut : std::min(64, max_rank);
            const SchmidtSpectrum spec = schmidt_decompose(grid, rank);
            std::cout << "grid " << grid.amplitudes.rows() << " x " << grid.amplitudes.cols()
                      << " from " << grid_opt.input << '\n';
            analyze_spectrum(std::cout, spec, grid_opt.stats, grid_opt.n_max);
            return 0;
        }
        if (app.got_subcommand(chi_cmd)) return cmd_chi(chi_opt);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(sweep);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_max_n, verify_max_m, verify_seed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const Error& e) {
        // ContractViolation, PauliBlockedError, NumericError
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
