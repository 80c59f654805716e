// Command-line front end: pmf/levy/bernstein tables, figure data, Monte
// Carlo comparisons and the identity verification suite, emitted as
// deterministic CSV or JSON.
#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "loglevy/montecarlo.hpp"
#include "loglevy/output.hpp"
#include "loglevy/transition.hpp"
#include "loglevy/verify.hpp"

namespace {

using namespace loglevy;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitCrossCheck = 4;
constexpr int kExitVerifyFailed = 5;

// raised when two formula routes disagree beyond tolerance
class cross_check_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string format = "csv";
    std::string output = "-";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", opts.output,
                    "Output path ('-' for stdout; relative paths resolve under "
                    "$LOGLEVY_OUTPUT_DIR when set)")
        ->capture_default_str();
}

void emit(const OutputRecord& record, const CommonOpts& opts) {
    std::string text = opts.format == "json" ? to_json(record) : to_csv(record);
    if (opts.format == "json") text += "\n";
    if (opts.output == "-") {
        std::cout << text;
        return;
    }
    std::filesystem::path path(opts.output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("LOGLEVY_OUTPUT_DIR"))
            path = std::filesystem::path(dir) / path;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    out << text;
}

struct ParamOpts {
    double alpha = 0.0;
    std::optional<double> beta;
    std::optional<double> b;
    std::string selection;
};

void add_params(CLI::App* cmd, ParamOpts& opts) {
    cmd->add_option("--alpha", opts.alpha, "Distribution parameter in (0,1)")->required();
    auto* beta = cmd->add_option("--beta", opts.beta, "Gamma subordinator scale (> 0)");
    auto* b = cmd->add_option("--b", opts.b, "Poisson subordinator rate (> 0)");
    auto* sel = cmd->add_option("--selection", opts.selection,
                                "Derive beta and b from alpha (A: equal total masses, "
                                "B: equal mean jumps)")
                    ->check(CLI::IsMember({"A", "B"}));
    sel->excludes(beta);
    sel->excludes(b);
}

ProcessParams build_params(const ParamOpts& opts) {
    if (opts.selection == "A") return selection_a(opts.alpha);
    if (opts.selection == "B") return selection_b(opts.alpha);
    return ProcessParams(opts.alpha, opts.beta, opts.b);
}

void echo_params(OutputRecord& record, const ProcessParams& params) {
    record.parameters["alpha"] = format_number(params.alpha());
    record.parameters["A"] = format_number(params.A());
    if (params.has_beta()) record.parameters["beta"] = format_number(params.beta());
    if (params.has_b()) record.parameters["b"] = format_number(params.b());
}

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-280});
}

// second formula route for the emitted pmf
double pmf_alternate(Process p, const ProcessParams& params, double t, int n) {
    switch (p) {
        case Process::L: return pmf_L_t_falling(params, t, n);
        case Process::Y: return pmf_Y_bell(params, t, n);
        case Process::Z: return pmf_Z_series(params, t, n).value;
        case Process::X: return pmf_X(params, t, n);
    }
    throw std::logic_error("unreachable");
}

// ---- pmf -------------------------------------------------------------------

int cmd_pmf(const ParamOpts& popts, const CommonOpts& copts, const std::string& process_name_str,
            double t, int n_max) {
    Process process = process_from_name(process_name_str);
    ProcessParams params = build_params(popts);
    params.require(process);
    if (n_max < 0) throw domain_error("n-max must be >= 0");

    auto recurrence = pmf_table_by_recurrence(process, params, t, n_max);
    OutputRecord record;
    record.command = "pmf";
    echo_params(record, params);
    record.parameters["process"] = process_name_str;
    record.parameters["t"] = format_number(t);
    record.parameters["n_max"] = format_number(n_max);
    record.columns = {"n", "p"};
    for (int n = 0; n <= n_max; ++n) {
        double primary = pmf(process, params, t, n);
        double alt = pmf_alternate(process, params, t, n);
        if (rel_gap(primary, alt) > 1e-10)
            throw cross_check_error("formula cross-check failed for P(" + process_name_str +
                                    "(t)=" + std::to_string(n) + "): " + format_number(primary) +
                                    " vs " + format_number(alt));
        if (t > 0.0 && rel_gap(primary, recurrence(n)) > 1e-10)
            throw cross_check_error("convolution recurrence cross-check failed at n = " +
                                    std::to_string(n));
        record.rows.push_back({static_cast<double>(n), primary});
    }
    record.parameters["tail_bound"] =
        format_number(t > 0.0 ? pgf_tail_bound(process, params, t, n_max) : 0.0);
    emit(record, copts);
    return 0;
}

// ---- levy ------------------------------------------------------------------

int cmd_levy(const ParamOpts& popts, const CommonOpts& copts, const std::string& process_name_str,
             int n_max) {
    Process process = process_from_name(process_name_str);
    ProcessParams params = build_params(popts);
    params.require(process);
    if (n_max < 1) throw domain_error("n-max must be >= 1");

    auto measure = levy_measure(process, params);
    OutputRecord record;
    record.command = "levy";
    echo_params(record, params);
    record.parameters["process"] = process_name_str;
    record.parameters["n_max"] = format_number(n_max);
    record.parameters["theta"] = format_number(measure.total_mass);
    record.columns = {"n", "atom", "cumulative", "theta"};
    double cum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        double atom = measure.atom(n);
        cum += atom;
        record.rows.push_back({static_cast<double>(n), atom, cum, measure.total_mass});
    }
    emit(record, copts);
    return 0;
}

// ---- bernstein ---------------------------------------------------------------

std::vector<double> lambda_grid(const std::vector<double>& lambdas, double lambda_max,
                                int lambda_count) {
    if (!lambdas.empty()) {
        for (double l : lambdas)
            if (l < 0) throw domain_error("lambda must be >= 0");
        return lambdas;
    }
    if (lambda_max < 0 || lambda_count < 2) throw domain_error("invalid lambda grid");
    std::vector<double> grid(lambda_count);
    for (int i = 0; i < lambda_count; ++i) grid[i] = lambda_max * i / (lambda_count - 1);
    return grid;
}

void append_bernstein_metadata(OutputRecord& record, const ProcessParams& params,
                               const std::string& suffix) {
    const std::pair<std::string, BernsteinFunction> funcs[] = {{"L", bernstein_L(params)},
                                                               {"X", bernstein_X(params)},
                                                               {"Y", bernstein_Y(params)},
                                                               {"Z", bernstein_Z(params)}};
    for (const auto& [name, f] : funcs) {
        record.parameters["psi_inf_" + name + suffix] = format_number(f.value_at_infinity);
        record.parameters["dpsi0_" + name + suffix] = format_number(f.derivative_at_zero);
    }
}

int cmd_bernstein(const ParamOpts& popts, const CommonOpts& copts,
                  const std::vector<double>& lambdas, double lambda_max, int lambda_count) {
    ProcessParams params = build_params(popts);
    params.require(Process::Y);
    params.require(Process::Z);
    auto grid = lambda_grid(lambdas, lambda_max, lambda_count);

    auto L = bernstein_L(params), X = bernstein_X(params), Y = bernstein_Y(params),
         Z = bernstein_Z(params);
    OutputRecord record;
    record.command = "bernstein";
    echo_params(record, params);
    append_bernstein_metadata(record, params, "");
    record.columns = {"lambda", "psi_L", "psi_X", "psi_Y", "psi_Z"};
    for (double lam : grid) record.rows.push_back({lam, L(lam), X(lam), Y(lam), Z(lam)});
    emit(record, copts);
    return 0;
}

// ---- figures -----------------------------------------------------------------

int cmd_figures(const CommonOpts& copts, int figure, std::vector<double> alphas, int n_max,
                double lambda_max, int lambda_count) {
    if (alphas.empty()) alphas = {0.5, 2.0 / 3.0};
    OutputRecord record;
    record.command = "figures";
    record.parameters["figure"] = std::to_string(figure);
    for (std::size_t i = 0; i < alphas.size(); ++i)
        record.parameters["alpha_" + std::to_string(i)] = format_number(alphas[i]);

    if (figure == 1) {
        record.columns = {"alpha", "n", "pi_X", "pi_Z"};
        for (double alpha : alphas) {
            auto params = selection_a(alpha);
            auto mx = levy_measure_X(params);
            auto mz = levy_measure_Z(params);
            if (!(mz.atom(1) < mx.atom(1))) throw cross_check_error("expected Pi_Z(1) < Pi_X(1)");
            double mass_x = 0, mass_z = 0;
            for (int n = 1; n <= 400; ++n) {
                mass_x += mx.atom(n);
                mass_z += mz.atom(n);
            }
            if (std::abs(mass_x - params.A()) > 1e-6 || std::abs(mass_z - params.A()) > 1e-6)
                throw cross_check_error("truncated masses do not reach A");
            std::string key = "[alpha=" + format_number(alpha) + "]";
            record.parameters["mass_X" + key] = format_number(mass_x);
            record.parameters["mass_Z" + key] = format_number(mass_z);
            for (int n = 1; n <= n_max; ++n)
                record.rows.push_back({alpha, static_cast<double>(n), mx.atom(n), mz.atom(n)});
        }
        emit(record, copts);
        return 0;
    }

    if (figure != 2 && figure != 3) throw domain_error("figure must be 1, 2 or 3");
    record.columns = {"alpha", "lambda", "psi_L", "psi_X", "psi_Y", "psi_Z"};
    auto grid = lambda_grid({}, lambda_max, lambda_count);
    for (double alpha : alphas) {
        auto params = figure == 2 ? selection_a(alpha) : selection_b(alpha);
        std::string key = "[alpha=" + format_number(alpha) + "]";
        append_bernstein_metadata(record, params, key);
        auto L = bernstein_L(params), X = bernstein_X(params), Y = bernstein_Y(params),
             Z = bernstein_Z(params);
        if (figure == 2) {
            bool chain = L.derivative_at_zero < Y.derivative_at_zero &&
                         Y.derivative_at_zero < X.derivative_at_zero &&
                         X.derivative_at_zero < Z.derivative_at_zero;
            bool masses = std::abs(L.value_at_infinity - Y.value_at_infinity) < 1e-12 &&
                          std::abs(X.value_at_infinity - Z.value_at_infinity) < 1e-12;
            if (!chain || !masses) throw cross_check_error("selection A orderings violated");
            record.parameters["theta_L" + key] = format_number(L.value_at_infinity);
            record.parameters["theta_X" + key] = format_number(X.value_at_infinity);
        } else {
            bool chain = Y.value_at_infinity < L.value_at_infinity &&
                         L.value_at_infinity < Z.value_at_infinity &&
                         Z.value_at_infinity < X.value_at_infinity;
            bool means = std::abs(L.derivative_at_zero - Y.derivative_at_zero) < 1e-12 &&
                         std::abs(X.derivative_at_zero - Z.derivative_at_zero) < 1e-12;
            if (!chain || !means) throw cross_check_error("selection B orderings violated");
        }
        for (double lam : grid)
            record.rows.push_back({alpha, lam, L(lam), X(lam), Y(lam), Z(lam)});
    }
    emit(record, copts);
    return 0;
}

// ---- simulate -----------------------------------------------------------------

int cmd_simulate(const ParamOpts& popts, const CommonOpts& copts,
                 const std::string& process_name_str, const std::string& construction_str,
                 double t, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw domain_error("samples must be positive");
    Process process = process_from_name(process_name_str);
    Construction construction = construction_from_name(construction_str);
    if (construction == Construction::subordination &&
        !(process == Process::Y || process == Process::Z))
        throw domain_error("subordination construction is only defined for Y and Z");

    SamplerConfig config{seed, samples, process, construction, build_params(popts), t};
    config.params.require(process);
    auto emp = run_sampler(config);

    int support = 64;
    while (pgf_tail_bound(process, config.params, t, support) > 1e-8 && support < (1 << 16))
        support *= 2;
    support = std::max(support, emp.max_value());
    auto analytic = make_pmf_table(process, config.params, t, support);

    OutputRecord record;
    record.command = "simulate";
    echo_params(record, config.params);
    record.parameters["process"] = process_name_str;
    record.parameters["construction"] = construction_str;
    record.parameters["t"] = format_number(t);
    record.parameters["samples"] = std::to_string(samples);
    record.parameters["seed"] = std::to_string(seed);
    double tv = total_variation(emp, analytic);
    auto chi = chi_square_gof(emp, analytic);
    record.parameters["total_variation"] = format_number(tv);
    record.parameters["chi_square"] = format_number(chi.statistic);
    record.parameters["chi_square_dof"] = std::to_string(chi.dof);
    record.parameters["p_value"] = format_number(chi.p_value);

    record.columns = {"n", "empirical", "analytic", "deviation"};
    int n_emit = emp.max_value();
    for (int n = 0; n <= n_emit; ++n) {
        double e = emp.frequency(n), a = analytic(n);
        record.rows.push_back({static_cast<double>(n), e, a, e - a});
    }
    emit(record, copts);
    return 0;
}

// ---- verify -------------------------------------------------------------------

int cmd_verify(const CommonOpts& copts, const VerifyConfig& config) {
    auto reports = run_full_suite(config);
    OutputRecord record;
    record.command = "verify";
    record.parameters["max_bell_mn"] = std::to_string(config.max_bell_mn);
    record.parameters["max_recurrence_n"] = std::to_string(config.max_recurrence_n);
    record.parameters["max_matrix_n"] = std::to_string(config.max_matrix_n);
    record.parameters["max_shift_n"] = std::to_string(config.max_shift_n);
    record.columns = {"index", "pass", "exact", "max_error", "tolerance"};
    bool all_pass = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        all_pass = all_pass && r.pass;
        record.parameters["check_" + std::to_string(i)] =
            r.identity_id + " (" + r.parameter_grid + ")";
        record.rows.push_back({static_cast<double>(i), r.pass ? 1.0 : 0.0,
                               r.max_error ? 0.0 : 1.0, r.max_error.value_or(0.0), r.tolerance});
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.identity_id << " [" << r.parameter_grid
                  << "] " << (r.max_error ? "max_error=" + format_number(*r.max_error) : "exact")
                  << "\n";
    }
    emit(record, copts);
    return all_pass ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integer-valued Levy processes of the logarithmic family: exact "
                 "combinatorics, transition probabilities, Levy measures, Bernstein "
                 "functions and Monte Carlo comparisons"};
    app.require_subcommand(1);

    auto* pmf_cmd = app.add_subcommand("pmf", "Transition probabilities P(N(t)=n)");
    ParamOpts pmf_params;
    CommonOpts pmf_common;
    std::string pmf_process;
    double pmf_t = 1.0;
    int pmf_nmax = 50;
    pmf_cmd->add_option("--process", pmf_process, "Process (L, X, Y, Z)")->required();
    add_params(pmf_cmd, pmf_params);
    pmf_cmd->add_option("--t", pmf_t, "Time parameter (>= 0)")->capture_default_str();
    pmf_cmd->add_option("--n-max", pmf_nmax, "Largest state to emit")->capture_default_str();
    add_common(pmf_cmd, pmf_common);

    auto* levy_cmd = app.add_subcommand("levy", "Levy measure atoms and total mass");
    ParamOpts levy_params;
    CommonOpts levy_common;
    std::string levy_process;
    int levy_nmax = 50;
    levy_cmd->add_option("--process", levy_process, "Process (L, X, Y, Z)")->required();
    add_params(levy_cmd, levy_params);
    levy_cmd->add_option("--n-max", levy_nmax, "Largest atom to emit")->capture_default_str();
    add_common(levy_cmd, levy_common);

    auto* bern_cmd = app.add_subcommand("bernstein", "Bernstein functions of all four processes");
    ParamOpts bern_params;
    CommonOpts bern_common;
    std::vector<double> bern_lambdas;
    double bern_lmax = 20.0;
    int bern_lcount = 201;
    add_params(bern_cmd, bern_params);
    bern_cmd->add_option("--lambdas", bern_lambdas, "Explicit lambda grid")->delimiter(',');
    bern_cmd->add_option("--lambda-max", bern_lmax, "Uniform grid upper end")
        ->capture_default_str();
    bern_cmd->add_option("--lambda-count", bern_lcount, "Uniform grid size")
        ->capture_default_str();
    add_common(bern_cmd, bern_common);

    auto* fig_cmd = app.add_subcommand("figures", "Data behind the comparison figures");
    CommonOpts fig_common;
    int fig_id = 0;
    std::vector<double> fig_alphas;
    int fig_nmax = 20;
    double fig_lmax = 20.0;
    int fig_lcount = 201;
    fig_cmd->add_option("--figure", fig_id, "Figure number (1, 2 or 3)")->required();
    fig_cmd->add_option("--alpha-list", fig_alphas, "Alpha values (default 0.5, 2/3)")
        ->delimiter(',');
    fig_cmd->add_option("--n-max", fig_nmax, "Atoms to emit (figure 1)")->capture_default_str();
    fig_cmd->add_option("--lambda-max", fig_lmax, "Lambda grid upper end (figures 2-3)")
        ->capture_default_str();
    fig_cmd->add_option("--lambda-count", fig_lcount, "Lambda grid size (figures 2-3)")
        ->capture_default_str();
    add_common(fig_cmd, fig_common);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo comparison with the analytic pmf");
    ParamOpts sim_params;
    CommonOpts sim_common;
    std::string sim_process, sim_construction = "compound-poisson";
    double sim_t = 1.0;
    std::uint64_t sim_samples = 1000000, sim_seed = 20190913;
    sim_cmd->add_option("--process", sim_process, "Process (L, X, Y, Z)")->required();
    sim_cmd->add_option("--construction", sim_construction,
                        "compound-poisson or subordination (Y, Z only)")
        ->check(CLI::IsMember({"compound-poisson", "subordination"}))
        ->capture_default_str();
    add_params(sim_cmd, sim_params);
    sim_cmd->add_option("--t", sim_t, "Time parameter")->capture_default_str();
    sim_cmd->add_option("--samples", sim_samples, "Sample count")->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
    add_common(sim_cmd, sim_common);

    auto* ver_cmd = app.add_subcommand("verify", "Run the identity verification suite");
    CommonOpts ver_common;
    VerifyConfig ver_config;
    bool ver_no_float = false;
    ver_cmd->add_option("--max-n", ver_config.max_bell_mn, "Bell-identity grid bound")
        ->capture_default_str();
    ver_cmd->add_option("--recurrence-n", ver_config.max_recurrence_n, "Linear-identity grid bound")
        ->capture_default_str();
    ver_cmd->add_option("--matrix-n", ver_config.max_matrix_n, "Matrix-composition bound")
        ->capture_default_str();
    ver_cmd->add_option("--shift-n", ver_config.max_shift_n, "Shifted-measure bound")
        ->capture_default_str();
    ver_cmd->add_flag("--skip-float-checks", ver_no_float,
                      "Run only the exact rational identities");
    add_common(ver_cmd, ver_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (pmf_cmd->parsed())
            return cmd_pmf(pmf_params, pmf_common, pmf_process, pmf_t, pmf_nmax);
        if (levy_cmd->parsed()) return cmd_levy(levy_params, levy_common, levy_process, levy_nmax);
        if (bern_cmd->parsed())
            return cmd_bernstein(bern_params, bern_common, bern_lambdas, bern_lmax, bern_lcount);
        if (fig_cmd->parsed())
            return cmd_figures(fig_common, fig_id, fig_alphas, fig_nmax, fig_lmax, fig_lcount);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_params, sim_common, sim_process, sim_construction, sim_t,
                                sim_samples, sim_seed);
        if (ver_cmd->parsed()) {
            ver_config.include_float_checks = !ver_no_float;
            return cmd_verify(ver_common, ver_config);
        }
    } catch (const domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const cross_check_error& e) {
        std::cerr << "cross-check failure: " << e.what() << "\n";
        return kExitCrossCheck;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
