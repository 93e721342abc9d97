// Command-line front end: geometry/kernel evaluation, lattices, Berezin and
// averaging transforms, Carleson diagnostics and the identity suite, all
// reproducible from (argv, input files, --seed).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "siegel/carleson.hpp"
#include "siegel/geometry.hpp"
#include "siegel/json_io.hpp"
#include "siegel/kernel.hpp"
#include "siegel/measure.hpp"
#include "siegel/metric.hpp"
#include "siegel/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

siegel::CPoint parse_point_arg(const std::string& text, const char* flag) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw siegel::SchemaError(std::string(flag) + ": " + e.what());
    }
    return siegel::point_from_json(j);
}

siegel::RegionSpec parse_region_arg(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw siegel::SchemaError(std::string("--region: ") + e.what());
    }
    return siegel::region_from_json(j);
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw siegel::SchemaError("cannot open output file: " + out_path);
    out << text;
    if (!out) throw siegel::SchemaError("write failed: " + out_path);
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw siegel::SchemaError("cannot open output file: " + path);
    out << text;
    if (!out) throw siegel::SchemaError("write failed: " + path);
}

struct Cli {
    // shared
    std::uint64_t seed = 7;
    std::size_t samples = 200000;
    std::string out_path;

    // kernel
    std::string z_text, w_text;
    double p = 2.0;

    // metric
    std::string from_text, to_text;

    // lattice
    std::string region_text;
    std::size_t dim = 1;
    double r = 1.0;

    // measure-based
    std::string measure_path;
    double alpha = 0.0;

    // diagnose
    std::string csv_path;

    // verify
    std::vector<unsigned> dims = {1, 2};
    std::size_t checks = 10000;
    std::size_t trials = 100000;
};

int run_kernel(const Cli& cli) {
    const siegel::CPoint z = parse_point_arg(cli.z_text, "--z");
    const siegel::CPoint w = parse_point_arg(cli.w_text, "--w");
    const siegel::cplx k = siegel::bergman_kernel(z, w);
    const siegel::cplx kn = siegel::normalized_kernel(z, w);
    json j{{"K", json::array({k.real(), k.imag()})},
           {"normalized", json::array({kn.real(), kn.imag()})},
           {"p", cli.p},
           {"kernel_norm", siegel::kernel_norm(z, cli.p)}};
    emit(j, cli.out_path);
    return kExitOk;
}

int run_metric(const Cli& cli) {
    const siegel::CPoint from = parse_point_arg(cli.from_text, "--from");
    const siegel::CPoint to = parse_point_arg(cli.to_text, "--to");
    emit(json{{"beta", siegel::bergman_distance(from, to)}}, cli.out_path);
    return kExitOk;
}

int run_lattice(const Cli& cli) {
    const siegel::RegionSpec region = parse_region_arg(cli.region_text);
    const siegel::Lattice lat = siegel::build_lattice(region, cli.dim, cli.r, cli.seed);
    emit(siegel::lattice_to_json(lat), cli.out_path);
    return kExitOk;
}

int run_berezin(const Cli& cli) {
    const siegel::MeasureSpec mu = siegel::measure_from_file(cli.measure_path);
    const siegel::CPoint z = parse_point_arg(cli.z_text, "--z");
    const siegel::IntegrationResult res = siegel::berezin(mu, z, cli.samples, cli.seed);
    emit(siegel::integration_result_to_json(res), cli.out_path);
    return kExitOk;
}

int run_averaging(const Cli& cli) {
    const siegel::MeasureSpec mu = siegel::measure_from_file(cli.measure_path);
    const siegel::CPoint z = parse_point_arg(cli.z_text, "--z");
    const siegel::IntegrationResult res =
        siegel::averaging(mu, z, cli.r, cli.samples, cli.seed);
    emit(siegel::integration_result_to_json(res), cli.out_path);
    return kExitOk;
}

int run_admissible(const Cli& cli) {
    const siegel::MeasureSpec mu = siegel::measure_from_file(cli.measure_path);
    json j;
    if (cli.alpha > 0.0) {
        const siegel::IntegrationResult res =
            siegel::admissibility_integral(mu, cli.alpha, cli.samples, cli.seed);
        j = siegel::integration_result_to_json(res);
        j["alpha"] = cli.alpha;
    } else {
        // No canonical exponent exists; scan small integers and report the
        // first finite one.
        const double limit = 2.0 * (static_cast<double>(mu.dim()) + 1.0);
        json scan = json::array();
        double found = 0.0;
        for (double a = 1.0; a <= limit + 0.5; a += 1.0) {
            const siegel::IntegrationResult res =
                siegel::admissibility_integral(mu, a, cli.samples, cli.seed);
            json row = siegel::integration_result_to_json(res);
            row["alpha"] = a;
            scan.push_back(row);
            if (!res.divergent && found == 0.0) found = a;
        }
        j["scan"] = scan;
        j["first_finite_alpha"] = found;
        j["admissible"] = found > 0.0;
    }
    emit(j, cli.out_path);
    return kExitOk;
}

int run_diagnose(const Cli& cli) {
    const siegel::MeasureSpec mu = siegel::measure_from_file(cli.measure_path);
    siegel::DiagnoseConfig config;
    config.r = cli.r;
    config.seed = cli.seed;
    config.samples = cli.samples;
    const siegel::DiagnosticsReport rep = siegel::diagnose(mu, config);
    if (!cli.csv_path.empty()) write_text(siegel::report_shell_trend_csv(rep), cli.csv_path);
    emit(siegel::report_to_json(rep), cli.out_path);
    return kExitOk;
}

int run_verify(const Cli& cli) {
    siegel::VerifyOptions options;
    options.samples = cli.samples;
    options.checks = cli.checks;
    options.trials = cli.trials;
    options.seed = cli.seed;
    options.dims.clear();
    for (unsigned n : cli.dims) options.dims.push_back(n);
    const std::vector<siegel::VerifyRow> rows = siegel::run_verify_suite(options);
    const bool ok = siegel::verify_all_pass(rows);
    json j{{"identities", siegel::verify_rows_to_json(rows)}, {"all_pass", ok}};
    emit(j, cli.out_path);
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman-space geometry and Toeplitz diagnostics on the Siegel upper half-space"};
    app.require_subcommand(1);

    Cli cli;

    auto add_common = [&cli](CLI::App* cmd, bool with_samples) {
        cmd->add_option("--seed", cli.seed, "deterministic seed");
        if (with_samples) cmd->add_option("--samples", cli.samples, "Monte-Carlo sample count");
        cmd->add_option("--out", cli.out_path, "write the JSON output to this file");
    };

    CLI::App* kernel = app.add_subcommand("kernel", "evaluate K(z,w), k_z(w) and ||K_z||_p");
    kernel->add_option("--z", cli.z_text, "point JSON")->required();
    kernel->add_option("--w", cli.w_text, "point JSON")->required();
    kernel->add_option("--p", cli.p, "norm exponent (> 1)");
    add_common(kernel, false);

    CLI::App* metric = app.add_subcommand("metric", "Bergman distance between two points");
    metric->add_option("--from", cli.from_text, "point JSON")->required();
    metric->add_option("--to", cli.to_text, "point JSON")->required();
    add_common(metric, false);

    CLI::App* lattice = app.add_subcommand("lattice", "build an r-lattice of a bounded region");
    lattice->add_option("--region", cli.region_text, "region JSON")->required();
    lattice->add_option("--dim", cli.dim, "complex dimension n");
    lattice->add_option("--r", cli.r, "lattice radius")->required();
    add_common(lattice, false);

    CLI::App* berezin = app.add_subcommand("berezin", "Berezin transform of a measure at z");
    berezin->add_option("--measure", cli.measure_path, "measure JSON file")->required();
    berezin->add_option("--z", cli.z_text, "point JSON")->required();
    add_common(berezin, true);

    CLI::App* averaging =
        app.add_subcommand("averaging", "averaging function of a measure at z");
    averaging->add_option("--measure", cli.measure_path, "measure JSON file")->required();
    averaging->add_option("--z", cli.z_text, "point JSON")->required();
    averaging->add_option("--r", cli.r, "ball radius")->required();
    add_common(averaging, true);

    CLI::App* admissible =
        app.add_subcommand("admissible", "symbol-class membership integral of a measure");
    admissible->add_option("--measure", cli.measure_path, "measure JSON file")->required();
    admissible->add_option("--alpha", cli.alpha, "decay exponent (0 scans 1..2(n+1))");
    add_common(admissible, true);

    CLI::App* diagnose =
        app.add_subcommand("diagnose", "boundedness/compactness diagnostics of a measure");
    diagnose->add_option("--measure", cli.measure_path, "measure JSON file")->required();
    diagnose->add_option("--r", cli.r, "averaging/lattice radius");
    diagnose->add_option("--csv", cli.csv_path, "also write the shell-trend table as CSV");
    add_common(diagnose, true);

    CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
    verify->add_option("--samples", cli.samples, "samples per integral")
        ->default_val(std::size_t{1000000});
    verify->add_option("--checks", cli.checks, "checks per identity family");
    verify->add_option("--trials", cli.trials, "trials per inequality family");
    verify->add_option("--dims", cli.dims, "dimensions to cover");
    verify->add_option("--seed", cli.seed, "deterministic seed")->default_val(std::uint64_t{1});
    verify->add_option("--out", cli.out_path, "write the JSON output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (kernel->parsed()) return run_kernel(cli);
        if (metric->parsed()) return run_metric(cli);
        if (lattice->parsed()) return run_lattice(cli);
        if (berezin->parsed()) return run_berezin(cli);
        if (averaging->parsed()) return run_averaging(cli);
        if (admissible->parsed()) return run_admissible(cli);
        if (diagnose->parsed()) return run_diagnose(cli);
        if (verify->parsed()) return run_verify(cli);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
