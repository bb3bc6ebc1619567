#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "reporting.hpp"
#include "shgeff/errors.hpp"
#include "tensor_input.hpp"

namespace {

int dispatch(bool compute, bool scan, bool verify, bool classes,
             const std::string& input_path, const shgeff::cli::ComputeOptions& copts,
             const shgeff::cli::ScanOptions& sopts,
             const shgeff::cli::VerifyOptions& vopts, bool classes_json) {
    using namespace shgeff::cli;
    if (compute) {
        TensorInput in = load_tensor_file(input_path);
        return cmd_compute(in, copts, std::cout);
    }
    if (scan) {
        TensorInput in = load_tensor_file(input_path);
        return cmd_scan(in, sopts, std::cout);
    }
    if (verify) return cmd_verify(vopts, std::cout);
    if (classes) return cmd_classes(classes_json, std::cout);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "shgeff: effective second-harmonic coefficients and largest C-eigenvalues "
        "of 3x3x3 susceptibility tensors"};
    app.require_subcommand(1);

    std::string input_path;
    shgeff::cli::ComputeOptions copts;
    shgeff::cli::ScanOptions sopts;
    shgeff::cli::VerifyOptions vopts;
    bool classes_json = false;

    CLI::App* compute = app.add_subcommand(
        "compute", "Solve the reduced models and the C-eigenvalue problem for a tensor file");
    compute->add_option("input", input_path, "tensor description file (JSON)")
        ->required();
    compute->add_flag("--oracle", copts.oracle, "append brute-force grid cross-checks");
    compute->add_option("--seed", copts.seed, "random-start seed (default 0x5EED)");
    compute->add_option("--grid", copts.grid, "oracle grid resolution (default 256/512)")
        ->check(CLI::Range(16, 1 << 20));
    compute->add_option("--tol", copts.tol, "solver tolerance override (default 1e-12/1e-13)")
        ->check(CLI::NonNegativeNumber);
    compute->add_option("--pm", copts.pm, "configuration filter (default all)")
        ->check(CLI::IsMember({"ooe", "eeo", "oee", "eoo", "all"}));
    compute->add_flag("--json", copts.json, "emit the report as JSON");

    CLI::App* scan = app.add_subcommand(
        "scan", "Tabulate chi_eff over an angle grid and write it as CSV");
    scan->add_option("input", input_path, "tensor description file (JSON)")->required();
    scan->add_option("--pm", sopts.pm, "configuration (ooe|eeo|oee|eoo)")
        ->required()
        ->check(CLI::IsMember({"ooe", "eeo", "oee", "eoo"}));
    scan->add_option("--ntheta", sopts.n_theta, "polar points over [0, pi] (default 181)")
        ->check(CLI::Range(2, 100000));
    scan->add_option("--nphi", sopts.n_phi, "azimuth points over [0, 2*pi) (default 360)")
        ->check(CLI::Range(2, 100000));
    scan->add_option("--out", sopts.out_path, "output CSV path")->required();
    scan->add_flag("--json", sopts.json, "emit the summary as JSON");

    CLI::App* verify = app.add_subcommand(
        "verify", "Adjudicate the built-in crystal-class claims against solvers and oracles");
    verify->add_option("--seed", vopts.seed, "random-start seed (default 0x5EED)");
    verify->add_option("--grid", vopts.grid, "oracle grid resolution (default 256/512)")
        ->check(CLI::Range(16, 1 << 20));
    verify->add_flag("--json", vopts.json, "emit the suite report as JSON");

    CLI::App* classes = app.add_subcommand(
        "classes", "List the built-in crystal classes, parameters, and variants");
    classes->add_flag("--json", classes_json, "emit the registry as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return dispatch(compute->parsed(), scan->parsed(), verify->parsed(),
                        classes->parsed(), input_path, copts, sopts, vopts,
                        classes_json);
    } catch (const shgeff::cli::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const shgeff::cli::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const shgeff::symmetry_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const shgeff::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
