#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fimin/errors.hpp"
#include "fimin/io.hpp"
#include "fimin/moments.hpp"
#include "fimin/potential.hpp"
#include "fimin/schrodinger.hpp"
#include "fimin/solve.hpp"

namespace {

using namespace fimin;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) {
        throw schema_error("cannot open " + output_path + " for writing");
    }
    out << text;
}

std::map<int, double> parse_lambda_list(const std::string& spec) {
    std::map<int, double> lambdas;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::string item =
            spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw schema_error("--lambda expects k=value[,k=value...], got '" +
                               item + "'");
        }
        try {
            std::size_t used = 0;
            const int k = std::stoi(item.substr(0, eq), &used);
            if (used != eq) throw std::invalid_argument(item);
            const double v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument(item);
            if (k < 1 || lambdas.count(k)) throw std::invalid_argument(item);
            lambdas[k] = v;
        } catch (const std::exception&) {
            throw schema_error("--lambda entry '" + item + "' is malformed");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (lambdas.empty()) {
        throw schema_error("--lambda needs at least one k=value entry");
    }
    return lambdas;
}

std::optional<Grid> make_grid_override(const ClosedFormSolution& closed,
                                       std::optional<int> nodes,
                                       std::optional<double> span) {
    if (!nodes && !span) return std::nullopt;
    const InfoPotential pot = build_potential(closed.lambdas);
    if (span) {
        const double center = potential_minimum(pot).xi;
        return Grid(center - *span / 2.0, center + *span / 2.0,
                    nodes.value_or(4001));
    }
    return auto_grid(pot, *nodes);
}

int run_solve(const std::string& input, const std::string& output) {
    const SolveRequest req = parse_request_file(input);
    const MomentSet moments(req.moments, req.x_scale);
    const ReferenceConstants constants(req.constants);
    const ClosedFormSolution closed = solve_closed_form(moments, constants);
    emit(report_json(closed, nullptr, req.x_scale), output);
    return 0;
}

int run_verify(const std::string& input, const std::string& output,
               std::optional<int> nodes, std::optional<double> span) {
    const SolveRequest req = parse_request_file(input);
    const MomentSet moments(req.moments, req.x_scale);
    const ReferenceConstants constants(req.constants);
    const ClosedFormSolution closed = solve_closed_form(moments, constants);
    const std::optional<Grid> grid = make_grid_override(closed, nodes, span);
    const ConsistencyReport rep = self_consistency(moments, constants, grid);
    emit(report_json(closed, &rep, req.x_scale), output);
    return 0;
}

int run_grade(const std::string& psi_path, const std::string& lambda_spec,
              const std::string& psi_out) {
    const std::map<int, double> lambdas = parse_lambda_list(lambda_spec);
    const GridWavefunction raw = read_wavefunction_csv(psi_path);
    const GridWavefunction psi = normalized(raw);
    const InfoPotential pot = build_potential(lambdas);
    const VirialCheck vc = virial_residual(psi, pot);
    const double score = approx_quality(psi, pot);
    std::cout << "quality_score " << format_number(score) << "\n"
              << "virial_lhs " << format_number(vc.lhs) << "\n"
              << "virial_rhs " << format_number(vc.rhs) << "\n"
              << "virial_residual " << format_number(vc.residual) << "\n";
    if (!psi_out.empty()) {
        write_wavefunction_csv(psi, psi_out);
    }
    return 0;
}

struct DemoRow {
    std::string name;
    double expected;
    double computed;
    double tol;
};

int run_demo(const std::string& name, double omega, double q, double eps,
             const std::string& output) {
    if (!(omega > 0.0)) {
        throw schema_error("--omega must be positive");
    }
    const double shift = q * eps / (omega * omega);

    std::vector<MomentEntry> entries;
    if (name == "ho") {
        entries.push_back({2, 1.0 / (2.0 * omega)});
    } else {
        entries.push_back({1, shift});
        entries.push_back({2, 1.0 / (2.0 * omega) + shift * shift});
    }
    const MomentSet moments(std::move(entries));
    const ReferenceConstants constants;
    const ClosedFormSolution closed = solve_closed_form(moments, constants);
    const ConsistencyReport rep = self_consistency(moments, constants);

    const double alpha_expected =
        name == "ho" ? 4.0 * omega
                     : 4.0 * omega - 4.0 * q * q * eps * eps / (omega * omega);
    std::vector<DemoRow> rows = {
        {"fisher", 2.0 * omega, closed.fisher, 1e-9},
        {"lambda_2", -4.0 * omega * omega, closed.lambdas.at(2), 1e-9},
        {"alpha_bar", 4.0 * omega, closed.alpha_bar, 1e-9},
        {"alpha", alpha_expected, closed.alpha, 1e-9},
        {"xi", name == "ho" ? 0.0 : shift, closed.xi.value_or(0.0), 1e-9},
        {"energy", alpha_expected / 8.0, rep.energy, 1e-5},
    };
    if (name == "ho-field") {
        rows.insert(rows.begin() + 2,
                    {"lambda_1", 8.0 * q * eps, closed.lambdas.at(1), 1e-9});
        rows.push_back({"recovered_mean", shift,
                        rep.recovered_moments.at(1), 1e-5});
    } else {
        rows.push_back({"recovered_x2", 1.0 / (2.0 * omega),
                        rep.recovered_moments.at(2), 1e-5});
    }

    bool all_ok = true;
    std::printf("%-14s %18s %18s  %s\n", "quantity", "expected", "computed",
                "status");
    for (const auto& r : rows) {
        const bool ok = std::abs(r.expected - r.computed) <= r.tol;
        all_ok = all_ok && ok;
        std::printf("%-14s %18s %18s  %s\n", r.name.c_str(),
                    format_number(r.expected).c_str(),
                    format_number(r.computed).c_str(), ok ? "ok" : "MISMATCH");
    }
    std::printf("%s\n", all_ok ? "all expectations matched"
                               : "some expectations MISMATCHED");
    if (!output.empty()) {
        emit(report_json(closed, &rep, 1.0), output);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal Fisher information from moment constraints"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::string psi_path;
    std::string psi_out;
    std::string lambda_spec;
    std::string demo_name;
    std::optional<int> grid_nodes;
    std::optional<double> grid_span;
    double omega = 1.0;
    double q = 1.0;
    double eps = 1.0;

    auto* solve = app.add_subcommand("solve", "Closed-form solve from a JSON request");
    solve->add_option("--input", input, "Request JSON file")->required();
    solve->add_option("--output", output, "Report path (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "Solve plus eigensolver cross-check");
    verify->add_option("--input", input, "Request JSON file")->required();
    verify->add_option("--output", output, "Report path (stdout when omitted)");
    verify->add_option("--grid-nodes", grid_nodes, "Grid node count override");
    verify->add_option("--grid-span", grid_span, "Grid width override, centered on the potential minimum");

    auto* grade = app.add_subcommand("grade", "Score a trial wavefunction CSV");
    grade->add_option("--psi", psi_path, "Wavefunction CSV (header x,psi)")->required();
    grade->add_option("--lambda", lambda_spec, "Multipliers k=v[,k=v...]")->required();
    grade->add_option("--psi-out", psi_out, "Write the normalized amplitude back out");

    auto* demo = app.add_subcommand("demo", "Reproduce a worked closed-form example");
    demo->add_option("name", demo_name, "ho or ho-field")
        ->required()
        ->check(CLI::IsMember({"ho", "ho-field"}));
    demo->add_option("--omega", omega, "Oscillator frequency");
    demo->add_option("--q", q, "Charge");
    demo->add_option("--eps", eps, "Field strength");
    demo->add_option("--output", output, "Report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(input, output);
        if (verify->parsed()) return run_verify(input, output, grid_nodes, grid_span);
        if (grade->parsed()) return run_grade(psi_path, lambda_spec, psi_out);
        return run_demo(demo_name, omega, q, eps, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fimin::exit_code_for(e);
    }
}
