// nvhyper: command-line front end.
//
// Exit codes: 0 success, 1 domain or verification failure, 2 usage error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvhyper/analysis.hpp"

namespace {

using namespace nvh;

std::string num12(double x) {
    std::ostringstream o;
    o << std::setprecision(12) << x;
    return o.str();
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << text;
    f.close();
    return static_cast<bool>(f);
}

// Pol/spin label string -> photon register; "all" expands to every dictionary state.
int resolve_inputs(const CircuitSpec& c, const std::string& label, std::vector<TabulateInput>& out) {
    const std::size_t n = c.photons.size();
    if (label.empty()) {
        out.push_back({"default", std::nullopt});
        return 0;
    }
    if (label == "all") {
        if (n == 2) {
            out = bell_inputs();
            return 0;
        }
        if (n == 3) {
            for (const auto& l : all_ghz_labels()) out.push_back({to_string(l), ghz_state(l)});
            return 0;
        }
    } else if (n == 2) {
        if (auto l = parse_bell_label(label)) {
            out.push_back({label, bell_state(*l)});
            return 0;
        }
    } else if (n == 3) {
        if (auto l = parse_ghz_label(label)) {
            out.push_back({label, ghz_state(*l)});
            return 0;
        }
    }
    std::cerr << "error: input label '" << label << "' does not fit a " << n << "-photon circuit\n";
    return 2;
}

LocalOperator flipped_bs() {
    Mat m(2, 2);
    const double h = 1.0 / std::sqrt(2.0);
    m << -h, h, h, h;
    return LocalOperator(m);
}

struct RunArgs {
    std::string file;
    std::string mode = "ideal";
    double g = 1.5;
    double ks = 0.03;
    std::string input;
    std::string format = "text";
    bool hadamard_readout = false;
};

int cmd_run(const RunArgs& a) {
    std::string text;
    if (!read_file(a.file, text)) {
        std::cerr << a.file << ": cannot read file\n";
        return 1;
    }
    CircuitSpec c;
    try {
        c = parse(text);
    } catch (const ParseError& e) {
        std::cerr << e.diagnostic(a.file) << "\n";
        return 1;
    }
    std::vector<TabulateInput> inputs;
    if (int rc = resolve_inputs(c, a.input, inputs)) return rc;

    const ReflectionPair pair = a.mode == "ideal" ? ReflectionPair::ideal() : resonant_pair(a.g, a.ks);
    std::vector<OutcomeRecord> rows;
    try {
        rows = tabulate(c, inputs, pair, a.hadamard_readout ? Readout::SpinHadamard : Readout::Direct);
    } catch (const TotalLossError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (a.format == "csv") {
        std::cout << format_table_csv(rows, c.nvs.size());
    } else {
        if (!c.name.empty()) std::cout << "# " << c.name << " (" << a.mode << ")\n";
        std::cout << format_table_text(rows, c.nvs.size());
    }
    return 0;
}

int cmd_verify(bool mutate) {
    ExecOptions opt;
    if (mutate) {
        opt.bs_override = flipped_bs();
        opt.bs_override_photon = "a";
    }
    bool ok = true;
    int passed = 0;
    const auto checks = verify_tables(opt);
    for (const auto& ch : checks) {
        std::cout << ch.name << ": " << (ch.pass ? "PASS" : "FAIL") << " (" << ch.detail << ")\n";
        ok = ok && ch.pass;
        passed += ch.pass ? 1 : 0;
    }
    std::cout << passed << "/" << checks.size() << " tables reproduced\n";
    return ok ? 0 : 1;
}

struct SweepArgs {
    double g_min = 0.5;
    double g_max = 5.0;
    double g_step = 0.05;
    std::vector<double> ks_list{0.0, 0.03, 0.06};
    std::string out;
    std::string plot;
    unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& a) {
    std::vector<SweepRow> rows;
    try {
        rows = sweep(make_grid(a.g_min, a.g_max, a.g_step), a.ks_list, a.threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!write_file(a.out, emit_csv(rows))) {
        std::cerr << a.out << ": cannot write\n";
        return 1;
    }
    if (!a.plot.empty() && !write_file(a.plot, emit_svg(rows))) {
        std::cerr << a.plot << ": cannot write\n";
        return 1;
    }
    std::cout << rows.size() << " rows written to " << a.out << "\n";
    return 0;
}

int cmd_analyze(double g, double ks) {
    const ReflectionPair pair = resonant_pair(g, ks);
    const double r = pair.r.real(), r0 = pair.r0.real();
    const auto cf = hbsg_fidelities(r, r0);
    const auto sim = simulate_hbsg_metrics(pair);
    const auto coh = coherent_hbsg_metrics(pair);
    const auto hbsa_in = HyperBellLabel{1, 1, 1, 1};
    const auto sa = simulate_hbsa_metrics(pair, hbsa_in);
    const auto ca = coherent_hbsa_metrics(pair, hbsa_in);

    auto line = [](const std::string& name, double closed, double model) {
        std::cout << std::left << std::setw(10) << name << std::right << std::setw(16) << num12(closed)
                  << std::setw(16) << num12(model) << std::setw(12) << std::scientific << std::setprecision(2)
                  << std::abs(closed - model) << std::defaultfloat << "\n";
    };
    std::cout << "g_norm=" << num12(g) << " ks_ratio=" << num12(ks) << " r=" << num12(r) << " r0=" << num12(r0) << "\n";
    std::cout << std::left << std::setw(10) << "metric" << std::right << std::setw(16) << "closed" << std::setw(16)
              << "simulated" << std::setw(12) << "|diff|" << "\n";
    line("F1", cf.F1, sim.F.F1);
    line("F2", cf.F2, sim.F.F2);
    line("F3", cf.F3, sim.F.F3);
    line("F4", cf.F4, sim.F.F4);
    line("eta1", hbsg_efficiency(r, r0), sim.eta1);
    line("F_hbsa", hbsa_fidelity(r, r0), sa.F);
    line("eta_hbsa", hbsa_efficiency(r, r0), sa.eta);

    std::cout << "\ncoherent execution (single state vector, no stage factorization)\n";
    std::cout << "hbsg2 norm2 " << num12(coh.norm2) << "\n";
    for (const auto& [sg, f] : coh.branch_fidelity) std::cout << "  " << to_string(sg) << "  F=" << num12(f) << "\n";
    std::cout << "hbsa  norm2 " << num12(ca.norm2) << "  F_state=" << num12(ca.F_state)
              << "  F_branch=" << num12(ca.F_branch) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for NV-center mediated polarization-spatial hyperentanglement"};
    app.require_subcommand(1, 1);

    double cg = 0, cks = 0;
    auto* coeffs = app.add_subcommand("coeffs", "reflection amplitudes r, r0 on resonance");
    coeffs->add_option("--g-norm", cg, "g / sqrt(kappa gamma)")->required()->check(CLI::NonNegativeNumber);
    coeffs->add_option("--ks-ratio", cks, "kappa_s / kappa")->required()->check(CLI::NonNegativeNumber);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "execute a circuit file and tabulate NV outcomes");
    run->add_option("file", ra.file, "circuit file (.hqc)")->required();
    run->add_option("--mode", ra.mode)->check(CLI::IsMember({"ideal", "lossy"}));
    run->add_option("--g-norm", ra.g, "lossy mode only")->check(CLI::NonNegativeNumber);
    run->add_option("--ks-ratio", ra.ks, "lossy mode only")->check(CLI::NonNegativeNumber);
    run->add_option("--input", ra.input, "photon input label, e.g. phi1+_phi2-, or 'all'");
    run->add_option("--format", ra.format)->check(CLI::IsMember({"text", "csv"}));
    run->add_flag("--hadamard-readout", ra.hadamard_readout, "read NVs via spin Hadamard + (+/-) projection");

    bool mutate = false;
    auto* verify = app.add_subcommand("verify-tables", "reproduce the five reference tables");
    verify->add_flag("--mutate-bs", mutate)->group("");

    SweepArgs sa;
    auto* sw = app.add_subcommand("sweep", "fidelity/efficiency sweep to CSV (and SVG)");
    sw->add_option("--g-min", sa.g_min)->check(CLI::NonNegativeNumber);
    sw->add_option("--g-max", sa.g_max)->check(CLI::NonNegativeNumber);
    sw->add_option("--g-step", sa.g_step)->check(CLI::PositiveNumber);
    sw->add_option("--ks-list", sa.ks_list)->delimiter(',')->check(CLI::NonNegativeNumber);
    sw->add_option("--out", sa.out)->required();
    sw->add_option("--plot", sa.plot);
    sw->add_option("--threads", sa.threads, "0 = hardware concurrency");

    double ag = 1.5, aks = 0.03;
    auto* an = app.add_subcommand("analyze", "closed forms against simulation at one point");
    an->add_option("--g-norm", ag)->check(CLI::NonNegativeNumber);
    an->add_option("--ks-ratio", aks)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*coeffs) {
            const ReflectionPair p = resonant_pair(cg, cks);
            std::cout << "r=" << num12(p.r.real()) << " r0=" << num12(p.r0.real()) << "\n";
            return 0;
        }
        if (*run) return cmd_run(ra);
        if (*verify) return cmd_verify(mutate);
        if (*sw) return cmd_sweep(sa);
        if (*an) return cmd_analyze(ag, aks);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
