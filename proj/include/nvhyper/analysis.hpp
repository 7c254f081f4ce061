#pragma once

#include <map>
#include <string>
#include <vector>

#include "nvhyper/protocols.hpp"

namespace nvh {

struct HbsgFidelities {
    double F1 = 0, F2 = 0, F3 = 0, F4 = 0;
};

HbsgFidelities hbsg_fidelities(double r, double r0);
double hbsg_efficiency(double r, double r0);

struct HbsaTerms {
    double epsilon = 0, alpha = 0, beta = 0;
};
HbsaTerms hbsa_terms(double r, double r0);
double hbsa_fidelity(double r, double r0);
double hbsa_efficiency(double r, double r0);

// Independent-interaction model: every cavity pass attenuates the ideal state
// that reaches it, and each NV's interactions are scored against the ideal
// output with the other NVs ideal.
struct StageModel {
    double efficiency = 1.0;               // product of per-pass norm^2 ratios
    std::map<Signature, double> fidelity;  // per NV outcome, product over NVs
};

StageModel stage_model(const CircuitSpec& c, const StateVector& initial, const ReflectionPair& pair);

struct HbsgMetrics {
    HbsgFidelities F;
    double eta1 = 0;
};

// Throws std::logic_error if branches of one family disagree by more than 1e-9.
HbsgMetrics simulate_hbsg_metrics(const ReflectionPair& pair);

struct HbsaMetrics {
    double F = 0;
    double eta = 0;
};

HbsaMetrics simulate_hbsa_metrics(const ReflectionPair& pair, const HyperBellLabel& input);

// Fully coherent execution of the same circuits, for comparison.
struct CoherentHbsg {
    std::map<Signature, double> branch_fidelity;
    double norm2 = 0;
};
CoherentHbsg coherent_hbsg_metrics(const ReflectionPair& pair);

struct CoherentHbsa {
    double F_state = 0;   // |<ideal|lossy>|^2 / <lossy|lossy> on the full register
    double F_branch = 0;  // post-selected photon fidelity for the expected signature
    double norm2 = 0;
};
CoherentHbsa coherent_hbsa_metrics(const ReflectionPair& pair, const HyperBellLabel& input);

struct SweepRow {
    double g_norm = 0, ks_ratio = 0, r = 0, r0 = 0;
    double F1 = 0, F2 = 0, F3 = 0, F4 = 0, eta1 = 0, F_hbsa = 0, eta_hbsa = 0;
    double sim_F1 = 0, sim_F2 = 0, sim_F3 = 0, sim_F4 = 0, sim_eta1 = 0, sim_F_hbsa = 0, sim_eta_hbsa = 0;
};

SweepRow sweep_point(double g_norm, double ks_ratio);

// Rows sorted by (ks_ratio, g_norm); evaluation may run on several threads.
std::vector<SweepRow> sweep(const std::vector<double>& g_grid, const std::vector<double>& ks_list, unsigned threads = 0);

std::vector<double> make_grid(double lo, double hi, double step);
std::vector<double> default_g_grid();        // 0.5 .. 5 step 0.05
std::vector<double> default_ks_list();       // 0, 0.03, 0.06

std::vector<std::string> sweep_columns();
std::vector<double> row_values(const SweepRow& r);

std::string emit_csv(const std::vector<SweepRow>& rows);
std::string emit_svg(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::string& text);

}  // namespace nvh
