#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvhyper/circuit.hpp"

namespace nvh {

// Polarization-spatial hyperentangled Bell label: family in {1,2}, sign in {+1,-1}.
struct HyperBellLabel {
    int pol = 1;
    int pol_sign = 1;
    int sp = 1;
    int sp_sign = 1;

    auto operator<=>(const HyperBellLabel&) const = default;
};

// Three-photon label: family in {1..4}, sign in {+1,-1}.
struct HyperGHZLabel {
    int pol = 1;
    int pol_sign = 1;
    int sp = 1;
    int sp_sign = 1;

    auto operator<=>(const HyperGHZLabel&) const = default;
};

std::string to_string(const HyperBellLabel& l);  // "phi1+_phi2-"
std::string to_string(const HyperGHZLabel& l);   // "psi1+_psi2-"
std::optional<HyperBellLabel> parse_bell_label(const std::string& s);
std::optional<HyperGHZLabel> parse_ghz_label(const std::string& s);

std::vector<HyperBellLabel> all_bell_labels();  // 16, table order
std::vector<HyperGHZLabel> all_ghz_labels();    // 64

StateVector bell_state(const HyperBellLabel& l);
StateVector ghz_state(const HyperGHZLabel& l);

std::optional<HyperBellLabel> classify(const StateVector& s, double tol = 1e-9);
std::optional<HyperGHZLabel> classify_ghz(const StateVector& s, double tol = 1e-9);
// Dispatches on photon count; returns the ascii label.
std::optional<std::string> classify_label(const StateVector& s, double tol = 1e-9);

// Outcome of one NV: true for phi+, false for phi-.
using Signature = std::vector<bool>;
std::string outcome_name(bool plus);
std::string to_string(const Signature& s);  // "phi+,phi-"

CircuitSpec build_hbsg2();
CircuitSpec build_hbsg3();
CircuitSpec build_hbsa();
// Prefix of the analyzer up to the first syndrome (NV1, NV2 only).
CircuitSpec build_hbsa_stage1();

// Reference tables.
std::map<Signature, HyperBellLabel> table1();
std::map<Signature, HyperGHZLabel> table2();          // with the one inconsistent row corrected
std::map<Signature, HyperGHZLabel> table2_printed();  // as typeset
struct Stage1Row {
    Signature outcomes;
    HyperBellLabel state;
};
std::map<HyperBellLabel, Stage1Row> table3();
std::map<HyperBellLabel, HyperBellLabel> table4();          // with the one inconsistent row corrected
std::map<HyperBellLabel, HyperBellLabel> table4_printed();  // as typeset
std::map<HyperBellLabel, Signature> table5();

enum class Readout { Direct, SpinHadamard };

struct OutcomeRecord {
    std::string input_label;
    Signature nv_outcomes;
    double probability = 0.0;      // normalized over the surviving norm
    double branch_norm2 = 0.0;     // unnormalized weight of the branch
    StateVector photon_state;      // normalized, NVs projected out
    std::optional<std::string> classified;
    double branch_fidelity = 1.0;  // against the ideal branch with the same outcomes
};

struct TabulateInput {
    std::string label;
    std::optional<StateVector> photons;  // nullopt = circuit default
};

std::vector<OutcomeRecord> tabulate(const CircuitSpec& c, const std::vector<TabulateInput>& inputs,
                                    const ReflectionPair& pair, Readout readout = Readout::Direct,
                                    double min_probability = 1e-12, const ExecOptions& base = {});

// All NV-outcome branches of a register (unnormalized photon states).
std::vector<std::pair<Signature, StateVector>> split_by_nv(const CircuitSpec& c, const StateVector& s,
                                                           Readout readout = Readout::Direct);

std::vector<TabulateInput> bell_inputs();

// Table text/CSV formatting.
std::string format_table_text(const std::vector<OutcomeRecord>& rows, std::size_t num_nv);
std::string format_table_csv(const std::vector<OutcomeRecord>& rows, std::size_t num_nv);

struct PauliOp {
    int photon = 0;  // 0 = a, 1 = b
    Role dof = Role::Polarization;
    char pauli = 'X';  // 'X' or 'Z'

    bool operator==(const PauliOp&) const = default;
};

std::string to_string(const PauliOp& p);
StateVector apply_paulis(const StateVector& s, const std::vector<PauliOp>& ops);

// Shortest single-photon Pauli sequence taking dictionary[final] to dictionary[initial].
std::vector<PauliOp> restoration(const HyperBellLabel& final_label, const HyperBellLabel& initial);

struct TableCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};
// Ideal-mode reproduction of the five reference tables; `overrides` is
// forwarded to every execution (used for mutation checks).
std::vector<TableCheck> verify_tables(const ExecOptions& overrides = {});

}  // namespace nvh
