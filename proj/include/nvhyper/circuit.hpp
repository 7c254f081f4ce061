#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nvhyper/optics.hpp"

namespace nvh {

enum class SpinInit { Plus, Minus, PhiPlus, PhiMinus };

std::string to_string(SpinInit s);
Vec spin_vector(SpinInit s);

struct NvDecl {
    std::string name;
    SpinInit init = SpinInit::PhiPlus;

    bool operator==(const NvDecl&) const = default;
};

enum class PairSource { Ideal, FromParams };

struct Step {
    ElementKind kind = ElementKind::SWITCH;
    std::vector<std::string> targets;  // nv_interact: {nv, photon}
    std::optional<Mode> mode;
    PairSource pair_source = PairSource::FromParams;

    bool operator==(const Step&) const = default;
};

struct CircuitSpec {
    std::string name;
    std::string description;
    std::vector<std::string> photons;
    std::vector<NvDecl> nvs;
    std::vector<Step> steps;

    bool operator==(const CircuitSpec&) const = default;

    bool is_photon(const std::string& n) const;
    bool is_nv(const std::string& n) const;
    int nv_index(const std::string& n) const;
};

enum class ErrorKind { SyntaxError, ReferenceError, ArityError, DuplicateError };

std::string to_string(ErrorKind k);

class ParseError : public std::runtime_error {
public:
    ParseError(ErrorKind kind, int line, int col, std::string message);

    ErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return message_; }

    // "path:line:col: Kind: message"
    std::string diagnostic(const std::string& path) const;

private:
    ErrorKind kind_;
    int line_;
    int col_;
    std::string message_;
};

CircuitSpec parse(const std::string& text);
std::string serialize(const CircuitSpec& c);

// Throws ParseError (line 0) on an invalid in-memory spec.
void validate(const CircuitSpec& c);

// Photons in declaration order as (pol, path), then NV spins.
Layout circuit_layout(const CircuitSpec& c);
Layout photon_layout(const std::vector<std::string>& photons);

// Photons in (|R>+|L>)/sqrt2 (x) |k1>, NVs per declaration.
StateVector default_initial(const CircuitSpec& c);

// Photon register supplied explicitly; NVs per declaration.
StateVector initial_with_photons(const CircuitSpec& c, const StateVector& photons);

struct ResolvedStep {
    std::vector<int> targets;
    LocalOperator op;
};

// nullopt for steps that act as identity (switch).
std::optional<ResolvedStep> resolve_step(const CircuitSpec& c, const Step& s, const ReflectionPair& pair);

struct ExecOptions {
    std::optional<StateVector> initial;
    std::size_t first = 0;
    std::size_t last = static_cast<std::size_t>(-1);  // exclusive
    std::optional<std::string> lossy_nv;  // only this NV sees the lossy pair
    std::optional<LocalOperator> bs_override;
    std::optional<std::string> bs_override_photon;  // nullopt = every bs step
};

class TotalLossError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

StateVector execute(const CircuitSpec& c, const ReflectionPair& pair, const ExecOptions& opt = {});

// Adjoint of the ideal steps in [first, last), applied in reverse.
StateVector execute_inverse(const CircuitSpec& c, const StateVector& s, std::size_t first, std::size_t last);

}  // namespace nvh
