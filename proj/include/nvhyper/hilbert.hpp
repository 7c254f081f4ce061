#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nvh {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class Role { Polarization, Path, Spin };

struct Site {
    Role role;
    std::string owner;
    int index = 0;

    bool operator==(const Site&) const = default;
};

using Layout = std::vector<Site>;

// Basis labels. Polarization: R=0, L=1. Path: k1=0, k2=1. Spin: +=0, -=1.
enum class Label { R, L, K1, K2, Plus, Minus };

int label_bit(Label l);
std::string to_string(Role r);
std::string to_string(Label l);

class HilbertError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Site 0 is the most significant bit of the amplitude index.
class StateVector {
public:
    StateVector() = default;
    StateVector(Layout layout, Vec amps);

    const Layout& layout() const { return layout_; }
    const Vec& amplitudes() const { return amps_; }
    int num_sites() const { return static_cast<int>(layout_.size()); }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

    cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

    double norm2() const { return amps_.squaredNorm(); }
    StateVector normalized() const;
    StateVector scaled(cplx s) const;

    // Position of a site in the layout, or -1.
    int find(Role role, const std::string& owner) const;
    int require(Role role, const std::string& owner) const;

private:
    Layout layout_;
    Vec amps_;
};

struct LocalOperator {
    int arity = 1;
    Mat matrix;
    bool unitary = true;

    LocalOperator() = default;
    LocalOperator(Mat m, bool check_unitary = true);
};

// Builds a layout with contiguous indices.
Layout make_layout(std::vector<std::pair<Role, std::string>> sites);

StateVector basis_state(const Layout& layout, const std::vector<Label>& labels);

// Tensor product; layouts are concatenated and reindexed.
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector apply(const StateVector& s, const std::vector<int>& targets, const LocalOperator& op);

cplx inner(const StateVector& a, const StateVector& b);

struct FidelityResult {
    double value = 0.0;
    bool renormalized = false;
};

FidelityResult fidelity_checked(const StateVector& ideal, const StateVector& actual);
double fidelity(const StateVector& ideal, const StateVector& actual);

enum class SpinBasis { PlusMinus, Hadamard };

// Outcome labels: PlusMinus -> "+"/"-", Hadamard -> "phi+"/"phi-".
struct MeasureBranch {
    std::string outcome;
    double probability = 0.0;
    StateVector collapsed;   // normalized, measured site kept in its outcome state
    StateVector projected;   // unnormalized projection
};

std::vector<MeasureBranch> measure(const StateVector& s, int target, SpinBasis basis);

// Contract a spin site against a fixed single-site bra; the site is removed.
StateVector contract(const StateVector& s, int target, const Vec& bra_state);

// Spin states in (+, -) index order.
Vec spin_plus();
Vec spin_minus();
Vec phi_plus();   // (|-> + |+>)/sqrt2
Vec phi_minus();  // (|-> - |+>)/sqrt2

bool is_unitary(const Mat& m, double tol = 1e-12);

}  // namespace nvh
