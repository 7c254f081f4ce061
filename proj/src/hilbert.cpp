#include "nvhyper/hilbert.hpp"

#include <cmath>
#include <set>

namespace nvh {

namespace {

Role role_of(Label l) {
    switch (l) {
    case Label::R:
    case Label::L: return Role::Polarization;
    case Label::K1:
    case Label::K2: return Role::Path;
    default: return Role::Spin;
    }
}

std::size_t bit_of(int n, int site) { return std::size_t{1} << (n - 1 - site); }

}  // namespace

int label_bit(Label l) {
    switch (l) {
    case Label::R:
    case Label::K1:
    case Label::Plus: return 0;
    default: return 1;
    }
}

std::string to_string(Role r) {
    switch (r) {
    case Role::Polarization: return "polarization";
    case Role::Path: return "path";
    default: return "spin";
    }
}

std::string to_string(Label l) {
    switch (l) {
    case Label::R: return "R";
    case Label::L: return "L";
    case Label::K1: return "k1";
    case Label::K2: return "k2";
    case Label::Plus: return "+";
    default: return "-";
    }
}

StateVector::StateVector(Layout layout, Vec amps) : layout_(std::move(layout)), amps_(std::move(amps)) {
    const auto want = std::size_t{1} << layout_.size();
    if (static_cast<std::size_t>(amps_.size()) != want)
        throw HilbertError("amplitude count " + std::to_string(amps_.size()) + " does not match 2^" +
                           std::to_string(layout_.size()));
    for (std::size_t i = 0; i < layout_.size(); ++i)
        if (layout_[i].index != static_cast<int>(i)) throw HilbertError("site indices must be contiguous from 0");
}

StateVector StateVector::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw HilbertError("cannot normalize a zero-norm state");
    return StateVector(layout_, amps_ / n);
}

StateVector StateVector::scaled(cplx s) const { return StateVector(layout_, amps_ * s); }

int StateVector::find(Role role, const std::string& owner) const {
    for (const auto& s : layout_)
        if (s.role == role && s.owner == owner) return s.index;
    return -1;
}

int StateVector::require(Role role, const std::string& owner) const {
    const int i = find(role, owner);
    if (i < 0) throw HilbertError("no " + to_string(role) + " site owned by '" + owner + "'");
    return i;
}

LocalOperator::LocalOperator(Mat m, bool check_unitary) : matrix(std::move(m)), unitary(check_unitary) {
    const auto d = matrix.rows();
    if (matrix.cols() != d) throw HilbertError("operator matrix must be square");
    int k = 0;
    while ((Eigen::Index{1} << k) < d) ++k;
    if ((Eigen::Index{1} << k) != d || k < 1 || k > 3) throw HilbertError("operator dimension must be 2, 4 or 8");
    arity = k;
    if (unitary && !nvh::is_unitary(matrix)) throw HilbertError("operator flagged unitary is not unitary");
}

Layout make_layout(std::vector<std::pair<Role, std::string>> sites) {
    Layout out;
    for (auto& [role, owner] : sites) out.push_back(Site{role, owner, static_cast<int>(out.size())});
    return out;
}

StateVector basis_state(const Layout& layout, const std::vector<Label>& labels) {
    if (labels.size() != layout.size())
        throw HilbertError("expected " + std::to_string(layout.size()) + " labels, got " +
                           std::to_string(labels.size()));
    const int n = static_cast<int>(layout.size());
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        if (role_of(labels[i]) != layout[i].role)
            throw HilbertError("label " + to_string(labels[i]) + " invalid for " + to_string(layout[i].role) +
                               " site of '" + layout[i].owner + "'");
        if (label_bit(labels[i])) idx |= bit_of(n, i);
    }
    Vec v = Vec::Zero(Eigen::Index{1} << n);
    v[static_cast<Eigen::Index>(idx)] = 1.0;
    return StateVector(layout, v);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    Layout l = a.layout();
    for (auto s : b.layout()) {
        s.index = static_cast<int>(l.size());
        l.push_back(s);
    }
    const auto db = static_cast<Eigen::Index>(b.dim());
    Vec v(static_cast<Eigen::Index>(a.dim()) * db);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i)
        v.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
    return StateVector(std::move(l), std::move(v));
}

StateVector apply(const StateVector& s, const std::vector<int>& targets, const LocalOperator& op) {
    const int n = s.num_sites();
    const int k = static_cast<int>(targets.size());
    if (k != op.arity)
        throw HilbertError("operator arity " + std::to_string(op.arity) + " but " + std::to_string(k) + " targets");
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= n) throw HilbertError("unknown site " + std::to_string(t));
        if (!seen.insert(t).second) throw HilbertError("duplicate target site " + std::to_string(t));
    }
    std::size_t mask = 0;
    std::vector<std::size_t> bits(k);
    for (int j = 0; j < k; ++j) {
        bits[j] = bit_of(n, targets[j]);
        mask |= bits[j];
    }
    const std::size_t sub = std::size_t{1} << k;
    std::vector<std::size_t> offs(sub, 0);
    for (std::size_t c = 0; c < sub; ++c)
        for (int j = 0; j < k; ++j)
            if (c & (std::size_t{1} << (k - 1 - j))) offs[c] |= bits[j];

    const Vec& in = s.amplitudes();
    Vec out(in.size());
    Vec buf(static_cast<Eigen::Index>(sub));
    for (std::size_t base = 0; base < s.dim(); ++base) {
        if (base & mask) continue;
        for (std::size_t c = 0; c < sub; ++c) buf[static_cast<Eigen::Index>(c)] = in[static_cast<Eigen::Index>(base | offs[c])];
        Vec r = op.matrix * buf;
        for (std::size_t c = 0; c < sub; ++c) out[static_cast<Eigen::Index>(base | offs[c])] = r[static_cast<Eigen::Index>(c)];
    }
    return StateVector(s.layout(), std::move(out));
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.layout() != b.layout()) throw HilbertError("layout mismatch in inner product");
    return a.amplitudes().dot(b.amplitudes());
}

FidelityResult fidelity_checked(const StateVector& ideal, const StateVector& actual) {
    const double na = ideal.norm2(), nb = actual.norm2();
    if (na == 0.0 || nb == 0.0) throw HilbertError("fidelity of a zero-norm state");
    FidelityResult r;
    r.renormalized = std::abs(na - 1.0) > 1e-12 || std::abs(nb - 1.0) > 1e-12;
    r.value = std::norm(inner(ideal, actual)) / (na * nb);
    if (r.value > 1.0) r.value = 1.0;
    return r;
}

double fidelity(const StateVector& ideal, const StateVector& actual) { return fidelity_checked(ideal, actual).value; }

Vec spin_plus() { return Vec::Unit(2, 0); }
Vec spin_minus() { return Vec::Unit(2, 1); }
Vec phi_plus() { return Vec::Constant(2, 1.0 / std::sqrt(2.0)); }
Vec phi_minus() {
    Vec v(2);
    v << -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

StateVector contract(const StateVector& s, int target, const Vec& bra_state) {
    const int n = s.num_sites();
    if (target < 0 || target >= n) throw HilbertError("unknown site " + std::to_string(target));
    Layout l;
    for (const auto& site : s.layout())
        if (site.index != target) l.push_back(Site{site.role, site.owner, static_cast<int>(l.size())});
    const std::size_t b = bit_of(n, target);
    const std::size_t low = b - 1;
    Vec v(static_cast<Eigen::Index>(s.dim() / 2));
    for (std::size_t i = 0; i < s.dim() / 2; ++i) {
        const std::size_t i0 = ((i & ~low) << 1) | (i & low);
        v[static_cast<Eigen::Index>(i)] =
            std::conj(bra_state[0]) * s[i0] + std::conj(bra_state[1]) * s[i0 | b];
    }
    return StateVector(std::move(l), std::move(v));
}

std::vector<MeasureBranch> measure(const StateVector& s, int target, SpinBasis basis) {
    if (target < 0 || target >= s.num_sites()) throw HilbertError("unknown site " + std::to_string(target));
    if (s.layout()[target].role != Role::Spin) throw HilbertError("measurement target is not an NV spin site");
    const double total = s.norm2();
    if (total == 0.0) throw HilbertError("cannot measure a zero-norm state");
    const bool had = basis == SpinBasis::Hadamard;
    const std::pair<std::string, Vec> outcomes[2] = {
        {had ? "phi+" : "+", had ? phi_plus() : spin_plus()},
        {had ? "phi-" : "-", had ? phi_minus() : spin_minus()},
    };
    std::vector<MeasureBranch> out;
    for (const auto& [name, b] : outcomes) {
        LocalOperator proj(b * b.adjoint(), false);
        StateVector p = apply(s, {target}, proj);
        MeasureBranch br;
        br.outcome = name;
        br.probability = p.norm2() / total;
        br.projected = p;
        br.collapsed = br.probability > 0.0 ? p.normalized() : p;
        out.push_back(std::move(br));
    }
    return out;
}

bool is_unitary(const Mat& m, double tol) {
    const Mat d = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace nvh
