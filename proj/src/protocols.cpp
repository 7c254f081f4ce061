#include "nvhyper/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nvh {

namespace {

char sign_char(int s) { return s > 0 ? '+' : '-'; }

// "1+2-" -> label
HyperBellLabel bell(const char* code) {
    return {code[0] - '0', code[1] == '+' ? 1 : -1, code[2] - '0', code[3] == '+' ? 1 : -1};
}

HyperGHZLabel ghz(const char* code) {
    return {code[0] - '0', code[1] == '+' ? 1 : -1, code[2] - '0', code[3] == '+' ? 1 : -1};
}

// "+-" -> {true, false}
Signature sig(const char* code) {
    Signature s;
    for (const char* p = code; *p; ++p) s.push_back(*p == '+');
    return s;
}

std::vector<std::string> photon_names(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.emplace_back(1, static_cast<char>('a' + i));
    return v;
}

// Basis configurations of the two GHZ/Bell terms for a family, per photon bit.
std::array<std::vector<int>, 2> bell_terms(int family) {
    if (family == 1) return {std::vector<int>{0, 0}, std::vector<int>{1, 1}};
    return {std::vector<int>{1, 0}, std::vector<int>{0, 1}};
}

std::array<std::vector<int>, 2> ghz_terms(int family) {
    switch (family) {
    case 1: return {std::vector<int>{0, 0, 0}, std::vector<int>{1, 1, 1}};
    case 2: return {std::vector<int>{1, 0, 0}, std::vector<int>{0, 1, 1}};
    case 3: return {std::vector<int>{0, 1, 0}, std::vector<int>{1, 0, 1}};
    default: return {std::vector<int>{0, 0, 1}, std::vector<int>{1, 1, 0}};
    }
}

StateVector product_state(int nph, const std::array<std::vector<int>, 2>& pol, int pol_sign,
                          const std::array<std::vector<int>, 2>& sp, int sp_sign) {
    const int n = 2 * nph;
    Vec v = Vec::Zero(Eigen::Index{1} << n);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            std::size_t idx = 0;
            for (int p = 0; p < nph; ++p) {
                if (pol[a][p]) idx |= std::size_t{1} << (n - 1 - 2 * p);
                if (sp[b][p]) idx |= std::size_t{1} << (n - 2 - 2 * p);
            }
            v[static_cast<Eigen::Index>(idx)] += (a ? double(pol_sign) : 1.0) * (b ? double(sp_sign) : 1.0) / 2.0;
        }
    return StateVector(photon_layout(photon_names(nph)), v);
}

bool photon_register(const StateVector& s, int nph) {
    if (s.num_sites() != 2 * nph) return false;
    for (int i = 0; i < s.num_sites(); ++i)
        if (s.layout()[i].role != (i % 2 == 0 ? Role::Polarization : Role::Path)) return false;
    return true;
}

template <class L>
std::optional<L> best_match(const StateVector& s, const std::vector<L>& labels, StateVector (*dict)(const L&), double tol) {
    const StateVector u = s.normalized();
    for (const auto& l : labels) {
        const StateVector d = dict(l);
        if (std::norm(d.amplitudes().dot(u.amplitudes())) > 1.0 - tol) return l;
    }
    return std::nullopt;
}

}  // namespace

std::string to_string(const HyperBellLabel& l) {
    std::string s = "phi";
    s += std::to_string(l.pol);
    s += sign_char(l.pol_sign);
    s += "_phi";
    s += std::to_string(l.sp);
    s += sign_char(l.sp_sign);
    return s;
}

std::string to_string(const HyperGHZLabel& l) {
    std::string s = "psi";
    s += std::to_string(l.pol);
    s += sign_char(l.pol_sign);
    s += "_psi";
    s += std::to_string(l.sp);
    s += sign_char(l.sp_sign);
    return s;
}

namespace {

template <class L>
std::optional<L> parse_label(const std::string& s, const std::string& stem, int max_family) {
    // stem F S _ stem F S
    const std::size_t k = stem.size();
    if (s.size() != 2 * k + 5 || s.compare(0, k, stem) != 0 || s[k + 2] != '_' || s.compare(k + 3, k, stem) != 0)
        return std::nullopt;
    auto fam = [&](char c) { return c >= '1' && c <= char('0' + max_family) ? c - '0' : -1; };
    auto sg = [](char c) { return c == '+' ? 1 : (c == '-' ? -1 : 0); };
    L l{fam(s[k]), sg(s[k + 1]), fam(s[2 * k + 3]), sg(s[2 * k + 4])};
    if (l.pol < 0 || l.sp < 0 || l.pol_sign == 0 || l.sp_sign == 0) return std::nullopt;
    return l;
}

}  // namespace

std::optional<HyperBellLabel> parse_bell_label(const std::string& s) { return parse_label<HyperBellLabel>(s, "phi", 2); }

std::optional<HyperGHZLabel> parse_ghz_label(const std::string& s) { return parse_label<HyperGHZLabel>(s, "psi", 4); }

std::vector<HyperBellLabel> all_bell_labels() {
    // Row order of the analyzer tables: spatial outer, polarization inner.
    std::vector<HyperBellLabel> v;
    for (int sp : {1, 2})
        for (int ss : {1, -1})
            for (int pol : {1, 2})
                for (int ps : {1, -1}) v.push_back({pol, ps, sp, ss});
    return v;
}

std::vector<HyperGHZLabel> all_ghz_labels() {
    std::vector<HyperGHZLabel> v;
    for (int pol = 1; pol <= 4; ++pol)
        for (int ps : {1, -1})
            for (int sp = 1; sp <= 4; ++sp)
                for (int ss : {1, -1}) v.push_back({pol, ps, sp, ss});
    return v;
}

StateVector bell_state(const HyperBellLabel& l) {
    return product_state(2, bell_terms(l.pol), l.pol_sign, bell_terms(l.sp), l.sp_sign);
}

StateVector ghz_state(const HyperGHZLabel& l) {
    return product_state(3, ghz_terms(l.pol), l.pol_sign, ghz_terms(l.sp), l.sp_sign);
}

std::optional<HyperBellLabel> classify(const StateVector& s, double tol) {
    if (!photon_register(s, 2)) throw HilbertError("classify expects a two-photon register");
    static const auto labels = all_bell_labels();
    return best_match<HyperBellLabel>(s, labels, &bell_state, tol);
}

std::optional<HyperGHZLabel> classify_ghz(const StateVector& s, double tol) {
    if (!photon_register(s, 3)) throw HilbertError("classify_ghz expects a three-photon register");
    static const auto labels = all_ghz_labels();
    return best_match<HyperGHZLabel>(s, labels, &ghz_state, tol);
}

std::optional<std::string> classify_label(const StateVector& s, double tol) {
    if (photon_register(s, 2)) {
        if (auto l = classify(s, tol)) return to_string(*l);
        return std::nullopt;
    }
    if (photon_register(s, 3)) {
        if (auto l = classify_ghz(s, tol)) return to_string(*l);
        return std::nullopt;
    }
    return std::nullopt;
}

std::string outcome_name(bool plus) { return plus ? "phi+" : "phi-"; }

std::string to_string(const Signature& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += outcome_name(s[i]);
    }
    return out;
}

std::map<Signature, HyperBellLabel> table1() {
    return {{sig("+-"), bell("1-1-")}, {sig("++"), bell("1-2-")}, {sig("--"), bell("2-1-")}, {sig("-+"), bell("2-2-")}};
}

std::map<Signature, HyperGHZLabel> table2_printed() {
    return {{sig("+--"), ghz("1+2+")}, {sig("+-+"), ghz("1+2-")}, {sig("++-"), ghz("4+2+")},
            {sig("+++"), ghz("4+2-")}, {sig("-+-"), ghz("3+2+")}, {sig("-++"), ghz("3+2-")},
            {sig("---"), ghz("2+1+")}, {sig("--+"), ghz("2+2-")}};
}

std::map<Signature, HyperGHZLabel> table2() {
    auto t = table2_printed();
    // Seven rows share one spatial family; NV3 alone fixes the spatial sign.
    t[sig("---")] = ghz("2+2+");
    return t;
}

std::map<HyperBellLabel, Stage1Row> table3() {
    std::map<HyperBellLabel, Stage1Row> t;
    for (int ps : {1, -1}) {
        const int np = -ps;
        t[{1, ps, 1, 1}] = {sig("--"), {1, ps, 1, 1}};
        t[{2, ps, 1, 1}] = {sig("-+"), {2, np, 2, -1}};
        t[{1, ps, 1, -1}] = {sig("-+"), {1, np, 2, 1}};
        t[{2, ps, 1, -1}] = {sig("--"), {2, ps, 1, -1}};
        t[{1, ps, 2, 1}] = {sig("+-"), {1, np, 1, -1}};
        t[{2, ps, 2, 1}] = {sig("++"), {2, ps, 2, 1}};
        t[{1, ps, 2, -1}] = {sig("++"), {1, ps, 2, -1}};
        t[{2, ps, 2, -1}] = {sig("+-"), {2, np, 1, 1}};
    }
    return t;
}

std::map<HyperBellLabel, HyperBellLabel> table4_printed() {
    static const char* rows[][2] = {
        {"1+1+", "1+1+"}, {"1-1+", "2-2-"}, {"2+1+", "2-1+"}, {"2-1+", "1-2-"}, {"1+1-", "2+1-"}, {"1-1-", "1-2+"},
        {"2+1-", "1+1-"}, {"2-1-", "2-2+"}, {"1+2+", "2+2+"}, {"1-2+", "1-1-"}, {"2+2+", "1+2+"}, {"2-2+", "2-1-"},
        {"1+2-", "1+2-"}, {"1-2-", "2-1+"}, {"2+2-", "2+2-"}, {"2-2-", "1-1+"}};
    std::map<HyperBellLabel, HyperBellLabel> t;
    for (const auto& r : rows) t[bell(r[0])] = bell(r[1]);
    return t;
}

std::map<HyperBellLabel, HyperBellLabel> table4() {
    auto t = table4_printed();
    // The typeset final for this input duplicates the phi1-_phi2- row; the
    // linear (Pauli-frame) structure of the remaining 15 rows fixes it.
    t[bell("2+1+")] = bell("2+1+");
    return t;
}

std::map<HyperBellLabel, Signature> table5() {
    static const char* rows[][2] = {
        {"1+1+", "----"}, {"1-1+", "---+"}, {"2+1+", "-++-"}, {"2-1+", "-+++"}, {"1+1-", "-+--"}, {"1-1-", "-+-+"},
        {"2+1-", "--+-"}, {"2-1-", "--++"}, {"1+2+", "+-++"}, {"1-2+", "+-+-"}, {"2+2+", "++-+"}, {"2-2+", "++--"},
        {"1+2-", "++++"}, {"1-2-", "+++-"}, {"2+2-", "+--+"}, {"2-2-", "+---"}};
    std::map<HyperBellLabel, Signature> t;
    for (const auto& r : rows) t[bell(r[0])] = sig(r[1]);
    return t;
}

std::vector<std::pair<Signature, StateVector>> split_by_nv(const CircuitSpec& c, const StateVector& s, Readout readout) {
    StateVector reg = s;
    const int first_spin = 2 * static_cast<int>(c.photons.size());
    const std::size_t nnv = c.nvs.size();
    if (readout == Readout::SpinHadamard)
        for (std::size_t k = 0; k < nnv; ++k) reg = apply(reg, {first_spin + static_cast<int>(k)}, optics::spin_hadamard());
    std::vector<std::pair<Signature, StateVector>> out;
    for (std::size_t code = 0; code < (std::size_t{1} << nnv); ++code) {
        Signature sg(nnv);
        StateVector br = reg;
        // Contract from the last spin so earlier indices stay valid.
        for (std::size_t k = nnv; k-- > 0;) {
            sg[k] = ((code >> (nnv - 1 - k)) & 1) == 0;
            const Vec bra = readout == Readout::Direct ? (sg[k] ? phi_plus() : phi_minus())
                                                       : (sg[k] ? spin_plus() : spin_minus());
            br = contract(br, first_spin + static_cast<int>(k), bra);
        }
        out.emplace_back(std::move(sg), std::move(br));
    }
    return out;
}

std::vector<TabulateInput> bell_inputs() {
    std::vector<TabulateInput> v;
    for (const auto& l : all_bell_labels()) v.push_back({to_string(l), bell_state(l)});
    return v;
}

std::vector<OutcomeRecord> tabulate(const CircuitSpec& c, const std::vector<TabulateInput>& inputs,
                                    const ReflectionPair& pair, Readout readout, double min_probability,
                                    const ExecOptions& base) {
    std::vector<OutcomeRecord> rows;
    for (const auto& in : inputs) {
        ExecOptions opt = base;
        opt.initial = in.photons ? initial_with_photons(c, *in.photons) : default_initial(c);
        const StateVector out = execute(c, pair, opt);
        const auto branches = split_by_nv(c, out, readout);
        const bool ideal = pair.is_ideal();
        std::vector<std::pair<Signature, StateVector>> ideal_branches;
        if (!ideal) ideal_branches = split_by_nv(c, execute(c, ReflectionPair::ideal(), opt), readout);
        const double total = out.norm2();
        for (std::size_t i = 0; i < branches.size(); ++i) {
            const auto& [sg, st] = branches[i];
            const double w = st.norm2();
            if (w / total <= min_probability) continue;
            OutcomeRecord r;
            r.input_label = in.label;
            r.nv_outcomes = sg;
            r.branch_norm2 = w;
            r.probability = w / total;
            r.photon_state = st.normalized();
            r.classified = classify_label(r.photon_state, 1e-9);
            if (!ideal) {
                const StateVector& id = ideal_branches[i].second;
                r.branch_fidelity = id.norm2() > 0.0 ? fidelity(id, st) : 0.0;
                if (!r.classified && id.norm2() > 0.0) r.classified = classify_label(id.normalized(), 1e-9);
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

namespace {

std::string fmt_num(double x) {
    std::ostringstream o;
    o << std::setprecision(12) << x;
    return o.str();
}

}  // namespace

std::string format_table_csv(const std::vector<OutcomeRecord>& rows, std::size_t num_nv) {
    std::ostringstream o;
    o << "input_label";
    for (std::size_t k = 0; k < num_nv; ++k) o << ",nv" << (k + 1);
    o << ",probability,classified_label,branch_fidelity\n";
    for (const auto& r : rows) {
        o << r.input_label;
        for (bool b : r.nv_outcomes) o << ',' << outcome_name(b);
        o << ',' << fmt_num(r.probability) << ',' << r.classified.value_or("none") << ',' << fmt_num(r.branch_fidelity)
          << '\n';
    }
    return o.str();
}

std::string format_table_text(const std::vector<OutcomeRecord>& rows, std::size_t num_nv) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"input_label"};
    for (std::size_t k = 0; k < num_nv; ++k) head.push_back("nv" + std::to_string(k + 1));
    head.insert(head.end(), {"probability", "classified_label", "branch_fidelity"});
    cells.push_back(head);
    for (const auto& r : rows) {
        std::vector<std::string> line{r.input_label};
        for (bool b : r.nv_outcomes) line.push_back(outcome_name(b));
        line.push_back(fmt_num(r.probability));
        line.push_back(r.classified.value_or("none"));
        line.push_back(fmt_num(r.branch_fidelity));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> w(head.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i) w[i] = std::max(w[i], line[i].size());
    std::ostringstream o;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            o << line[i];
            if (i + 1 < line.size()) o << std::string(w[i] - line[i].size() + 2, ' ');
        }
        o << '\n';
    }
    return o.str();
}

std::string to_string(const PauliOp& p) {
    std::string s(1, p.pauli);
    s += p.dof == Role::Polarization ? "_pol_" : "_path_";
    s += static_cast<char>('a' + p.photon);
    return s;
}

StateVector apply_paulis(const StateVector& s, const std::vector<PauliOp>& ops) {
    Mat x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    StateVector out = s;
    for (const auto& p : ops) {
        const int site = 2 * p.photon + (p.dof == Role::Polarization ? 0 : 1);
        out = apply(out, {site}, LocalOperator(p.pauli == 'X' ? x : z));
    }
    return out;
}

std::vector<PauliOp> restoration(const HyperBellLabel& final_label, const HyperBellLabel& initial) {
    const StateVector from = bell_state(final_label);
    const StateVector to = bell_state(initial);
    std::vector<PauliOp> best;
    bool found = false;
    // Per DOF of each photon: bit 0 = X, bit 1 = Z (I, X, Z, XZ).
    for (int code = 0; code < 256; ++code) {
        std::vector<PauliOp> ops;
        for (int slot = 0; slot < 4; ++slot) {
            const int v = (code >> (2 * slot)) & 3;
            const int photon = slot / 2;
            const Role dof = slot % 2 == 0 ? Role::Polarization : Role::Path;
            if (v & 1) ops.push_back({photon, dof, 'X'});
            if (v & 2) ops.push_back({photon, dof, 'Z'});
        }
        if (found && ops.size() >= best.size()) continue;
        if (fidelity(to, apply_paulis(from, ops)) > 1.0 - 1e-12) {
            best = ops;
            found = true;
        }
    }
    if (!found) throw std::domain_error("no single-photon Pauli sequence restores " + to_string(initial));
    return best;
}

namespace {

std::string label_or_none(const std::optional<std::string>& s) {
    return s ? *s : std::string("none");
}

// Outcome -> label check for the generator circuits.
template <class L>
TableCheck check_generator(const std::string& name, const CircuitSpec& c, const std::map<Signature, L>& table,
                           double expected_p, const ExecOptions& overrides) {
    TableCheck chk{name, false, ""};
    const auto rows = tabulate(c, {{"default", std::nullopt}}, ReflectionPair::ideal(), Readout::Direct, 1e-12, overrides);
    std::map<Signature, const OutcomeRecord*> seen;
    for (const auto& r : rows) seen[r.nv_outcomes] = &r;
    for (const auto& [sg, label] : table) {
        const auto it = seen.find(sg);
        if (it == seen.end()) {
            chk.detail = "row " + to_string(sg) + ": branch missing";
            return chk;
        }
        const OutcomeRecord& r = *it->second;
        if (std::abs(r.probability - expected_p) > 1e-12 || r.classified != to_string(label)) {
            std::ostringstream o;
            o << "row " << to_string(sg) << ": expected " << to_string(label) << " p=" << expected_p << ", got "
              << label_or_none(r.classified) << " p=" << r.probability;
            chk.detail = o.str();
            return chk;
        }
    }
    if (rows.size() != table.size()) {
        chk.detail = "extra branches: " + std::to_string(rows.size()) + " vs " + std::to_string(table.size());
        return chk;
    }
    chk.pass = true;
    chk.detail = std::to_string(table.size()) + " rows";
    return chk;
}

// Single deterministic branch per dictionary input.
std::map<std::string, const OutcomeRecord*> single_branches(const std::vector<OutcomeRecord>& rows, std::string& err) {
    std::map<std::string, const OutcomeRecord*> by_input;
    for (const auto& r : rows) {
        if (std::abs(r.probability - 1.0) > 1e-12 && err.empty())
            err = "input " + r.input_label + ": outcome " + to_string(r.nv_outcomes) + " not deterministic";
        by_input[r.input_label] = &r;
    }
    return by_input;
}

}  // namespace

std::vector<TableCheck> verify_tables(const ExecOptions& overrides) {
    std::vector<TableCheck> out;
    out.push_back(check_generator("table1", build_hbsg2(), table1(), 0.25, overrides));
    out.push_back(check_generator("table2", build_hbsg3(), table2(), 0.125, overrides));

    {
        TableCheck chk{"table3", false, ""};
        std::string err;
        const auto rows = tabulate(build_hbsa_stage1(), bell_inputs(), ReflectionPair::ideal(), Readout::Direct, 1e-12, overrides);
        const auto by = single_branches(rows, err);
        for (const auto& [in, want] : table3()) {
            if (!err.empty()) break;
            const auto it = by.find(to_string(in));
            if (it == by.end()) {
                err = "input " + to_string(in) + ": no branch";
                break;
            }
            const OutcomeRecord& r = *it->second;
            if (r.nv_outcomes != want.outcomes || r.classified != to_string(want.state))
                err = "input " + to_string(in) + ": expected " + to_string(want.outcomes) + " " + to_string(want.state) +
                      ", got " + to_string(r.nv_outcomes) + " " + label_or_none(r.classified);
        }
        chk.pass = err.empty();
        chk.detail = chk.pass ? "16 rows" : err;
        out.push_back(chk);
    }

    const auto rows = tabulate(build_hbsa(), bell_inputs(), ReflectionPair::ideal(), Readout::Direct, 1e-12, overrides);
    std::string err4, err5;
    const auto by = single_branches(rows, err5);
    err4 = err5;
    const auto t4 = table4();
    const auto t5 = table5();
    for (const auto& in : all_bell_labels()) {
        const auto it = by.find(to_string(in));
        if (it == by.end()) {
            if (err4.empty()) err4 = "input " + to_string(in) + ": no branch";
            if (err5.empty()) err5 = err4;
            continue;
        }
        const OutcomeRecord& r = *it->second;
        if (err4.empty() && r.classified != to_string(t4.at(in)))
            err4 = "input " + to_string(in) + ": expected " + to_string(t4.at(in)) + ", got " +
                   label_or_none(r.classified);
        if (err5.empty() && r.nv_outcomes != t5.at(in))
            err5 = "input " + to_string(in) + ": expected " + to_string(t5.at(in)) + ", got " + to_string(r.nv_outcomes);
    }
    out.push_back({"table4", err4.empty(), err4.empty() ? "16 rows" : err4});
    out.push_back({"table5", err5.empty(), err5.empty() ? "16 rows" : err5});
    return out;
}

}  // namespace nvh
