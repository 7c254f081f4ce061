#include "nvhyper/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace nvh {

std::string to_string(SpinInit s) {
    switch (s) {
    case SpinInit::Plus: return "plus";
    case SpinInit::Minus: return "minus";
    case SpinInit::PhiPlus: return "phi_plus";
    default: return "phi_minus";
    }
}

Vec spin_vector(SpinInit s) {
    switch (s) {
    case SpinInit::Plus: return spin_plus();
    case SpinInit::Minus: return spin_minus();
    case SpinInit::PhiPlus: return phi_plus();
    default: return phi_minus();
    }
}

bool CircuitSpec::is_photon(const std::string& n) const {
    return std::find(photons.begin(), photons.end(), n) != photons.end();
}

bool CircuitSpec::is_nv(const std::string& n) const { return nv_index(n) >= 0; }

int CircuitSpec::nv_index(const std::string& n) const {
    for (std::size_t i = 0; i < nvs.size(); ++i)
        if (nvs[i].name == n) return static_cast<int>(i);
    return -1;
}

std::string to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ReferenceError: return "ReferenceError";
    case ErrorKind::ArityError: return "ArityError";
    default: return "DuplicateError";
    }
}

ParseError::ParseError(ErrorKind kind, int line, int col, std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + to_string(kind) + ": " + message),
      kind_(kind), line_(line), col_(col), message_(std::move(message)) {}

std::string ParseError::diagnostic(const std::string& path) const {
    return path + ":" + std::to_string(line_) + ":" + std::to_string(col_) + ": " + to_string(kind_) + ": " + message_;
}

namespace {

struct Token {
    std::string text;
    int col;
};

const std::map<std::string, ElementKind> kStepKeywords = {
    {"pbs", ElementKind::PBS},
    {"bs", ElementKind::BS},
    {"hwp", ElementKind::HWP},
    {"qwp", ElementKind::QWP},
    {"nv_interact", ElementKind::NV_INTERACT},
    {"spin_hadamard", ElementKind::SPIN_HADAMARD},
    {"switch", ElementKind::SWITCH},
};

bool is_reserved(const std::string& w) {
    return w == "photon" || w == "nv" || w == "init" || w == "mode" || kStepKeywords.count(w) > 0;
}

bool valid_name(const std::string& w) {
    if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
    return std::all_of(w.begin(), w.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    });
}

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char ch = line[i];
        if (ch == '#') break;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t expected_names(ElementKind k) { return k == ElementKind::NV_INTERACT ? 2 : 1; }

bool needs_mode(ElementKind k) { return k == ElementKind::HWP || k == ElementKind::NV_INTERACT; }

class Parser {
public:
    CircuitSpec run(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int lineno = 0;
        bool header = true;
        while (std::getline(in, raw)) {
            ++lineno;
            const auto toks = tokenize(raw);
            if (toks.empty()) {
                if (header) read_metadata(raw);
                continue;
            }
            header = false;
            line_ = lineno;
            handle(toks, static_cast<int>(raw.size()));
        }
        return std::move(c_);
    }

private:
    CircuitSpec c_;
    int line_ = 0;

    [[noreturn]] void fail(ErrorKind k, int col, const std::string& msg) const { throw ParseError(k, line_, col, msg); }

    void read_metadata(const std::string& raw) {
        const std::string t = trim(raw);
        if (t.rfind("#", 0) != 0) return;
        const std::string body = trim(t.substr(1));
        if (body.rfind("name:", 0) == 0) c_.name = trim(body.substr(5));
        else if (body.rfind("description:", 0) == 0) c_.description = trim(body.substr(12));
    }

    void check_name(const Token& t) const {
        if (is_reserved(t.text)) fail(ErrorKind::SyntaxError, t.col, "reserved word '" + t.text + "' used as a name");
        if (!valid_name(t.text)) fail(ErrorKind::SyntaxError, t.col, "invalid name '" + t.text + "'");
    }

    void check_fresh(const Token& t) const {
        if (c_.is_photon(t.text) || c_.is_nv(t.text))
            fail(ErrorKind::DuplicateError, t.col, "name '" + t.text + "' is already declared");
    }

    void handle(const std::vector<Token>& toks, int eol) {
        const Token& kw = toks[0];
        const int end_col = eol + 1;
        if (kw.text == "photon") {
            if (toks.size() < 2) fail(ErrorKind::SyntaxError, end_col, "expected photon name");
            check_name(toks[1]);
            if (toks.size() > 2) fail(ErrorKind::SyntaxError, toks[2].col, "unexpected token '" + toks[2].text + "'");
            check_fresh(toks[1]);
            c_.photons.push_back(toks[1].text);
            return;
        }
        if (kw.text == "nv") {
            if (toks.size() < 2) fail(ErrorKind::SyntaxError, end_col, "expected NV name");
            check_name(toks[1]);
            if (toks.size() < 3 || toks[2].text != "init")
                fail(ErrorKind::SyntaxError, toks.size() < 3 ? end_col : toks[2].col, "expected 'init'");
            if (toks.size() < 4) fail(ErrorKind::SyntaxError, end_col, "expected spin state");
            static const std::map<std::string, SpinInit> states = {
                {"plus", SpinInit::Plus}, {"minus", SpinInit::Minus},
                {"phi_plus", SpinInit::PhiPlus}, {"phi_minus", SpinInit::PhiMinus}};
            const auto it = states.find(toks[3].text);
            if (it == states.end()) fail(ErrorKind::SyntaxError, toks[3].col, "unknown spin state '" + toks[3].text + "'");
            if (toks.size() > 4) fail(ErrorKind::SyntaxError, toks[4].col, "unexpected token '" + toks[4].text + "'");
            check_fresh(toks[1]);
            c_.nvs.push_back({toks[1].text, it->second});
            return;
        }
        const auto kit = kStepKeywords.find(kw.text);
        if (kit == kStepKeywords.end()) fail(ErrorKind::SyntaxError, kw.col, "unknown keyword '" + kw.text + "'");
        Step st;
        st.kind = kit->second;

        std::size_t i = 1;
        std::vector<Token> names;
        while (i < toks.size() && toks[i].text != "mode") names.push_back(toks[i++]);
        const std::size_t want = expected_names(st.kind);
        if (names.size() != want) {
            const int col = names.size() > want ? names[want].col : (names.empty() ? end_col : names.back().col);
            fail(ErrorKind::ArityError, col,
                 "'" + kw.text + "' takes " + std::to_string(want) + " target(s), got " + std::to_string(names.size()));
        }
        for (const auto& n : names) check_name(n);

        if (needs_mode(st.kind)) {
            if (i >= toks.size()) fail(ErrorKind::SyntaxError, end_col, "expected 'mode k1|k2'");
            if (i + 1 >= toks.size()) fail(ErrorKind::SyntaxError, end_col, "expected mode value after 'mode'");
            const Token& mv = toks[i + 1];
            if (mv.text == "k1") st.mode = Mode::K1;
            else if (mv.text == "k2") st.mode = Mode::K2;
            else fail(ErrorKind::SyntaxError, mv.col, "unknown mode '" + mv.text + "'");
            if (i + 2 < toks.size()) fail(ErrorKind::SyntaxError, toks[i + 2].col, "unexpected token '" + toks[i + 2].text + "'");
        } else if (i < toks.size()) {
            fail(ErrorKind::SyntaxError, toks[i].col, "'" + kw.text + "' takes no mode");
        }

        if (st.kind == ElementKind::NV_INTERACT) {
            require_nv(names[0]);
            require_photon(names[1]);
        } else if (st.kind == ElementKind::SPIN_HADAMARD) {
            require_nv(names[0]);
        } else {
            require_photon(names[0]);
        }
        for (const auto& n : names) st.targets.push_back(n.text);
        c_.steps.push_back(std::move(st));
    }

    void require_photon(const Token& t) const {
        if (c_.is_photon(t.text)) return;
        if (c_.is_nv(t.text)) fail(ErrorKind::ReferenceError, t.col, "'" + t.text + "' is an NV center, expected a photon");
        fail(ErrorKind::ReferenceError, t.col, "undeclared photon '" + t.text + "'");
    }

    void require_nv(const Token& t) const {
        if (c_.is_nv(t.text)) return;
        if (c_.is_photon(t.text)) fail(ErrorKind::ReferenceError, t.col, "'" + t.text + "' is a photon, expected an NV center");
        fail(ErrorKind::ReferenceError, t.col, "undeclared NV center '" + t.text + "'");
    }
};

}  // namespace

CircuitSpec parse(const std::string& text) { return Parser{}.run(text); }

std::string serialize(const CircuitSpec& c) {
    std::ostringstream o;
    o << "# hqc circuit\n";
    if (!c.name.empty()) o << "# name: " << c.name << "\n";
    if (!c.description.empty()) o << "# description: " << c.description << "\n";
    for (const auto& p : c.photons) o << "photon " << p << "\n";
    for (const auto& n : c.nvs) o << "nv " << n.name << " init " << to_string(n.init) << "\n";
    for (const auto& s : c.steps) {
        o << to_string(s.kind);
        for (const auto& t : s.targets) o << ' ' << t;
        if (s.mode) o << " mode " << to_string(*s.mode);
        o << "\n";
    }
    return o.str();
}

void validate(const CircuitSpec& c) {
    // Re-parsing the canonical form applies every structural rule in one place.
    const CircuitSpec back = parse(serialize(c));
    for (std::size_t i = 0; i < c.steps.size(); ++i)
        if (c.steps[i].mode != back.steps[i].mode) throw ParseError(ErrorKind::SyntaxError, 0, 0, "mode mismatch");
}

Layout photon_layout(const std::vector<std::string>& photons) {
    std::vector<std::pair<Role, std::string>> s;
    for (const auto& p : photons) {
        s.emplace_back(Role::Polarization, p);
        s.emplace_back(Role::Path, p);
    }
    return make_layout(std::move(s));
}

Layout circuit_layout(const CircuitSpec& c) {
    Layout l = photon_layout(c.photons);
    for (const auto& n : c.nvs) l.push_back(Site{Role::Spin, n.name, static_cast<int>(l.size())});
    return l;
}

namespace {

StateVector nv_register(const CircuitSpec& c) {
    StateVector s(Layout{}, Vec::Ones(1));
    for (const auto& n : c.nvs) s = tensor(s, StateVector(make_layout({{Role::Spin, n.name}}), spin_vector(n.init)));
    return s;
}

}  // namespace

StateVector default_initial(const CircuitSpec& c) {
    StateVector s(Layout{}, Vec::Ones(1));
    Vec ph(4);
    const double h = 1.0 / std::sqrt(2.0);
    ph << h, 0.0, h, 0.0;  // (|R>+|L>)/sqrt2 (x) |k1>
    for (const auto& p : c.photons) s = tensor(s, StateVector(photon_layout({p}), ph));
    return tensor(s, nv_register(c));
}

StateVector initial_with_photons(const CircuitSpec& c, const StateVector& photons) {
    if (photons.layout() != photon_layout(c.photons))
        throw HilbertError("photon register does not match the circuit's photon declarations");
    return tensor(photons, nv_register(c));
}

std::optional<ResolvedStep> resolve_step(const CircuitSpec& c, const Step& s, const ReflectionPair& pair) {
    const Layout lay = circuit_layout(c);
    auto site = [&](Role r, const std::string& owner) {
        for (const auto& x : lay)
            if (x.role == r && x.owner == owner) return x.index;
        throw HilbertError("no " + to_string(r) + " site for '" + owner + "'");
    };
    switch (s.kind) {
    case ElementKind::SWITCH: return std::nullopt;
    case ElementKind::PBS:
        return ResolvedStep{{site(Role::Polarization, s.targets[0]), site(Role::Path, s.targets[0])}, optics::pbs()};
    case ElementKind::BS: return ResolvedStep{{site(Role::Path, s.targets[0])}, optics::bs()};
    case ElementKind::HWP:
        return ResolvedStep{{site(Role::Polarization, s.targets[0]), site(Role::Path, s.targets[0])},
                            optics::hwp(s.mode.value_or(Mode::K1))};
    case ElementKind::QWP: return ResolvedStep{{site(Role::Polarization, s.targets[0])}, optics::qwp()};
    case ElementKind::SPIN_HADAMARD: return ResolvedStep{{site(Role::Spin, s.targets[0])}, optics::spin_hadamard()};
    case ElementKind::NV_INTERACT: {
        const ReflectionPair used = s.pair_source == PairSource::Ideal ? ReflectionPair::ideal() : pair;
        const auto& ph = s.targets[1];
        return ResolvedStep{{site(Role::Polarization, ph), site(Role::Path, ph), site(Role::Spin, s.targets[0])},
                            optics::nv_interact(s.mode.value_or(Mode::K1), used)};
    }
    }
    return std::nullopt;
}

StateVector execute(const CircuitSpec& c, const ReflectionPair& pair, const ExecOptions& opt) {
    StateVector s = opt.initial ? *opt.initial : default_initial(c);
    if (s.layout() != circuit_layout(c)) throw HilbertError("initial state does not match the circuit layout");
    const std::size_t last = std::min(opt.last, c.steps.size());
    for (std::size_t i = opt.first; i < last; ++i) {
        const Step& st = c.steps[i];
        const bool lossy = st.kind == ElementKind::NV_INTERACT && (!opt.lossy_nv || *opt.lossy_nv == st.targets[0]);
        auto rs = resolve_step(c, st, lossy ? pair : ReflectionPair::ideal());
        if (!rs) continue;
        if (st.kind == ElementKind::BS && opt.bs_override &&
            (!opt.bs_override_photon || *opt.bs_override_photon == st.targets[0]))
            rs->op = *opt.bs_override;
        s = apply(s, rs->targets, rs->op);
    }
    if (s.norm2() == 0.0) throw TotalLossError("all amplitude lost in the cavities");
    return s;
}

StateVector execute_inverse(const CircuitSpec& c, const StateVector& s, std::size_t first, std::size_t last) {
    StateVector out = s;
    last = std::min(last, c.steps.size());
    for (std::size_t i = last; i > first; --i) {
        auto rs = resolve_step(c, c.steps[i - 1], ReflectionPair::ideal());
        if (!rs) continue;
        out = apply(out, rs->targets, LocalOperator(rs->op.matrix.adjoint()));
    }
    return out;
}

}  // namespace nvh
