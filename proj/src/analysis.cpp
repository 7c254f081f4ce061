#include "nvhyper/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nvh {

HbsgFidelities hbsg_fidelities(double r, double r0) {
    if (r == 0.0 && r0 == 0.0) throw std::domain_error("r = r0 = 0 is singular");
    const double s2 = r * r + r0 * r0;
    const double s4 = std::pow(r, 4) + std::pow(r0, 4);
    const double d2 = (r - r0) * (r - r0);
    const double p = r * r0;
    HbsgFidelities f;
    f.F1 = d2 * (s2 + 2) * (s2 + 2) / (8 * s2 * (s4 + 2));
    f.F2 = std::pow(s2 + 2, 4) / (16 * (s4 + 2) * (s4 + 2));
    f.F3 = d2 * d2 / (4 * s2 * s2);
    f.F4 = (1 - p) * (1 - p) * d2 / (4 * (1 + p * p) * s2);
    return f;
}

double hbsg_efficiency(double r, double r0) { return std::pow(r * r + r0 * r0 + 2, 4) / 256.0; }

HbsaTerms hbsa_terms(double r, double r0) {
    const double s2 = r * r + r0 * r0;
    const double dd = r * r - r0 * r0;
    HbsaTerms t;
    t.epsilon = r - r0;
    t.alpha = dd * dd * ((r - r0) * (r - r0) * (r * r + 1) * (r0 * r0 + 1) + 4 * r * r0 * s2);
    t.beta = s2 * s2 * (s2 * s2 + 4 * r * r * r0 * r0);
    return t;
}

double hbsa_fidelity(double r, double r0) {
    const HbsaTerms t = hbsa_terms(r, r0);
    const double den = 4 * (t.alpha + 2 * t.beta);
    if (den == 0.0) throw std::domain_error("alpha + 2 beta = 0 is singular");
    return std::pow(t.epsilon, 8) / den;
}

double hbsa_efficiency(double r, double r0) { return std::pow(r * r + r0 * r0 + 2, 8) / 65536.0; }

namespace {

StateVector project_spins(const CircuitSpec& c, const StateVector& s, const Signature& o) {
    StateVector out = s;
    const int first = 2 * static_cast<int>(c.photons.size());
    for (std::size_t k = 0; k < o.size(); ++k) {
        const Vec b = o[k] ? phi_plus() : phi_minus();
        out = apply(out, {first + static_cast<int>(k)}, LocalOperator(b * b.adjoint(), false));
    }
    return out;
}

Signature signature_of(std::size_t code, std::size_t n) {
    Signature s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = ((code >> (n - 1 - k)) & 1) == 0;
    return s;
}

}  // namespace

StageModel stage_model(const CircuitSpec& c, const StateVector& initial, const ReflectionPair& pair) {
    const auto ideal_pair = ReflectionPair::ideal();
    StageModel m;

    // Efficiency: attenuation of the ideal state at each pass.
    StateVector psi = initial.normalized();
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const Step& st = c.steps[i];
        if (st.kind == ElementKind::NV_INTERACT) {
            auto rs = resolve_step(c, st, pair);
            m.efficiency *= apply(psi, rs->targets, rs->op).norm2() / psi.norm2();
        }
        if (auto rs = resolve_step(c, st, ideal_pair)) psi = apply(psi, rs->targets, rs->op);
    }

    // Interaction window of each NV.
    std::vector<std::pair<std::size_t, std::size_t>> window(c.nvs.size(), {c.steps.size(), 0});
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const Step& st = c.steps[i];
        if (st.kind != ElementKind::NV_INTERACT) continue;
        auto& w = window[static_cast<std::size_t>(c.nv_index(st.targets[0]))];
        w.first = std::min(w.first, i);
        w.second = std::max(w.second, i + 1);
    }

    const std::size_t n = c.nvs.size();
    for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
        const Signature o = signature_of(code, n);
        const StateVector branch = project_spins(c, psi, o);
        if (branch.norm2() < 1e-12) continue;
        double f = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto [lo, hi] = window[k];
            if (lo >= hi) continue;
            const StateVector out = execute_inverse(c, branch, hi, c.steps.size());
            const StateVector in = execute_inverse(c, out, lo, hi);
            ExecOptions opt;
            opt.initial = in;
            opt.first = lo;
            opt.last = hi;
            opt.lossy_nv = c.nvs[k].name;
            const StateVector lossy = execute(c, pair, opt);
            f *= std::norm(inner(out, lossy)) / (out.norm2() * lossy.norm2());
        }
        m.fidelity[o] = f;
    }
    return m;
}

namespace {

int hbsg_family(const HyperBellLabel& l) { return (l.pol - 1) * 2 + (l.sp - 1); }

}  // namespace

HbsgMetrics simulate_hbsg_metrics(const ReflectionPair& pair) {
    const CircuitSpec c = build_hbsg2();
    const StateVector init = default_initial(c);
    const StageModel m = stage_model(c, init, pair);
    const StateVector ideal = execute(c, ReflectionPair::ideal(), {});

    std::array<std::vector<double>, 4> fam;
    for (const auto& [o, f] : m.fidelity) {
        const StateVector br = project_spins(c, ideal, o);
        StateVector ph = br;
        for (std::size_t k = c.nvs.size(); k-- > 0;)
            ph = contract(ph, 2 * static_cast<int>(c.photons.size()) + static_cast<int>(k), o[k] ? phi_plus() : phi_minus());
        const auto l = classify(ph.normalized());
        if (!l) throw std::logic_error("ideal branch is not a hyperentangled Bell state");
        fam[static_cast<std::size_t>(hbsg_family(*l))].push_back(f);
    }
    double out[4];
    for (int i = 0; i < 4; ++i) {
        if (fam[i].empty()) throw std::logic_error("missing fidelity family " + std::to_string(i + 1));
        for (double v : fam[i])
            if (std::abs(v - fam[i][0]) > 1e-9) throw std::logic_error("branches within a family disagree");
        out[i] = fam[i][0];
    }
    return {{out[0], out[1], out[2], out[3]}, m.efficiency};
}

HbsaMetrics simulate_hbsa_metrics(const ReflectionPair& pair, const HyperBellLabel& input) {
    const CircuitSpec c = build_hbsa();
    const StateVector init = initial_with_photons(c, bell_state(input));
    const StageModel m = stage_model(c, init, pair);
    const auto it = m.fidelity.find(table5().at(input));
    if (it == m.fidelity.end()) throw std::logic_error("expected analyzer signature has zero probability");
    return {it->second, m.efficiency};
}

CoherentHbsg coherent_hbsg_metrics(const ReflectionPair& pair) {
    const CircuitSpec c = build_hbsg2();
    const StateVector lossy = execute(c, pair, {});
    const StateVector ideal = execute(c, ReflectionPair::ideal(), {});
    CoherentHbsg out;
    out.norm2 = lossy.norm2();
    const auto lb = split_by_nv(c, lossy);
    const auto ib = split_by_nv(c, ideal);
    for (std::size_t i = 0; i < lb.size(); ++i)
        if (ib[i].second.norm2() > 1e-12) out.branch_fidelity[ib[i].first] = fidelity(ib[i].second, lb[i].second);
    return out;
}

CoherentHbsa coherent_hbsa_metrics(const ReflectionPair& pair, const HyperBellLabel& input) {
    const CircuitSpec c = build_hbsa();
    ExecOptions opt;
    opt.initial = initial_with_photons(c, bell_state(input));
    const StateVector lossy = execute(c, pair, opt);
    const StateVector ideal = execute(c, ReflectionPair::ideal(), opt);
    CoherentHbsa out;
    out.norm2 = lossy.norm2();
    out.F_state = fidelity(ideal, lossy);
    const Signature want = table5().at(input);
    const auto lb = split_by_nv(c, lossy);
    const auto ib = split_by_nv(c, ideal);
    for (std::size_t i = 0; i < lb.size(); ++i)
        if (lb[i].first == want) out.F_branch = fidelity(ib[i].second, lb[i].second);
    return out;
}

SweepRow sweep_point(double g_norm, double ks_ratio) {
    const ReflectionPair p = resonant_pair(g_norm, ks_ratio);
    const double r = p.r.real(), r0 = p.r0.real();
    SweepRow row;
    row.g_norm = g_norm;
    row.ks_ratio = ks_ratio;
    row.r = r;
    row.r0 = r0;
    const auto f = hbsg_fidelities(r, r0);
    row.F1 = f.F1;
    row.F2 = f.F2;
    row.F3 = f.F3;
    row.F4 = f.F4;
    row.eta1 = hbsg_efficiency(r, r0);
    row.F_hbsa = hbsa_fidelity(r, r0);
    row.eta_hbsa = hbsa_efficiency(r, r0);
    const auto sg = simulate_hbsg_metrics(p);
    row.sim_F1 = sg.F.F1;
    row.sim_F2 = sg.F.F2;
    row.sim_F3 = sg.F.F3;
    row.sim_F4 = sg.F.F4;
    row.sim_eta1 = sg.eta1;
    const auto sa = simulate_hbsa_metrics(p, {1, 1, 1, 1});
    row.sim_F_hbsa = sa.F;
    row.sim_eta_hbsa = sa.eta;
    return row;
}

std::vector<SweepRow> sweep(const std::vector<double>& g_grid, const std::vector<double>& ks_list, unsigned threads) {
    if (g_grid.empty() || ks_list.empty()) throw std::invalid_argument("sweep grids must be non-empty");
    std::vector<std::pair<double, double>> pts;
    for (double ks : ks_list)
        for (double g : g_grid) pts.emplace_back(ks, g);
    std::vector<SweepRow> rows(pts.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(pts.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < pts.size(); i += threads) rows[i] = sweep_point(pts[i].second, pts[i].first);
            });
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.ks_ratio != b.ks_ratio ? a.ks_ratio < b.ks_ratio : a.g_norm < b.g_norm;
    });
    return rows;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("invalid grid");
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
}

std::vector<double> default_g_grid() { return make_grid(0.5, 5.0, 0.05); }
std::vector<double> default_ks_list() { return {0.0, 0.03, 0.06}; }

std::vector<std::string> sweep_columns() {
    return {"g_norm", "ks_ratio", "r",      "r0",     "F1",     "F2",     "F3",      "F4",         "eta1",
            "F_hbsa", "eta_hbsa", "sim_F1", "sim_F2", "sim_F3", "sim_F4", "sim_eta1", "sim_F_hbsa", "sim_eta_hbsa"};
}

std::vector<double> row_values(const SweepRow& r) {
    return {r.g_norm, r.ks_ratio, r.r,      r.r0,     r.F1,     r.F2,     r.F3,     r.F4,       r.eta1,
            r.F_hbsa, r.eta_hbsa, r.sim_F1, r.sim_F2, r.sim_F3, r.sim_F4, r.sim_eta1, r.sim_F_hbsa, r.sim_eta_hbsa};
}

std::string emit_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream o;
    const auto cols = sweep_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
    o << '\n' << std::setprecision(12);
    for (const auto& r : rows) {
        const auto v = row_values(r);
        for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
        o << '\n';
    }
    return o.str();
}

std::vector<SweepRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    std::string expect;
    for (const auto& c : sweep_columns()) expect += (expect.empty() ? "" : ",") + c;
    if (line != expect) throw std::invalid_argument("unexpected CSV header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> v;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 18) throw std::invalid_argument("CSV row has " + std::to_string(v.size()) + " fields");
        SweepRow r;
        double* dst[] = {&r.g_norm, &r.ks_ratio, &r.r,      &r.r0,     &r.F1,     &r.F2,     &r.F3,     &r.F4,       &r.eta1,
                         &r.F_hbsa, &r.eta_hbsa, &r.sim_F1, &r.sim_F2, &r.sim_F3, &r.sim_F4, &r.sim_eta1, &r.sim_F_hbsa, &r.sim_eta_hbsa};
        for (std::size_t i = 0; i < 18; ++i) *dst[i] = v[i];
        rows.push_back(r);
    }
    return rows;
}

namespace {

struct Panel {
    double x0, y0, w, h;
    double ymin, ymax;
    std::string title;
};

std::string num(double v) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(2) << v;
    return o.str();
}

}  // namespace

std::string emit_svg(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("cannot plot an empty sweep");
    double gmin = rows.front().g_norm, gmax = gmin;
    std::vector<double> ks;
    for (const auto& r : rows) {
        gmin = std::min(gmin, r.g_norm);
        gmax = std::max(gmax, r.g_norm);
        if (std::find(ks.begin(), ks.end(), r.ks_ratio) == ks.end()) ks.push_back(r.ks_ratio);
    }
    if (gmax == gmin) gmax = gmin + 1.0;

    struct Metric {
        const char* name;
        double SweepRow::*field;
        const char* color;
    };
    const Metric fids[] = {{"F1", &SweepRow::F1, "#1f77b4"},
                           {"F2", &SweepRow::F2, "#ff7f0e"},
                           {"F3", &SweepRow::F3, "#2ca02c"},
                           {"F4", &SweepRow::F4, "#d62728"},
                           {"F_hbsa", &SweepRow::F_hbsa, "#9467bd"}};
    const Metric etas[] = {{"eta1", &SweepRow::eta1, "#1f77b4"}, {"eta_hbsa", &SweepRow::eta_hbsa, "#9467bd"}};
    const char* dashes[] = {"", "6,3", "2,2", "8,2,2,2"};

    const Panel pf{70, 40, 520, 300, 0.8, 1.0, "(a) fidelity"};
    const Panel pe{70, 420, 520, 300, 0.0, 1.0, "(b) efficiency"};

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"780\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"800\" height=\"780\" fill=\"white\"/>\n";

    auto draw = [&](const Panel& p, const Metric* ms, std::size_t nm, const char* ylabel) {
        auto X = [&](double g) { return p.x0 + (g - gmin) / (gmax - gmin) * p.w; };
        auto Y = [&](double v) {
            v = std::clamp(v, p.ymin, p.ymax);
            return p.y0 + p.h - (v - p.ymin) / (p.ymax - p.ymin) * p.h;
        };
        o << "<g>\n<text x=\"" << num(p.x0) << "\" y=\"" << num(p.y0 - 10) << "\">" << p.title << "</text>\n";
        o << "<rect x=\"" << num(p.x0) << "\" y=\"" << num(p.y0) << "\" width=\"" << num(p.w) << "\" height=\"" << num(p.h)
          << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 5; ++i) {
            const double gv = gmin + (gmax - gmin) * i / 5.0;
            const double yv = p.ymin + (p.ymax - p.ymin) * i / 5.0;
            o << "<text x=\"" << num(X(gv)) << "\" y=\"" << num(p.y0 + p.h + 16) << "\" text-anchor=\"middle\">" << num(gv)
              << "</text>\n";
            o << "<text x=\"" << num(p.x0 - 6) << "\" y=\"" << num(Y(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
              << "</text>\n";
        }
        o << "<text x=\"" << num(p.x0 + p.w / 2) << "\" y=\"" << num(p.y0 + p.h + 34)
          << "\" text-anchor=\"middle\">g/sqrt(kappa gamma)</text>\n";
        o << "<text x=\"20\" y=\"" << num(p.y0 + p.h / 2) << "\" transform=\"rotate(-90 20 " << num(p.y0 + p.h / 2)
          << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
        for (std::size_t m = 0; m < nm; ++m)
            for (std::size_t k = 0; k < ks.size(); ++k) {
                o << "<polyline fill=\"none\" stroke=\"" << ms[m].color << "\" stroke-width=\"1.5\"";
                if (*dashes[k % 4]) o << " stroke-dasharray=\"" << dashes[k % 4] << "\"";
                o << " points=\"";
                bool first = true;
                for (const auto& r : rows) {
                    if (r.ks_ratio != ks[k]) continue;
                    o << (first ? "" : " ") << num(X(r.g_norm)) << ',' << num(Y(r.*(ms[m].field)));
                    first = false;
                }
                o << "\"/>\n";
            }
        double ly = p.y0 + 14;
        for (std::size_t m = 0; m < nm; ++m, ly += 16)
            o << "<text x=\"" << num(p.x0 + p.w + 14) << "\" y=\"" << num(ly) << "\" fill=\"" << ms[m].color << "\">"
              << ms[m].name << "</text>\n";
        for (std::size_t k = 0; k < ks.size(); ++k, ly += 16) {
            o << "<line x1=\"" << num(p.x0 + p.w + 14) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(p.x0 + p.w + 44)
              << "\" y2=\"" << num(ly - 4) << "\" stroke=\"black\"";
            if (*dashes[k % 4]) o << " stroke-dasharray=\"" << dashes[k % 4] << "\"";
            o << "/>\n<text x=\"" << num(p.x0 + p.w + 50) << "\" y=\"" << num(ly) << "\">ks/k=" << ks[k] << "</text>\n";
        }
        o << "</g>\n";
    };
    draw(pf, fids, std::size(fids), "fidelity");
    draw(pe, etas, std::size(etas), "efficiency");
    o << "</svg>\n";
    return o.str();
}

}  // namespace nvh
