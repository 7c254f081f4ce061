#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nvhyper/protocols.hpp"

using namespace nvh;

namespace {

HyperBellLabel B(const char* s) { return *parse_bell_label(s); }
HyperGHZLabel G(const char* s) { return *parse_ghz_label(s); }

Signature sig(const char* code) {
    Signature s;
    for (const char* p = code; *p; ++p) s.push_back(*p == '+');
    return s;
}

// Pauli frame applied bit-wise on the 4-qubit photon register (pol a, path a, pol b, path b).
Vec frame(const Vec& v, const std::vector<PauliOp>& ops) {
    Vec out = v;
    for (const auto& p : ops) {
        const int site = 2 * p.photon + (p.dof == Role::Polarization ? 0 : 1);
        const std::size_t m = std::size_t{1} << (3 - site);
        Vec next = Vec::Zero(out.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            const std::size_t u = static_cast<std::size_t>(i);
            if (p.pauli == 'X')
                next[static_cast<Eigen::Index>(u ^ m)] = out[i];
            else
                next[i] = (u & m) ? -out[i] : out[i];
        }
        out = next;
    }
    return out;
}

}  // namespace

TEST(Labels, RoundTrip) {
    for (const auto& l : all_bell_labels()) EXPECT_EQ(parse_bell_label(to_string(l)), l);
    for (const auto& l : all_ghz_labels()) EXPECT_EQ(parse_ghz_label(to_string(l)), l);
    EXPECT_EQ(all_bell_labels().size(), 16u);
    EXPECT_EQ(all_ghz_labels().size(), 64u);
    EXPECT_EQ(to_string(HyperBellLabel{1, 1, 2, -1}), "phi1+_phi2-");
    EXPECT_EQ(to_string(HyperGHZLabel{4, -1, 2, 1}), "psi4-_psi2+");
}

TEST(Labels, Rejects) {
    for (const char* s : {"", "phi3+_phi1+", "phi1*_phi1+", "psi1+_phi1+", "phi1+phi1+", "phi1+_phi1+x"})
        EXPECT_FALSE(parse_bell_label(s)) << s;
    EXPECT_FALSE(parse_ghz_label("psi5+_psi1+"));
    EXPECT_TRUE(parse_ghz_label("psi4-_psi4-"));
}

TEST(Dictionary, HandWrittenAmplitudes) {
    // Bit order: pol a, path a, pol b, path b.
    const Vec v = bell_state(B("phi1+_phi1+")).amplitudes();
    for (Eigen::Index i = 0; i < 16; ++i) {
        const double want = (i == 0 || i == 5 || i == 10 || i == 15) ? 0.5 : 0.0;
        EXPECT_NEAR(std::abs(v[i] - cplx(want)), 0.0, 1e-15) << i;
    }
    // (|LR> - |RL>)(|k2 k1> + |k1 k2>) / 2
    const Vec w = bell_state(B("phi2-_phi2+")).amplitudes();
    EXPECT_NEAR(w[0b1100].real(), 0.5, 1e-15);   // L k2, R k1
    EXPECT_NEAR(w[0b1001].real(), 0.5, 1e-15);   // L k1, R k2
    EXPECT_NEAR(w[0b0110].real(), -0.5, 1e-15);  // R k2, L k1
    EXPECT_NEAR(w[0b0011].real(), -0.5, 1e-15);  // R k1, L k2
    EXPECT_NEAR(w.norm(), 1.0, 1e-15);
}

TEST(Dictionary, Orthonormal) {
    const auto bl = all_bell_labels();
    for (std::size_t i = 0; i < bl.size(); ++i)
        for (std::size_t j = 0; j < bl.size(); ++j)
            EXPECT_NEAR(std::abs(inner(bell_state(bl[i]), bell_state(bl[j]))), i == j ? 1.0 : 0.0, 1e-12);
    const auto gl = all_ghz_labels();
    for (std::size_t i = 0; i < gl.size(); i += 7)
        for (std::size_t j = 0; j < gl.size(); ++j)
            EXPECT_NEAR(std::abs(inner(ghz_state(gl[i]), ghz_state(gl[j]))), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(Classify, OwnLabelAndGlobalPhase) {
    for (const auto& l : all_bell_labels()) {
        EXPECT_EQ(classify(bell_state(l)), l);
        const StateVector s(bell_state(l).layout(), bell_state(l).amplitudes() * std::polar(1.0, 0.7));
        EXPECT_EQ(classify(s), l);
    }
    for (const auto& l : all_ghz_labels()) EXPECT_EQ(classify_ghz(ghz_state(l)), l);
}

TEST(Classify, UnmatchedState) {
    // |RR> (x) Phi1+ on the path DOF sits at overlap 1/2 with two dictionary states.
    Vec v = Vec::Zero(16);
    v[0b0000] = v[0b0101] = 1.0 / std::sqrt(2.0);
    const StateVector s(bell_state(B("phi1+_phi1+")).layout(), v);
    EXPECT_FALSE(classify(s, 0.4));
    EXPECT_TRUE(classify(s, 0.6));
}

TEST(Classify, WrongLayoutThrows) {
    EXPECT_THROW(classify(ghz_state(G("psi1+_psi1+"))), HilbertError);
    EXPECT_THROW(classify_ghz(bell_state(B("phi1+_phi1+"))), HilbertError);
    EXPECT_FALSE(classify_label(basis_state(make_layout({{Role::Spin, "N"}}), {Label::Plus})));
}

TEST(Signatures, Text) {
    EXPECT_EQ(to_string(sig("+-+")), "phi+,phi-,phi+");
    EXPECT_EQ(to_string(Signature{}), "");
}

TEST(Hbsg2, OutcomeMapExamples) {
    const auto t = table1();
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t.at(sig("+-")), B("phi1-_phi1-"));
    EXPECT_EQ(t.at(sig("-+")), B("phi2-_phi2-"));
}

TEST(Hbsg2, BranchesQuarterEach) {
    const auto rows = tabulate(build_hbsg2(), {{"default", std::nullopt}}, ReflectionPair::ideal());
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.probability, 0.25, 1e-12);
        ASSERT_TRUE(r.classified);
        EXPECT_EQ(*r.classified, to_string(table1().at(r.nv_outcomes)));
        EXPECT_NEAR(r.branch_fidelity, 1.0, 1e-12);
    }
}

TEST(Hbsg3, BranchesEighthEach) {
    const auto rows = tabulate(build_hbsg3(), {{"default", std::nullopt}}, ReflectionPair::ideal());
    ASSERT_EQ(rows.size(), 8u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.probability, 0.125, 1e-12);
        ASSERT_TRUE(r.classified);
        EXPECT_EQ(*r.classified, to_string(table2().at(r.nv_outcomes)));
    }
}

TEST(Hbsg3, TypesetMapDiffersInOneRow) {
    const auto a = table2(), b = table2_printed();
    int diff = 0;
    for (const auto& [s, l] : a)
        if (b.at(s) != l) {
            ++diff;
            EXPECT_EQ(s, sig("---"));
            EXPECT_EQ(l, G("psi2+_psi2+"));
        }
    EXPECT_EQ(diff, 1);
    // Every corrected row shares the spatial family.
    for (const auto& [s, l] : a) EXPECT_EQ(l.sp, 2);
}

TEST(Hbsa, StageOneGroupsOfFour) {
    const auto t = table3();
    ASSERT_EQ(t.size(), 16u);
    std::map<Signature, int> count;
    for (const auto& [in, row] : t) ++count[row.outcomes];
    EXPECT_EQ(count.size(), 4u);
    for (const auto& [s, n] : count) EXPECT_EQ(n, 4) << to_string(s);

    const auto rows = tabulate(build_hbsa_stage1(), bell_inputs(), ReflectionPair::ideal());
    ASSERT_EQ(rows.size(), 16u);
    for (const auto& r : rows) {
        const auto& want = t.at(B(r.input_label.c_str()));
        EXPECT_EQ(r.nv_outcomes, want.outcomes) << r.input_label;
        EXPECT_EQ(r.classified, to_string(want.state)) << r.input_label;
        EXPECT_NEAR(r.probability, 1.0, 1e-12);
    }
}

TEST(Hbsa, SignaturesInjective) {
    const auto t = table5();
    std::set<Signature> seen;
    for (const auto& [in, s] : t) {
        EXPECT_EQ(s.size(), 4u);
        seen.insert(s);
    }
    EXPECT_EQ(seen.size(), 16u);
    EXPECT_EQ(t.at(B("phi1+_phi1+")), sig("----"));
    EXPECT_EQ(t.at(B("phi1+_phi2-")), sig("++++"));
}

TEST(Hbsa, FinalStateMap) {
    const auto t = table4();
    std::set<HyperBellLabel> finals;
    for (const auto& [in, out] : t) finals.insert(out);
    EXPECT_EQ(finals.size(), 16u);
    EXPECT_EQ(t.at(B("phi1-_phi1+")), B("phi2-_phi2-"));

    // The typeset map repeats one final state.
    std::set<HyperBellLabel> printed;
    for (const auto& [in, out] : table4_printed()) printed.insert(out);
    EXPECT_EQ(printed.size(), 15u);
}

TEST(Hbsa, SimulatedRowsMatchBothMaps) {
    const auto rows = tabulate(build_hbsa(), bell_inputs(), ReflectionPair::ideal());
    ASSERT_EQ(rows.size(), 16u);
    for (const auto& r : rows) {
        const auto in = B(r.input_label.c_str());
        EXPECT_EQ(r.nv_outcomes, table5().at(in)) << r.input_label;
        EXPECT_EQ(r.classified, to_string(table4().at(in))) << r.input_label;
    }
}

TEST(Hbsa, RestorationRecoversInput) {
    const auto rows = tabulate(build_hbsa(), bell_inputs(), ReflectionPair::ideal());
    for (const auto& r : rows) {
        const auto in = B(r.input_label.c_str());
        const auto ops = restoration(*classify(r.photon_state), in);
        const StateVector back = apply_paulis(r.photon_state, ops);
        EXPECT_EQ(classify(back), in) << r.input_label;
        EXPECT_GE(fidelity(back, bell_state(in)), 1.0 - 1e-12) << r.input_label;
        // Independent bit-level application agrees.
        const Vec v = frame(r.photon_state.amplitudes(), ops);
        EXPECT_NEAR(std::norm(bell_state(in).amplitudes().dot(v)), 1.0, 1e-12);
    }
}

TEST(Restoration, IdentityIsEmpty) {
    for (const auto& l : all_bell_labels()) EXPECT_TRUE(restoration(l, l).empty());
}

TEST(Restoration, EveryPairReachableWithinFourOps) {
    for (const auto& a : all_bell_labels())
        for (const auto& b : all_bell_labels()) {
            const auto ops = restoration(a, b);
            EXPECT_LE(ops.size(), 4u);
            EXPECT_NEAR(std::norm(bell_state(b).amplitudes().dot(frame(bell_state(a).amplitudes(), ops))), 1.0, 1e-12);
        }
}

TEST(Restoration, SingleFlipExample) {
    const auto ops = restoration(B("phi1-_phi1+"), B("phi1+_phi1+"));
    ASSERT_EQ(ops.size(), 1u);
    EXPECT_EQ(ops[0].pauli, 'Z');
    EXPECT_EQ(ops[0].dof, Role::Polarization);
    EXPECT_EQ(to_string(ops[0]), "Z_pol_a");
}

TEST(Readout, HadamardMatchesDirect) {
    for (const auto& c : {build_hbsg2(), build_hbsa()}) {
        const std::vector<TabulateInput> in =
            c.nvs.size() == 2 ? std::vector<TabulateInput>{{"default", std::nullopt}} : bell_inputs();
        const auto d = tabulate(c, in, ReflectionPair::ideal(), Readout::Direct);
        const auto h = tabulate(c, in, ReflectionPair::ideal(), Readout::SpinHadamard);
        ASSERT_EQ(d.size(), h.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            EXPECT_EQ(d[i].nv_outcomes, h[i].nv_outcomes);
            EXPECT_NEAR(d[i].probability, h[i].probability, 1e-12);
            EXPECT_EQ(d[i].classified, h[i].classified);
            EXPECT_NEAR(fidelity(d[i].photon_state, h[i].photon_state), 1.0, 1e-12);
        }
    }
}

TEST(Lossy, ProbabilitiesNormalized) {
    const auto pair = resonant_pair(1.5, 0.03);
    const auto rows = tabulate(build_hbsg2(), {{"default", std::nullopt}}, pair);
    double total = 0;
    for (const auto& r : rows) {
        total += r.probability;
        EXPECT_GT(r.branch_norm2, 0.0);
        EXPECT_LE(r.branch_fidelity, 1.0 + 1e-12);
        EXPECT_GT(r.branch_fidelity, 0.9);
        EXPECT_TRUE(r.classified);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(VerifyTables, AllReproduced) {
    const auto checks = verify_tables();
    ASSERT_EQ(checks.size(), 5u);
    for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(VerifyTables, FlippedBeamSplitterIsCaught) {
    Mat m(2, 2);
    const double h = 1.0 / std::sqrt(2.0);
    m << -h, h, h, h;
    ExecOptions opt;
    opt.bs_override = LocalOperator(m);
    opt.bs_override_photon = "a";
    const auto checks = verify_tables(opt);
    EXPECT_FALSE(checks[0].pass);
    EXPECT_NE(checks[0].detail.find("row"), std::string::npos);
}

TEST(Format, CsvHeaderAndRows) {
    const auto rows = tabulate(build_hbsg2(), {{"default", std::nullopt}}, ReflectionPair::ideal());
    const std::string csv = format_table_csv(rows, 2);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "input_label,nv1,nv2,probability,classified_label,branch_fidelity");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    EXPECT_NE(csv.find("default,phi+,phi-,0.25,phi1-_phi1-,1"), std::string::npos);
    const std::string txt = format_table_text(rows, 2);
    EXPECT_EQ(std::count(txt.begin(), txt.end(), '\n'), 5);
}
