#include "nvhyper/protocols.hpp"

namespace nvh {

// Circuits are written in the netlist language and parsed, so the bundled
// .hqc files and the builders cannot drift apart.

CircuitSpec build_hbsg2() {
    static const char* text = R"(# name: hbsg2
# description: two-photon polarization-spatial hyperentangled Bell state generation
photon a
photon b
nv NV1 init phi_plus
nv NV2 init phi_plus
pbs a
pbs b
hwp a mode k1
nv_interact NV1 a mode k1
nv_interact NV1 b mode k2
hwp a mode k2
bs a
bs b
nv_interact NV2 a mode k1
nv_interact NV2 b mode k2
)";
    return parse(text);
}

// NV1 sees a2, b2 and NV2 sees b1, c2. After the beam splitters NV3 reads
// the spatial parity of all three photons; a second beam splitter returns
// to the path basis and the trailing six elements swap a1 <-> a2.
CircuitSpec build_hbsg3() {
    static const char* text = R"(# name: hbsg3
# description: three-photon polarization-spatial hyperentangled GHZ state generation
photon a
photon b
photon c
nv NV1 init phi_plus
nv NV2 init phi_plus
nv NV3 init phi_plus
pbs a
pbs b
pbs c
nv_interact NV1 a mode k2
nv_interact NV1 b mode k2
nv_interact NV2 b mode k1
nv_interact NV2 c mode k2
bs a
bs b
bs c
nv_interact NV3 a mode k1
nv_interact NV3 b mode k1
nv_interact NV3 c mode k1
bs a
bs b
bs c
pbs a
hwp a mode k1
hwp a mode k2
pbs a
hwp a mode k1
hwp a mode k2
)";
    return parse(text);
}

namespace {

// Each photon meets `first` on one arm, then `second` after bs/pbs.
std::string gadgets(const std::string& first, const std::string& second) {
    std::string s;
    s += "qwp a\nhwp a mode k1\nnv_interact " + first + " a mode k1\n";
    s += "bs a\npbs a\nnv_interact " + second + " a mode k1\n";
    s += "qwp b\nhwp b mode k1\nnv_interact " + first + " b mode k2\n";
    s += "bs b\npbs b\nnv_interact " + second + " b mode k2\n";
    return s;
}

std::string hbsa_header(const std::string& name, const std::string& desc, int nvs) {
    std::string s = "# name: " + name + "\n# description: " + desc + "\nphoton a\nphoton b\n";
    for (int k = 1; k <= nvs; ++k) s += "nv NV" + std::to_string(k) + " init phi_plus\n";
    return s;
}

const char* kStage1Correction = "hwp a mode k2\nqwp a\nhwp a mode k2\nhwp b mode k2\nqwp b\nhwp b mode k2\n";

}  // namespace

CircuitSpec build_hbsa_stage1() {
    std::string s = hbsa_header("hbsa_stage1", "first syndrome of the hyperentangled Bell state analyzer", 2);
    s += gadgets("NV1", "NV2");
    s += kStage1Correction;
    return parse(s);
}

CircuitSpec build_hbsa() {
    std::string s = hbsa_header("hbsa", "complete nondestructive hyperentangled Bell state analysis", 4);
    s += gadgets("NV1", "NV2");
    s += kStage1Correction;
    s += "bs a\nqwp a\nbs b\nqwp b\n";
    s += gadgets("NV3", "NV4");
    s += "hwp a mode k1\nqwp a\nhwp a mode k2\nhwp b mode k1\nqwp b\nhwp b mode k2\n";
    return parse(s);
}

}  // namespace nvh
