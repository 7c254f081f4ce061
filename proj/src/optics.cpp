#include "nvhyper/optics.hpp"

#include <cmath>

namespace nvh {

std::string to_string(ElementKind k) {
    switch (k) {
    case ElementKind::PBS: return "pbs";
    case ElementKind::BS: return "bs";
    case ElementKind::HWP: return "hwp";
    case ElementKind::QWP: return "qwp";
    case ElementKind::SWITCH: return "switch";
    case ElementKind::NV_INTERACT: return "nv_interact";
    default: return "spin_hadamard";
    }
}

std::string to_string(Mode m) { return m == Mode::K1 ? "k1" : "k2"; }

namespace optics {

namespace {

Mat hadamard() {
    Mat h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

}  // namespace

LocalOperator pbs() {
    // index = pol*2 + path; R (pol 0) flips the path.
    Mat m = Mat::Zero(4, 4);
    m(1, 0) = m(0, 1) = 1.0;
    m(2, 2) = m(3, 3) = 1.0;
    return LocalOperator(m);
}

LocalOperator bs() { return LocalOperator(hadamard()); }

LocalOperator hwp(Mode mode) {
    const int p = static_cast<int>(mode);
    Mat m = Mat::Identity(4, 4);
    m(p, p) = m(2 + p, 2 + p) = 0.0;
    m(2 + p, p) = m(p, 2 + p) = 1.0;
    return LocalOperator(m);
}

LocalOperator qwp() { return LocalOperator(hadamard()); }

LocalOperator spin_hadamard() { return LocalOperator(hadamard()); }

LocalOperator nv_interact(Mode mode, const ReflectionPair& pair) {
    // index = pol*4 + path*2 + spin
    const Mat s = scattering_operator(pair).matrix;
    const int p = static_cast<int>(mode);
    Mat m = Mat::Identity(8, 8);
    for (int pol = 0; pol < 2; ++pol)
        for (int spin = 0; spin < 2; ++spin) m(pol * 4 + p * 2 + spin, pol * 4 + p * 2 + spin) = s(pol * 2 + spin, pol * 2 + spin);
    return LocalOperator(m, is_unitary(m));
}

}  // namespace optics

}  // namespace nvh
