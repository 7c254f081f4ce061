#pragma once

#include <string>

#include "nvhyper/cavity.hpp"

namespace nvh {

enum class ElementKind { PBS, BS, HWP, QWP, SWITCH, NV_INTERACT, SPIN_HADAMARD };

enum class Mode { K1 = 0, K2 = 1 };

std::string to_string(ElementKind k);
std::string to_string(Mode m);

// Target sites, in order:
//   PBS, HWP      -> (pol, path)
//   BS            -> (path)
//   QWP           -> (pol)
//   NV_INTERACT   -> (pol, path, spin)
//   SPIN_HADAMARD -> (spin)
//   SWITCH        -> none (identity)
namespace optics {

LocalOperator pbs();
LocalOperator bs();
LocalOperator hwp(Mode mode);
LocalOperator qwp();
LocalOperator spin_hadamard();
LocalOperator nv_interact(Mode mode, const ReflectionPair& pair);

}  // namespace optics

}  // namespace nvh
