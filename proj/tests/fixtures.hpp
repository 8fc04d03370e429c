#pragma once

/* Synthesis is deterministic but not free; share one instance per backend
 * across test files. */

#include "mfd/experiments.hpp"

namespace fixtures {

inline const mfd::Setup& setup(mfd::CfnBackend b) {
  static mfd::Setup s[3] = {mfd::make_setup(mfd::CfnBackend::ExactPattern),
                            mfd::make_setup(mfd::CfnBackend::Anf),
                            mfd::make_setup(mfd::CfnBackend::ControlledReset)};
  return s[static_cast<int>(b)];
}

inline const mfd::Setup& exact_setup() { return setup(mfd::CfnBackend::ExactPattern); }

}  // namespace fixtures
