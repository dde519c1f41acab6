#pragma once

#define LMEASURE_VERSION "0.1.0"

namespace lmeasure {

inline const char* version() { return LMEASURE_VERSION; }

}  // namespace lmeasure
