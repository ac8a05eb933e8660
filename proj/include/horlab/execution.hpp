#pragma once

namespace horlab {

/// Selects the OpenMP kernel or its serial reference.
enum class Execution { Serial, Parallel };

}  // namespace horlab
