#pragma once

namespace qdmap {

// Selects between the OpenMP kernel and the serial reference loop. Both
// produce bit-identical results: every parallel loop writes to its own slot
// and reductions happen serially afterwards in index order.
enum class Exec { Serial, Parallel };

inline constexpr Exec kDefaultExec = Exec::Parallel;

} // namespace qdmap
