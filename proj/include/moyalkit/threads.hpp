#pragma once

namespace moyalkit {

// Resolves the kernel thread count: MOYALKIT_THREADS env var if set, else the
// OpenMP default. Call once before heavy kernels; cheap to call repeatedly.
int configure_threads();

} // namespace moyalkit
