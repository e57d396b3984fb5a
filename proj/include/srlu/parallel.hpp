#pragma once

namespace srlu {

/// Number of threads the OpenMP kernels use. 1 gives the single-threaded mode.
///
/// Every kernel partitions work over independent output columns or rows and
/// never splits a reduction, so results are bit-identical for any thread count.
void set_num_threads(int threads);
int num_threads() noexcept;

/// True when the library was compiled with OpenMP.
bool have_openmp() noexcept;

}  // namespace srlu
