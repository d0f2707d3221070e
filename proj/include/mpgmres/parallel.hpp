#pragma once

#include <cstddef>

namespace mpgmres {

/// Number of threads used by the row-parallel kernels. Without OpenMP this is
/// always 1.
int num_threads() noexcept;

/// Sets the kernel thread count; n <= 0 restores the default (all cores, or
/// the MPGMRES_NUM_THREADS environment variable when set).
void set_num_threads(int n) noexcept;

/// Reads MPGMRES_NUM_THREADS; returns 0 when unset or invalid.
int threads_from_environment() noexcept;

/// Reductions are split into fixed-size blocks whose partial sums are combined
/// in order, so results do not depend on the thread count.
inline constexpr std::size_t kReductionBlock = 2048;

}  // namespace mpgmres
