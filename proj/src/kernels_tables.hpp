#pragma once

// Internal: per-ISA kernel tables handed to the dispatcher in kernels.cpp.

#include "gradtc/kernels.hpp"

namespace gradtc::kernels::detail {

const KernelTable& scalar_table();

#if defined(GRADTC_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif

} // namespace gradtc::kernels::detail
