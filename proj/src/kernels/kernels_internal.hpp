#pragma once

#include "slab/kernels.hpp"

namespace slab::kernels {

#if defined(SLAB_HAVE_AVX2)
const KernelTable& avx2_table_impl();
#endif
#if defined(SLAB_HAVE_NEON)
const KernelTable& neon_table_impl();
#endif

}  // namespace slab::kernels
