#pragma once

#include "twomode/kernels.hpp"

namespace twomode::kernels {

// Defined in avx2.cpp, which is the only translation unit built with -mavx2.
const KernelTable& avx2_table_impl();

}  // namespace twomode::kernels
