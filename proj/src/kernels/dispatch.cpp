#include <cstdlib>
#include <string_view>

#include "twomode/kernels.hpp"

#ifdef TWOMODE_HAVE_AVX2
#include "avx2.hpp"
#endif

namespace twomode::kernels {

const KernelTable* avx2_table() {
#ifdef TWOMODE_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("TWOMODE_ISA");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace twomode::kernels
