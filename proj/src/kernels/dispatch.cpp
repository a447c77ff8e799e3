#include <atomic>
#include <cstdlib>
#include <string_view>

#include "ppa/kernels.hpp"

namespace ppa::kernels {
namespace {

constexpr Table kScalar{Isa::Scalar,      scalar::dot,  scalar::squared_distance, scalar::sum_squares,
                        scalar::polyval, scalar::axpy, scalar::min_max};

#if defined(PPA_HAVE_AVX2_KERNELS)
constexpr Table kAvx2{Isa::Avx2,      avx2::dot,  avx2::squared_distance, avx2::sum_squares,
                      avx2::polyval, avx2::axpy, avx2::min_max};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Table* select() {
  if (const char* env = std::getenv("PPA_SIMD"); env && std::string_view(env) == "scalar") {
    return &kScalar;
  }
  if (const Table* t = avx2_table()) return t;
  return &kScalar;
}

std::atomic<const Table*>& slot() {
  static std::atomic<const Table*> current{select()};
  return current;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const Table& scalar_table() { return kScalar; }

const Table* avx2_table() {
#if defined(PPA_HAVE_AVX2_KERNELS)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() { return *slot().load(std::memory_order_acquire); }

void force(Isa isa) {
  const Table* t = isa == Isa::Avx2 ? avx2_table() : &kScalar;
  if (t) slot().store(t, std::memory_order_release);
}

}  // namespace ppa::kernels
