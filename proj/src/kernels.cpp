#include "qd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace qd::kernels {

namespace {

const Ops& select() {
  if (const char* env = std::getenv("QD_KERNELS")) {
    std::string_view want(env);
    if (want == "scalar") return scalar();
    if (want == "avx2" && avx2_available()) return avx2();
    // Unknown or unavailable request: fall through to auto-detection.
  }
  return avx2_available() ? avx2() : scalar();
}

}  // namespace

const Ops& active() {
  static const Ops& chosen = select();
  return chosen;
}

}  // namespace qd::kernels
