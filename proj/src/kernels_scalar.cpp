#include "qd/kernels.hpp"

namespace qd::kernels {

namespace {

double norm_sq_scalar(const cdouble* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

void scale_scalar(cdouble* a, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

cdouble inner_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

void apply_2x2_scalar(cdouble* a, std::size_t n, std::size_t stride,
                      const cdouble m[4]) {
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      cdouble a0 = a[base + off];
      cdouble a1 = a[base + off + stride];
      a[base + off] = m[0] * a0 + m[1] * a1;
      a[base + off + stride] = m[2] * a0 + m[3] * a1;
    }
  }
}

}  // namespace

const Ops& scalar() {
  static const Ops ops{"scalar", norm_sq_scalar, scale_scalar, inner_scalar,
                       apply_2x2_scalar};
  return ops;
}

}  // namespace qd::kernels
