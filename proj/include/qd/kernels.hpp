#pragma once

#include <complex>
#include <cstddef>

namespace qd::kernels {

using cdouble = std::complex<double>;

// Amplitude-array primitives behind the state-vector simulator. Each entry
// point has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant selected at runtime. The two are equivalence-tested against each
// other on random inputs.
//
// apply_2x2 applies a single-qubit gate: for every index pair (i, i+stride)
// with (i / stride) even, (a0, a1) <- (m00*a0 + m01*a1, m10*a0 + m11*a1)
// where m is row-major. stride = 2^(n-1-q) for qubit q of an n-qubit state
// with qubit 0 the most significant bit of the basis index.
struct Ops {
  const char* name;
  double (*norm_sq)(const cdouble* a, std::size_t n);
  void (*scale)(cdouble* a, std::size_t n, double s);
  cdouble (*inner)(const cdouble* a, const cdouble* b, std::size_t n);  // <a|b>
  void (*apply_2x2)(cdouble* a, std::size_t n, std::size_t stride,
                    const cdouble m[4]);
};

const Ops& scalar();

bool avx2_available();
// Valid only when avx2_available() is true.
const Ops& avx2();

// Best implementation for this CPU. The QD_KERNELS environment variable
// ("scalar" or "avx2") overrides the automatic choice; it is read once.
const Ops& active();

}  // namespace qd::kernels
