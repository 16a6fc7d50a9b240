// AVX2+FMA variants of the amplitude kernels. Compiled with -mavx2 -mfma;
// callers must check avx2_available() before touching avx2().

#include "qd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace qd::kernels {

namespace {

// Two packed complex doubles per __m256d: [re0, im0, re1, im1].
inline __m256d cmul256(__m256d a, __m256d b) {
  __m256d ar = _mm256_movedup_pd(a);        // [re0, re0, re1, re1]
  __m256d ai = _mm256_permute_pd(a, 0xF);   // [im0, im0, im1, im1]
  __m256d bs = _mm256_permute_pd(b, 0x5);   // [im0', re0', im1', re1']
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline __m128d cmul128(__m128d a, __m128d b) {
  __m128d ar = _mm_movedup_pd(a);
  __m128d ai = _mm_shuffle_pd(a, a, 0x3);
  __m128d bs = _mm_shuffle_pd(b, b, 0x1);
  return _mm_fmaddsub_pd(ar, b, _mm_mul_pd(ai, bs));
}

inline double hsum256(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d sum = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(sum, _mm_unpackhi_pd(sum, sum)));
}

double norm_sq_avx2(const cdouble* a, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  std::size_t doubles = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= doubles; i += 4) {
    __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum256(acc);
  for (; i < doubles; ++i) total += p[i] * p[i];
  return total;
}

void scale_avx2(cdouble* a, std::size_t n, double s) {
  double* p = reinterpret_cast<double*>(a);
  std::size_t doubles = 2 * n;
  __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= doubles; i += 4) {
    _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), sv));
  }
  for (; i < doubles; ++i) p[i] *= s;
}

cdouble inner_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_xor_pd(_mm256_loadu_pd(pa + 2 * i), conj_mask);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc = _mm256_add_pd(acc, cmul256(va, vb));
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d sum = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, sum);
  cdouble total(out[0], out[1]);
  for (; i < n; ++i) total += std::conj(a[i]) * b[i];
  return total;
}

void apply_2x2_avx2(cdouble* a, std::size_t n, std::size_t stride,
                    const cdouble m[4]) {
  double* p = reinterpret_cast<double*>(a);
  if (stride == 1) {
    // Pair members are adjacent; one 128-bit lane per amplitude.
    __m128d m00 = _mm_loadu_pd(reinterpret_cast<const double*>(&m[0]));
    __m128d m01 = _mm_loadu_pd(reinterpret_cast<const double*>(&m[1]));
    __m128d m10 = _mm_loadu_pd(reinterpret_cast<const double*>(&m[2]));
    __m128d m11 = _mm_loadu_pd(reinterpret_cast<const double*>(&m[3]));
    for (std::size_t i = 0; i < n; i += 2) {
      __m128d a0 = _mm_loadu_pd(p + 2 * i);
      __m128d a1 = _mm_loadu_pd(p + 2 * i + 2);
      __m128d n0 = _mm_add_pd(cmul128(m00, a0), cmul128(m01, a1));
      __m128d n1 = _mm_add_pd(cmul128(m10, a0), cmul128(m11, a1));
      _mm_storeu_pd(p + 2 * i, n0);
      _mm_storeu_pd(p + 2 * i + 2, n1);
    }
    return;
  }
  // stride >= 2: process two complex amplitudes per vector.
  __m256d m00 = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&m[0]));
  __m256d m01 = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&m[1]));
  __m256d m10 = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&m[2]));
  __m256d m11 = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&m[3]));
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; off += 2) {
      double* p0 = p + 2 * (base + off);
      double* p1 = p + 2 * (base + off + stride);
      __m256d a0 = _mm256_loadu_pd(p0);
      __m256d a1 = _mm256_loadu_pd(p1);
      __m256d n0 = _mm256_add_pd(cmul256(m00, a0), cmul256(m01, a1));
      __m256d n1 = _mm256_add_pd(cmul256(m10, a0), cmul256(m11, a1));
      _mm256_storeu_pd(p0, n0);
      _mm256_storeu_pd(p1, n1);
    }
  }
}

}  // namespace

const Ops& avx2() {
  static const Ops ops{"avx2", norm_sq_avx2, scale_avx2, inner_avx2,
                       apply_2x2_avx2};
  return ops;
}

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace qd::kernels

#else  // non-x86: scalar only

namespace qd::kernels {

bool avx2_available() { return false; }
const Ops& avx2() { return scalar(); }

}  // namespace qd::kernels

#endif
