#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "qd/kernels.hpp"
#include "qd/rng.hpp"

using qd::Rng;
using qd::kernels::cdouble;
using qd::kernels::Ops;

namespace {

std::vector<cdouble> random_vector(Rng& rng, std::size_t n) {
  std::vector<cdouble> v(n);
  for (auto& a : v) a = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
  return v;
}

// Straight-line reference for the strided 2x2 update, written independently
// of the library implementation.
void naive_apply_2x2(std::vector<cdouble>& a, std::size_t stride,
                     const cdouble m[4]) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((i / stride) % 2 != 0) continue;
    cdouble a0 = a[i];
    cdouble a1 = a[i + stride];
    a[i] = m[0] * a0 + m[1] * a1;
    a[i + stride] = m[2] * a0 + m[3] * a1;
  }
}

}  // namespace

TEST_CASE("scalar norm_sq and scale") {
  const Ops& ops = qd::kernels::scalar();
  std::vector<cdouble> v{{3.0, 4.0}, {0.0, 0.0}, {1.0, 0.0}};
  CHECK(ops.norm_sq(v.data(), v.size()) == doctest::Approx(26.0).epsilon(1e-14));
  ops.scale(v.data(), v.size(), 0.5);
  CHECK(v[0].real() == doctest::Approx(1.5));
  CHECK(v[0].imag() == doctest::Approx(2.0));
  CHECK(v[2].real() == doctest::Approx(0.5));
}

TEST_CASE("scalar inner product conjugates the left argument") {
  const Ops& ops = qd::kernels::scalar();
  std::vector<cdouble> a{{0.0, 1.0}};
  std::vector<cdouble> b{{0.0, 1.0}};
  cdouble ip = ops.inner(a.data(), b.data(), 1);
  CHECK(ip.real() == doctest::Approx(1.0));
  CHECK(ip.imag() == doctest::Approx(0.0));
}

TEST_CASE("scalar apply_2x2 matches the naive reference") {
  const Ops& ops = qd::kernels::scalar();
  Rng rng(7);
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u}) {
    for (std::size_t stride = 1; stride < n; stride *= 2) {
      auto v = random_vector(rng, n);
      auto expect = v;
      cdouble m[4] = {{rng.uniform(), rng.uniform()},
                      {rng.uniform(), rng.uniform()},
                      {rng.uniform(), rng.uniform()},
                      {rng.uniform(), rng.uniform()}};
      naive_apply_2x2(expect, stride, m);
      ops.apply_2x2(v.data(), v.size(), stride, m);
      for (std::size_t i = 0; i < n; ++i) {
        CAPTURE(n);
        CAPTURE(stride);
        CAPTURE(i);
        CHECK(std::abs(v[i] - expect[i]) < 1e-13);
      }
    }
  }
}

TEST_CASE("active backend is one of the known implementations") {
  const Ops& ops = qd::kernels::active();
  bool known = std::strcmp(ops.name, "scalar") == 0 ||
               std::strcmp(ops.name, "avx2") == 0;
  CHECK(known);
  if (!qd::kernels::avx2_available())
    CHECK(std::strcmp(ops.name, "scalar") == 0);
}

TEST_CASE("avx2 backend agrees with scalar on random data") {
  if (!qd::kernels::avx2_available()) return;
  const Ops& fast = qd::kernels::avx2();
  const Ops& ref = qd::kernels::scalar();
  Rng rng(11);
  for (std::size_t n = 1; n <= 32; ++n) {
    auto a = random_vector(rng, n);
    auto b = random_vector(rng, n);

    CHECK(fast.norm_sq(a.data(), n) ==
          doctest::Approx(ref.norm_sq(a.data(), n)).epsilon(1e-13));

    cdouble ip_fast = fast.inner(a.data(), b.data(), n);
    cdouble ip_ref = ref.inner(a.data(), b.data(), n);
    CHECK(std::abs(ip_fast - ip_ref) < 1e-12);

    auto sa = a;
    auto sb = a;
    fast.scale(sa.data(), n, 0.37);
    ref.scale(sb.data(), n, 0.37);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sa[i] - sb[i]) < 1e-14);
  }
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u}) {
    for (std::size_t stride = 1; stride < n; stride *= 2) {
      auto v = random_vector(rng, n);
      auto w = v;
      cdouble m[4] = {{rng.uniform(), rng.uniform()},
                      {rng.uniform(), rng.uniform()},
                      {rng.uniform(), rng.uniform()},
                      {rng.uniform(), rng.uniform()}};
      fast.apply_2x2(v.data(), n, stride, m);
      ref.apply_2x2(w.data(), n, stride, m);
      for (std::size_t i = 0; i < n; ++i) {
        CAPTURE(n);
        CAPTURE(stride);
        CHECK(std::abs(v[i] - w[i]) < 1e-13);
      }
    }
  }
}
