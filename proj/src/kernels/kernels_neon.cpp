#include <arm_neon.h>

#include "hforge/kernels.hpp"

namespace hforge::kernels::detail {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0);
  float64x2_t acc3 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc2 = vfmaq_f64(acc2, vld1q_f64(a + i + 4), vld1q_f64(b + i + 4));
    acc3 = vfmaq_f64(acc3, vld1q_f64(a + i + 6), vld1q_f64(b + i + 6));
  }
  double acc = vaddvq_f64(vaddq_f64(vaddq_f64(acc0, acc1), vaddq_f64(acc2, acc3)));
  for (; i < n; ++i) {
    acc += a[i] * b[i];
  }
  return acc;
}

double reciprocal_neon(const double* c, std::size_t n, double shift) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double init[2] = {shift, shift + 1.0};
  float64x2_t idx = vld1q_f64(init);
  const float64x2_t step = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vdivq_f64(vld1q_f64(c + i), idx));
    idx = vaddq_f64(idx, step);
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    out += c[i] / (static_cast<double>(i) + shift);
  }
  return out;
}

}  // namespace

const Table* neon_table() noexcept {
  static const Table table{&dot_neon, &reciprocal_neon};
  return &table;
}

}  // namespace hforge::kernels::detail
