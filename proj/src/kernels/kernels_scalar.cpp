#include "hforge/kernels.hpp"

namespace hforge::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i] * b[i];
  }
  return acc;
}

double reciprocal_scalar(const double* c, std::size_t n, double shift) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += c[i] / (static_cast<double>(i) + shift);
  }
  return acc;
}

}  // namespace

const Table& scalar_table() noexcept {
  static const Table table{&dot_scalar, &reciprocal_scalar};
  return table;
}

}  // namespace hforge::kernels::detail
