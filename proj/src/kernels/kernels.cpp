#include "hforge/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace hforge::kernels {

namespace detail {

#if !defined(HFORGE_HAVE_AVX2_TU)
const Table* avx2_table() noexcept { return nullptr; }
#endif
#if !defined(HFORGE_HAVE_NEON_TU)
const Table* neon_table() noexcept { return nullptr; }
#endif

}  // namespace detail

namespace {

bool cpu_has_avx2() noexcept {
#if defined(HFORGE_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const detail::Table& table_for(Isa isa) {
  const detail::Table* t = nullptr;
  switch (isa) {
    case Isa::Scalar:
      return detail::scalar_table();
    case Isa::Avx2:
      t = isa_available(Isa::Avx2) ? detail::avx2_table() : nullptr;
      break;
    case Isa::Neon:
      t = detail::neon_table();
      break;
  }
  if (t == nullptr) {
    throw std::invalid_argument(std::string("kernel variant unavailable: ") + isa_name(isa));
  }
  return *t;
}

const detail::Table& active_table() {
  static const detail::Table& table = table_for(active_isa());
  return table;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
    case Isa::Neon:
      return detail::neon_table() != nullptr;
  }
  return false;
}

Isa active_isa() noexcept {
  static const Isa isa = [] {
    const char* env = std::getenv("HILBERT_FORGE_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
      return Isa::Scalar;
    }
    if (isa_available(Isa::Avx2)) {
      return Isa::Avx2;
    }
    if (isa_available(Isa::Neon)) {
      return Isa::Neon;
    }
    return Isa::Scalar;
  }();
  return isa;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  return active_table().dot(a.data(), b.data(), a.size());
}

double dot(Isa isa, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  return table_for(isa).dot(a.data(), b.data(), a.size());
}

double reciprocal_weighted_sum(std::span<const double> c, double shift) {
  return active_table().reciprocal_weighted_sum(c.data(), c.size(), shift);
}

double reciprocal_weighted_sum(Isa isa, std::span<const double> c, double shift) {
  return table_for(isa).reciprocal_weighted_sum(c.data(), c.size(), shift);
}

namespace {

std::vector<double> diagonal_sums_impl(const detail::Table& table, std::span<const double> a,
                                       std::span<const double> b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::vector<double> brev(b.rbegin(), b.rend());
  std::vector<double> out(na + nb - 1);
  for (std::size_t t = 0; t < out.size(); ++t) {
    const std::size_t i0 = t >= nb - 1 ? t - (nb - 1) : 0;
    const std::size_t i1 = std::min(t, na - 1);
    // b[t - i] == brev[nb - 1 - t + i]
    out[t] = table.dot(a.data() + i0, brev.data() + (nb - 1 - t + i0), i1 - i0 + 1);
  }
  return out;
}

}  // namespace

std::vector<double> diagonal_sums(std::span<const double> a, std::span<const double> b) {
  return diagonal_sums_impl(active_table(), a, b);
}

std::vector<double> diagonal_sums(Isa isa, std::span<const double> a, std::span<const double> b) {
  return diagonal_sums_impl(table_for(isa), a, b);
}

}  // namespace hforge::kernels
