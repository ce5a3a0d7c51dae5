#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hforge::kernels {

/// Instruction-set variants of the arithmetic inner loops. Scalar is the reference.
enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa) noexcept;

/// Best variant the running CPU supports. HILBERT_FORGE_SIMD=scalar forces the reference.
Isa active_isa() noexcept;

bool isa_available(Isa isa) noexcept;

/// sum_i a[i] * b[i]; a and b must have equal length.
double dot(std::span<const double> a, std::span<const double> b);
double dot(Isa isa, std::span<const double> a, std::span<const double> b);

/// sum_i c[i] / (i + shift); every i + shift must be positive.
double reciprocal_weighted_sum(std::span<const double> c, double shift);
double reciprocal_weighted_sum(Isa isa, std::span<const double> c, double shift);

/// Diagonal (convolution) sums d[t] = sum_{i+j=t} a[i] * b[j], t = 0 .. |a|+|b|-2.
std::vector<double> diagonal_sums(std::span<const double> a, std::span<const double> b);
std::vector<double> diagonal_sums(Isa isa, std::span<const double> a, std::span<const double> b);

namespace detail {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*reciprocal_weighted_sum)(const double*, std::size_t, double);
};

const Table& scalar_table() noexcept;
const Table* avx2_table() noexcept;
const Table* neon_table() noexcept;

}  // namespace detail
}  // namespace hforge::kernels
