#pragma once

namespace hforge {

/// Kernel power, weight shift and derivative order of the weighted inequalities.
/// Validity against a HolderPair is checked by validate_kernel_params().
struct KernelParams {
  double lambda = 1.0;
  double gamma_shift = 0.0;
  int n = 0;
};

}  // namespace hforge
