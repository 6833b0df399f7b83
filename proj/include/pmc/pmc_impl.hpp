#pragma once

#include "pmc/error.hpp"

namespace pmc {

template <typename Derived>
Eigen::Matrix3d surface_matrix(const Eigen::DenseBase<Derived>& main_values) {
  if (main_values.size() < 9)
    throw ComputeError("surface_matrix: need at least 9 main-variable values, got " +
                       std::to_string(main_values.size()));
  Eigen::Matrix3d surface;
  for (Eigen::Index i = 0; i < 9; ++i) surface(i / 3, i % 3) = static_cast<double>(main_values(i));
  return surface;
}

}  // namespace pmc
