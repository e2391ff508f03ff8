#pragma once

#include <vector>

namespace ighit {

/// Least-squares coefficients for y ~ sum_k c_k columns[k], via modified
/// Gram-Schmidt QR.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& y);

}  // namespace ighit
