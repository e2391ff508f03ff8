#include "ighit/fit.hpp"

#include <cmath>

#include "ighit/errors.hpp"

namespace ighit {

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& y) {
  const std::size_t k = columns.size();
  const std::size_t m = y.size();
  if (k == 0 || m < k) throw DomainError("least_squares needs at least as many rows as columns");
  for (const auto& c : columns)
    if (c.size() != m) throw DomainError("least_squares column length mismatch");

  std::vector<std::vector<double>> q = columns;
  std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t row = 0; row < m; ++row) dot += q[i][row] * q[j][row];
      r[i][j] = dot;
      for (std::size_t row = 0; row < m; ++row) q[j][row] -= dot * q[i][row];
    }
    double norm = 0.0;
    for (double v : q[j]) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw DomainError("least_squares columns are linearly dependent");
    r[j][j] = norm;
    for (double& v : q[j]) v /= norm;
  }

  std::vector<double> qty(k, 0.0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t row = 0; row < m; ++row) qty[j] += q[j][row] * y[row];

  std::vector<double> coef(k, 0.0);
  for (std::size_t j = k; j-- > 0;) {
    double acc = qty[j];
    for (std::size_t i = j + 1; i < k; ++i) acc -= r[j][i] * coef[i];
    coef[j] = acc / r[j][j];
  }
  return coef;
}

}  // namespace ighit
