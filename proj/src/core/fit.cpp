// Copyright 2026 The mcm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcmlab/core/fit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mcmlab/core/errors.hpp"

namespace mcmlab::core {

namespace {

Eigen::VectorXd solve_lsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < a.cols()) throw NumericalError("least-squares design matrix is rank deficient");
  return qr.solve(y);
}

double rms(const Eigen::VectorXd& r) {
  return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

}  // namespace

CosineFit fit_cosine(std::span<const double> phis, std::span<const double> values) {
  if (phis.size() != values.size() || phis.size() < 3) {
    throw PreconditionError("cosine fit needs at least three (phi, value) pairs");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(phis.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = std::cos(phis[i]);
    a(i, 1) = std::sin(phis[i]);
    a(i, 2) = 1.0;
    y(i) = values[i];
  }
  const Eigen::VectorXd c = solve_lsq(a, y);
  CosineFit fit;
  fit.amplitude = std::hypot(c(0), c(1));
  fit.phase = std::atan2(c(1), c(0));
  fit.offset = c(2);
  fit.rms_residual = rms(y - a * c);
  return fit;
}

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys) {
  const std::vector<double> c = fit_polynomial(xs, ys, 1);
  LinearFit fit;
  fit.intercept = c[0];
  fit.slope = c[1];
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (c[0] + c[1] * xs[i]);
    s += r * r;
  }
  fit.rms_residual = std::sqrt(s / static_cast<double>(xs.size()));
  return fit;
}

std::vector<double> fit_polynomial(std::span<const double> xs, std::span<const double> ys,
                                   int degree) {
  if (xs.size() != ys.size() || static_cast<int>(xs.size()) < degree + 1 || degree < 0) {
    throw PreconditionError("polynomial fit needs at least degree + 1 points");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  // Scale abscissae for conditioning (times are ~1e-5 s).
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      a(i, k) = p;
      p *= xs[i] / scale;
    }
    y(i) = ys[i];
  }
  const Eigen::VectorXd c = solve_lsq(a, y);
  std::vector<double> out(degree + 1);
  double s = 1.0;
  for (int k = 0; k <= degree; ++k) {
    out[k] = c(k) / s;
    s *= scale;
  }
  return out;
}

std::vector<double> unwrap(std::span<const double> phases) {
  std::vector<double> out(phases.begin(), phases.end());
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double d = out[i] - out[i - 1];
    out[i] -= two_pi * std::round(d / two_pi);
  }
  return out;
}

}  // namespace mcmlab::core
