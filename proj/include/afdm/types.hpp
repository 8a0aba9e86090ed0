// Common numeric types and small helpers shared by every afdm header.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace afdm {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-j*2*pi*cycles). The argument is reduced to [0, 1) first so large
// chirp phases keep full precision.
inline cplx neg_phasor(double cycles) {
  const double frac = cycles - std::floor(cycles);
  return std::polar(1.0, -kTwoPi * frac);
}

// exp(-j*2*pi*num/den) for integers, reduced exactly before the cast.
inline cplx neg_phasor_rational(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

// Largest absolute entry; zero for empty inputs.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace afdm
