// Discrete affine Fourier transform (DAFT) and the matrices built around it.
//
// The DAFT matrix is A = L(c2) * F * L(c1), where F is the unitary DFT and
// L(c) = diag(exp(-j*2*pi*c*n^2)). Chirp rate c1 is restricted to values with
// 2*N*c1 integer, which is stored exactly as `k`.
//
// Everything here is dense. Block lengths of interest are <= 1024.
#pragma once

#include "afdm/types.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace afdm {

struct AfdmParams {
  int n = 0;         // block length, even and >= 2
  std::int64_t k = 0;  // 2 * n * c1, exactly
  double c2 = 0.0;

  AfdmParams() = default;
  AfdmParams(int block_length, std::int64_t two_n_c1, double chirp2)
      : n(block_length), k(two_n_c1), c2(chirp2) {
    validate();
  }

  // Builds parameters from a real c1; 2*n*c1 must be an integer to 1e-9.
  static AfdmParams from_c1(int block_length, double c1, double chirp2) {
    const double two_n_c1 = 2.0 * block_length * c1;
    const double rounded = std::round(two_n_c1);
    require(std::abs(two_n_c1 - rounded) < 1e-9,
            "AfdmParams: 2*N*c1 must be an integer, got " + std::to_string(two_n_c1));
    return AfdmParams(block_length, static_cast<std::int64_t>(rounded), chirp2);
  }

  double c1() const { return static_cast<double>(k) / (2.0 * n); }

  void validate() const {
    require(n >= 2 && n % 2 == 0,
            "AfdmParams: N must be even and >= 2, got " + std::to_string(n));
    require(std::isfinite(c2), "AfdmParams: c2 must be finite");
  }
};

inline CMatrix dft_matrix(int n) {
  require(n >= 1, "dft_matrix: n must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix f(n, n);
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      f(m, l) = scale * neg_phasor_rational(static_cast<std::int64_t>(m) * l, n);
  return f;
}

inline CMatrix phase_diag(double c, int n) {
  require(n >= 1, "phase_diag: n must be >= 1");
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = neg_phasor(c * static_cast<double>(i) * i);
  return d;
}

// diag(exp(-j*2*pi*(num/den)*i^2)) with the phase reduced in integers.
inline CMatrix phase_diag_rational(std::int64_t num, std::int64_t den, int n) {
  require(n >= 1, "phase_diag_rational: n must be >= 1");
  require(den > 0, "phase_diag_rational: denominator must be positive");
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const std::int64_t sq = (static_cast<std::int64_t>(i) * i) % den;
    d(i, i) = neg_phasor_rational((num % den) * sq, den);
  }
  return d;
}

inline CMatrix daft_matrix(const AfdmParams& p) {
  p.validate();
  const CMatrix lc2 = phase_diag(p.c2, p.n);
  const CMatrix lc1 = phase_diag_rational(p.k, 2LL * p.n, p.n);
  return lc2 * dft_matrix(p.n) * lc1;
}

inline CVector apply_daft(const AfdmParams& p, const CVector& s) {
  require(s.size() == p.n, "apply_daft: vector length must equal N");
  return daft_matrix(p) * s;
}

inline CVector apply_idaft(const AfdmParams& p, const CVector& x) {
  require(x.size() == p.n, "apply_idaft: vector length must equal N");
  return daft_matrix(p).adjoint() * x;
}

// Forward cyclic shift: [P]_{i,j} = 1 iff i == (j + 1) mod n, so (P s)[i] = s[i - 1].
inline CMatrix cyclic_shift_matrix(int n) {
  require(n >= 1, "cyclic_shift_matrix: n must be >= 1");
  CMatrix pi = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) pi((j + 1) % n, j) = 1.0;
  return pi;
}

// A * A^T evaluated through L(c2) F L(2 c1) F L(c2).
inline CMatrix conj_operator(const AfdmParams& p) {
  p.validate();
  const CMatrix lc2 = phase_diag(p.c2, p.n);
  const CMatrix l2c1 = phase_diag_rational(p.k, p.n, p.n);
  const CMatrix f = dft_matrix(p.n);
  return lc2 * f * l2c1 * f * lc2;
}

// (1/n) * sum_t exp(-j (2 pi / n) ((m + l) t + k t^2)), summed term by term.
// This is [A A^T]_{m,l} for c2 = 0.
inline cplx operator_entry_bruteforce(int n, std::int64_t k, int m, int l) {
  require(n >= 1, "operator_entry_bruteforce: n must be >= 1");
  require(m >= 0 && m < n && l >= 0 && l < n, "operator_entry_bruteforce: index out of range");
  cplx acc{0.0, 0.0};
  const std::int64_t s = m + l;
  for (std::int64_t t = 0; t < n; ++t) {
    const std::int64_t expo = ((s * t) % n + ((k % n) * ((t * t) % n)) % n) % n;
    acc += neg_phasor_rational(expo, n);
  }
  return acc / static_cast<double>(n);
}

// 2-adic valuation; v2(0) is reported as the int maximum.
inline int two_adic_valuation(std::int64_t x) {
  if (x == 0) return std::numeric_limits<int>::max();
  const auto u = static_cast<std::uint64_t>(x < 0 ? -x : x);
  return std::countr_zero(u);
}

// Analytic zero test for [A A^T]_{m,l} at c2 = 0, evaluated on
// s = (m + l) mod n:
//   s odd                      -> zero
//   s even, s > 0, v2(k) >= v2(s) -> zero
//   s == 0                     -> not predicted zero
inline bool zero_pattern_predicate(int n, std::int64_t k, int m, int l) {
  require(n >= 2 && n % 2 == 0, "zero_pattern_predicate: n must be even");
  require(m >= 0 && m < n && l >= 0 && l < n, "zero_pattern_predicate: index out of range");
  const int s = (m + l) % n;
  if (s % 2 == 1) return true;
  if (s == 0) return false;
  return two_adic_valuation(k) >= two_adic_valuation(s);
}

struct Discrepancy {
  int m = 0;
  int l = 0;
  bool predicted_zero = false;
  bool actual_zero = false;
  double magnitude = 0.0;
};

// Row-major n x n boolean grid.
class BoolGrid {
 public:
  BoolGrid() = default;
  explicit BoolGrid(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  bool operator()(int m, int l) const { return cells_[index(m, l)] != 0; }
  void set(int m, int l, bool v) { cells_[index(m, l)] = v ? 1 : 0; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : cells_) c += v;
    return c;
  }

 private:
  std::size_t index(int m, int l) const { return static_cast<std::size_t>(m) * n_ + l; }
  int n_ = 0;
  std::vector<unsigned char> cells_;
};

struct ZeroPatternReport {
  int n = 0;
  std::int64_t k = 0;
  double threshold = 1e-9;
  BoolGrid predicted_zero;
  BoolGrid actual_zero;
  std::vector<Discrepancy> discrepancies;

  // Discrepancies on cells with odd (m + l) mod n. Must always be zero.
  std::size_t odd_sum_discrepancies() const {
    std::size_t c = 0;
    for (const auto& d : discrepancies) c += ((d.m + d.l) % n) % 2;
    return c;
  }
};

inline ZeroPatternReport zero_pattern_report(int n, std::int64_t k, double threshold = 1e-9) {
  require(threshold > 0.0, "zero_pattern_report: threshold must be positive");
  require(n >= 2 && n % 2 == 0, "zero_pattern_report: n must be even");
  ZeroPatternReport rep;
  rep.n = n;
  rep.k = k;
  rep.threshold = threshold;
  rep.predicted_zero = BoolGrid(n);
  rep.actual_zero = BoolGrid(n);
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      const bool pred = zero_pattern_predicate(n, k, m, l);
      const double mag = std::abs(operator_entry_bruteforce(n, k, m, l));
      const bool actual = mag < threshold;
      rep.predicted_zero.set(m, l, pred);
      rep.actual_zero.set(m, l, actual);
      if (pred != actual) rep.discrepancies.push_back({m, l, pred, actual, mag});
    }
  }
  return rep;
}

}  // namespace afdm
