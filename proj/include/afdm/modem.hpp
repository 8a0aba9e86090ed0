// Bit/symbol mapping and the AFDM transmit/receive framing.
#pragma once

#include "afdm/daft.hpp"
#include "afdm/types.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace afdm {

using Bits = std::vector<std::uint8_t>;

// Square Gray-coded QAM with unit average power.
//
// A label of log2(M) bits is split in half: the leading bits select the
// in-phase level, the trailing bits the quadrature level. Within an axis the
// Gray-decoded index i maps to amplitude (L - 1 - 2 i), so bit 0 is the
// positive half-plane. For QPSK, label 00 is (1 + j) / sqrt(2).
class Constellation {
 public:
  explicit Constellation(int order) : order_(order) {
    require(order >= 4 && std::has_single_bit(static_cast<unsigned>(order)) &&
                std::countr_zero(static_cast<unsigned>(order)) % 2 == 0,
            "Constellation: order must be a power of 4, got " + std::to_string(order));
    bits_per_symbol_ = std::countr_zero(static_cast<unsigned>(order));
    const int half = bits_per_symbol_ / 2;
    const int levels = 1 << half;
    points_.resize(order);
    double power = 0.0;
    for (int label = 0; label < order; ++label) {
      const int gi = label >> half;
      const int gq = label & (levels - 1);
      points_[label] = {axis_level(gi, levels), axis_level(gq, levels)};
      power += std::norm(points_[label]);
    }
    const double scale = 1.0 / std::sqrt(power / order);
    for (auto& pt : points_) pt *= scale;
  }

  int order() const { return order_; }
  int bits_per_symbol() const { return bits_per_symbol_; }
  // Point index equals its bit label read MSB first.
  const std::vector<cplx>& points() const { return points_; }
  cplx point(int label) const { return points_.at(label); }

 private:
  static double axis_level(int gray, int levels) {
    int bin = gray;
    for (int shift = gray >> 1; shift != 0; shift >>= 1) bin ^= shift;
    return static_cast<double>(levels - 1 - 2 * bin);
  }

  int order_ = 0;
  int bits_per_symbol_ = 0;
  std::vector<cplx> points_;
};

inline CVector map_bits(std::span<const std::uint8_t> bits, const Constellation& c) {
  const int b = c.bits_per_symbol();
  require(bits.size() % b == 0, "map_bits: bit count " + std::to_string(bits.size()) +
                                    " not divisible by " + std::to_string(b));
  const auto n = static_cast<Eigen::Index>(bits.size() / b);
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    int label = 0;
    for (int j = 0; j < b; ++j) label = (label << 1) | (bits[i * b + j] & 1);
    x[i] = c.point(label);
  }
  return x;
}

// Nearest point in Euclidean distance; ties go to the lowest point index.
inline Bits demap_hard(const CVector& est, const Constellation& c) {
  const int b = c.bits_per_symbol();
  Bits out(static_cast<std::size_t>(est.size()) * b);
  const auto& pts = c.points();
  for (Eigen::Index i = 0; i < est.size(); ++i) {
    int best = 0;
    double best_d = std::norm(est[i] - pts[0]);
    for (int m = 1; m < c.order(); ++m) {
      const double d = std::norm(est[i] - pts[m]);
      if (d < best_d) {
        best_d = d;
        best = m;
      }
    }
    for (int j = 0; j < b; ++j) out[i * b + j] = static_cast<std::uint8_t>((best >> (b - 1 - j)) & 1);
  }
  return out;
}

struct Frame {
  CVector payload;      // chirp-domain symbols x
  int cpp_len = 0;
  CVector time_signal;  // prefix followed by A^H x
};

// Phase of prefix sample -j (j = 1..cpp_len): exp(-j 2 pi c1 (N^2 - 2 N j)),
// i.e. exp(-j pi k (N - 2 j)) with k = 2 N c1.
inline cplx cpp_phase(const AfdmParams& p, int j) {
  return neg_phasor_rational(p.k * (static_cast<std::int64_t>(p.n) - 2LL * j), 2);
}

inline Frame modulate(const AfdmParams& p, const CMatrix& daft, const CVector& x, int cpp_len) {
  require(x.size() == p.n, "modulate: payload length must equal N");
  require(cpp_len >= 0 && cpp_len <= p.n, "modulate: cpp_len must lie in [0, N]");
  const CVector s = daft.adjoint() * x;
  Frame f;
  f.payload = x;
  f.cpp_len = cpp_len;
  f.time_signal.resize(p.n + cpp_len);
  for (int j = 1; j <= cpp_len; ++j) f.time_signal[cpp_len - j] = s[p.n - j] * cpp_phase(p, j);
  f.time_signal.tail(p.n) = s;
  return f;
}

inline Frame modulate(const AfdmParams& p, const CVector& x, int cpp_len) {
  return modulate(p, daft_matrix(p), x, cpp_len);
}

inline CVector demodulate(const AfdmParams& p, const CMatrix& daft, const CVector& received,
                          int cpp_len) {
  require(cpp_len >= 0, "demodulate: cpp_len must be >= 0");
  require(received.size() == p.n + cpp_len,
          "demodulate: received length " + std::to_string(received.size()) +
              " != N + cpp_len = " + std::to_string(p.n + cpp_len));
  return daft * received.tail(p.n);
}

inline CVector demodulate(const AfdmParams& p, const CVector& received, int cpp_len) {
  return demodulate(p, daft_matrix(p), received, cpp_len);
}

}  // namespace afdm
