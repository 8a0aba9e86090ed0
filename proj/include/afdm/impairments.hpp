// Doubly-dispersive channel, receiver IQ imbalance and residual CFO.
//
// Time index n = 0 is the first sample after the chirp-periodic prefix. With
// 2*N*c1 integer the prefix acts as a plain cyclic prefix, so after its
// removal every path reduces to a cyclic delay and a Doppler phase ramp.
#pragma once

#include "afdm/daft.hpp"
#include "afdm/rng.hpp"
#include "afdm/types.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace afdm {

struct Path {
  cplx gain{1.0, 0.0};
  int delay = 0;        // samples
  double doppler = 0.0;  // cycles per sample
};

struct ChannelRealization {
  std::vector<Path> paths;

  int max_delay() const {
    int d = 0;
    for (const auto& p : paths) d = std::max(d, p.delay);
    return d;
  }
  double total_power() const {
    double e = 0.0;
    for (const auto& p : paths) e += std::norm(p.gain);
    return e;
  }
  void validate(int n) const {
    require(!paths.empty(), "ChannelRealization: at least one path required");
    std::set<int> seen;
    for (const auto& p : paths) {
      require(p.delay >= 0 && p.delay < n, "ChannelRealization: delay out of [0, N)");
      require(seen.insert(p.delay).second, "ChannelRealization: delays must be distinct");
      require(std::isfinite(p.doppler), "ChannelRealization: non-finite Doppler");
    }
  }
};

// Receiver IQ mismatch. mu and nu are always derived from (psi, phi).
class ImpairmentParams {
 public:
  ImpairmentParams() = default;
  ImpairmentParams(double psi, double phi_rad, double sigma_eps_sq = 0.0)
      : psi_(psi), phi_(phi_rad), sigma_eps_sq_(sigma_eps_sq) {
    require(sigma_eps_sq >= 0.0, "ImpairmentParams: sigma_eps_sq must be >= 0");
  }

  static ImpairmentParams ideal() { return {}; }

  double psi() const { return psi_; }
  double phi() const { return phi_; }
  double sigma_eps_sq() const { return sigma_eps_sq_; }
  cplx mu() const { return {std::cos(phi_), psi_ * std::sin(phi_)}; }
  cplx nu() const { return {psi_ * std::cos(phi_), -std::sin(phi_)}; }

 private:
  double psi_ = 0.0;
  double phi_ = 0.0;
  double sigma_eps_sq_ = 0.0;
};

struct IqCoefficients {
  cplx mu;
  cplx nu;
};

inline IqCoefficients derive_iq_params(double psi, double phi_rad) {
  const ImpairmentParams p(psi, phi_rad);
  return {p.mu(), p.nu()};
}

struct CfoRealization {
  double epsilon = 0.0;  // cycles per sample
};

// One standard normal is drawn even when the variance is zero so paired
// runs consume identical random streams.
inline CfoRealization draw_residual_cfo(double sigma_eps_sq, Rng& rng) {
  require(sigma_eps_sq >= 0.0, "draw_residual_cfo: variance must be >= 0");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double z = gauss(rng);
  if (sigma_eps_sq == 0.0) return {0.0};
  return {std::sqrt(sigma_eps_sq) * z};
}

enum class DopplerMode { integer, fractional };

struct ChannelConfig {
  int n = 64;
  int paths = 3;
  double alpha_max = 2.0;  // maximum normalized Doppler index
  DopplerMode doppler_mode = DopplerMode::integer;
  std::vector<int> delays;  // empty: 0, 1, ..., paths - 1
  int cpp_len = 3;
};

// Maximum Doppler index alpha_max = v * fc / c / chirp_spacing.
inline double max_doppler_index(double speed_kmh, double carrier_hz, double chirp_spacing_hz) {
  constexpr double kSpeedOfLight = 3.0e8;
  const double doppler_hz = speed_kmh / 3.6 * carrier_hz / kSpeedOfLight;
  return doppler_hz / chirp_spacing_hz;
}

inline ChannelRealization sample_channel(const ChannelConfig& cfg, Rng& rng) {
  require(cfg.paths >= 1, "sample_channel: P must be >= 1");
  std::vector<int> delays = cfg.delays;
  if (delays.empty()) {
    delays.resize(cfg.paths);
    for (int p = 0; p < cfg.paths; ++p) delays[p] = p;
  }
  require(static_cast<int>(delays.size()) == cfg.paths,
          "sample_channel: delay list length must equal P");
  const int max_delay = *std::max_element(delays.begin(), delays.end());
  require(max_delay + 1 <= cfg.cpp_len,
          "sample_channel: P=" + std::to_string(cfg.paths) + " with max delay " +
              std::to_string(max_delay) + " exceeds CPP length " + std::to_string(cfg.cpp_len));

  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / cfg.paths));
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  ChannelRealization ch;
  ch.paths.reserve(cfg.paths);
  for (int p = 0; p < cfg.paths; ++p) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    const double theta = angle(rng);
    const double alpha = cfg.alpha_max * std::cos(theta);
    const double index = cfg.doppler_mode == DopplerMode::integer ? std::trunc(alpha) : alpha;
    ch.paths.push_back({cplx{re, im}, delays[p], index / cfg.n});
  }
  ch.validate(cfg.n);
  return ch;
}

// sum_p h_p * Delta(f_p) * Pi^tau_p as a dense N x N matrix.
inline CMatrix time_channel_matrix(int n, const ChannelRealization& ch) {
  ch.validate(n);
  CMatrix h = CMatrix::Zero(n, n);
  for (const auto& p : ch.paths)
    for (int i = 0; i < n; ++i)
      h(i, ((i - p.delay) % n + n) % n) += p.gain * neg_phasor(p.doppler * i);
  return h;
}

inline CVector cfo_ramp(int n, double eps) {
  CVector d(n);
  for (int i = 0; i < n; ++i) d[i] = neg_phasor(eps * i);
  return d;
}

// H_eff = A * Delta(eps) * (sum_p h_p Delta(f_p) Pi^tau_p) * A^H.
inline CMatrix build_heff(const CMatrix& daft, const ChannelRealization& ch,
                          const CfoRealization& eps) {
  require(daft.rows() == daft.cols(), "build_heff: DAFT matrix must be square");
  const int n = static_cast<int>(daft.rows());
  const CMatrix ht = cfo_ramp(n, eps.epsilon).asDiagonal() * time_channel_matrix(n, ch);
  return daft * ht * daft.adjoint();
}

inline CMatrix build_heff(const AfdmParams& p, const ChannelRealization& ch,
                          const CfoRealization& eps) {
  return build_heff(daft_matrix(p), ch, eps);
}

// Receiver IQ mixing of a complex baseband vector: mu * z + nu * conj(z).
inline CVector apply_iq(const CVector& z, cplx mu, cplx nu) {
  return mu * z + nu * z.conjugate();
}

// Sample-by-sample received signal after prefix removal, delays wrapping mod N.
inline CVector apply_channel_time(const CVector& s, const ChannelRealization& ch,
                                  const CfoRealization& eps, const ImpairmentParams& iq,
                                  const CVector& w) {
  const int n = static_cast<int>(s.size());
  require(w.size() == n, "apply_channel_time: noise length must equal signal length");
  ch.validate(n);
  const cplx mu = iq.mu();
  const cplx nu = iq.nu();
  CVector r(n);
  for (int t = 0; t < n; ++t) {
    cplx direct{0.0, 0.0};
    cplx image{0.0, 0.0};
    for (const auto& p : ch.paths) {
      const cplx sv = s[((t - p.delay) % n + n) % n];
      const cplx ramp = neg_phasor(p.doppler * t);
      direct += p.gain * sv * ramp;
      image += std::conj(p.gain) * std::conj(sv) * std::conj(ramp);
    }
    const cplx rot = neg_phasor(eps.epsilon * t);
    r[t] = mu * rot * direct + nu * std::conj(rot) * image + mu * rot * w[t] +
           nu * std::conj(rot) * std::conj(w[t]);
  }
  return r;
}

// Matrix form of the same received signal.
inline CVector apply_channel_matrix(const CVector& s, const ChannelRealization& ch,
                                    const CfoRealization& eps, const ImpairmentParams& iq,
                                    const CVector& w) {
  const int n = static_cast<int>(s.size());
  require(w.size() == n, "apply_channel_matrix: noise length must equal signal length");
  const CVector rot = cfo_ramp(n, eps.epsilon);
  const CVector z = rot.asDiagonal() * (time_channel_matrix(n, ch) * s + w);
  return apply_iq(z, iq.mu(), iq.nu());
}

// Linear-convolution propagation of a framed signal (prefix included) with
// per-sample noise over the whole frame. Samples before the frame start are zero.
inline CVector apply_channel_linear(const CVector& framed, int cpp_len,
                                    const ChannelRealization& ch, const CfoRealization& eps,
                                    const ImpairmentParams& iq, const CVector& w) {
  const auto len = framed.size();
  require(w.size() == len, "apply_channel_linear: noise length must equal frame length");
  require(cpp_len >= 0 && cpp_len <= len, "apply_channel_linear: bad prefix length");
  CVector z(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const double t = static_cast<double>(i - cpp_len);
    cplx acc{0.0, 0.0};
    for (const auto& p : ch.paths) {
      const Eigen::Index src = i - p.delay;
      if (src < 0) continue;
      acc += p.gain * framed[src] * neg_phasor(p.doppler * t);
    }
    z[i] = neg_phasor(eps.epsilon * t) * (acc + w[i]);
  }
  return apply_iq(z, iq.mu(), iq.nu());
}

// w' = mu A Delta(eps) w + nu A Delta(-eps) conj(w) for a given proper w.
inline CVector improper_noise_from(const CMatrix& daft, const ImpairmentParams& iq,
                                   const CfoRealization& eps, const CVector& w) {
  const CVector z = cfo_ramp(static_cast<int>(w.size()), eps.epsilon).asDiagonal() * w;
  return daft * apply_iq(z, iq.mu(), iq.nu());
}

// Proper CN(0, sigma^2 I) vector.
inline CVector draw_proper_noise(int n, double sigma_n_sq, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(sigma_n_sq / 2.0));
  CVector w(n);
  for (int i = 0; i < n; ++i) {
    const double re = gauss(rng);
    w[i] = cplx{re, gauss(rng)};
  }
  return w;
}

inline CVector gen_improper_noise(const CMatrix& daft, const ImpairmentParams& iq,
                                  const CfoRealization& eps, double sigma_n_sq, Rng& rng) {
  require(sigma_n_sq > 0.0, "gen_improper_noise: sigma_n_sq must be positive");
  return improper_noise_from(daft, iq, eps,
                             draw_proper_noise(static_cast<int>(daft.rows()), sigma_n_sq, rng));
}

inline CVector gen_improper_noise(const AfdmParams& p, const ImpairmentParams& iq,
                                  const CfoRealization& eps, double sigma_n_sq, Rng& rng) {
  return gen_improper_noise(daft_matrix(p), iq, eps, sigma_n_sq, rng);
}

}  // namespace afdm
