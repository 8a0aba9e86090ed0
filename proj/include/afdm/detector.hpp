// Widely-linear LMMSE detection on the real-composite model
//   y~ = H~ x~ + w~,   x~ = [Re x; Im x],
// where the affine-domain observation is y = mu H x + nu G conj(H) conj(x) + w'
// with G = A A^T and improper noise w'.
#pragma once

#include "afdm/daft.hpp"
#include "afdm/types.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace afdm {

inline constexpr double kMaxConditionNumber = 1e12;

struct RealCompositeModel {
  RMatrix h_tilde;
  RMatrix c_w_tilde;
  RVector y_tilde;
};

class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double cond)
      : std::runtime_error(what), condition_(cond) {}
  double condition_estimate() const { return condition_; }

 private:
  double condition_;
};

inline RVector stack(const CVector& x) {
  const auto n = x.size();
  RVector out(2 * n);
  out.head(n) = x.real();
  out.tail(n) = x.imag();
  return out;
}

inline CVector reassemble_complex(const RVector& x_tilde) {
  require(x_tilde.size() % 2 == 0, "reassemble_complex: length must be even");
  const auto n = x_tilde.size() / 2;
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = cplx{x_tilde[i], x_tilde[i + n]};
  return x;
}

// Block embedding [[Re(B + D), -Im(B - D)], [Im(B + D), Re(B - D)]] of the
// real-linear map x -> B x + D conj(x).
inline RMatrix real_embedding(const CMatrix& b, const CMatrix& d) {
  const auto n = b.rows();
  RMatrix out(2 * n, 2 * n);
  const CMatrix sum = b + d;
  const CMatrix diff = b - d;
  out.topLeftCorner(n, n) = sum.real();
  out.topRightCorner(n, n) = -diff.imag();
  out.bottomLeftCorner(n, n) = sum.imag();
  out.bottomRightCorner(n, n) = diff.real();
  return out;
}

inline RMatrix build_composite_channel(const CMatrix& h_eff, const CMatrix& conj_op, cplx mu,
                                       cplx nu) {
  require(h_eff.rows() == h_eff.cols() && conj_op.rows() == h_eff.rows() &&
              conj_op.cols() == h_eff.cols(),
          "build_composite_channel: dimension mismatch");
  if (nu == cplx{0.0, 0.0}) return real_embedding(mu * h_eff, CMatrix::Zero(h_eff.rows(), h_eff.cols()));
  return real_embedding(mu * h_eff, nu * (conj_op * h_eff.conjugate()));
}

// C~ = 1/2 [[Re(C + P), -Im(C - P)], [Im(C + P), Re(C - P)]] with
// C = (|mu|^2 + |nu|^2) sigma^2 I and P = 2 mu nu sigma^2 G.
inline RMatrix build_noise_covariance(const CMatrix& conj_op, cplx mu, cplx nu, double sigma_n_sq) {
  require(sigma_n_sq > 0.0, "build_noise_covariance: sigma_n_sq must be positive");
  const auto n = conj_op.rows();
  const CMatrix cov = (std::norm(mu) + std::norm(nu)) * sigma_n_sq * CMatrix::Identity(n, n);
  const CMatrix pseudo = 2.0 * mu * nu * sigma_n_sq * conj_op;
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = 0.5 * (cov + pseudo).real();
  out.topRightCorner(n, n) = -0.5 * (cov - pseudo).imag();
  out.bottomLeftCorner(n, n) = 0.5 * (cov + pseudo).imag();
  out.bottomRightCorner(n, n) = 0.5 * (cov - pseudo).real();
  return out;
}

inline RMatrix build_noise_covariance(const AfdmParams& p, cplx mu, cplx nu, double sigma_n_sq) {
  return build_noise_covariance(conj_operator(p), mu, nu, sigma_n_sq);
}

namespace detail {

template <typename Matrix>
Eigen::LLT<Matrix> checked_llt(const Matrix& m, const char* context) {
  Eigen::LLT<Matrix> llt(m);
  const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (llt.info() != Eigen::Success || cond > kMaxConditionNumber) {
    std::ostringstream os;
    os << context << ": matrix is singular or ill-conditioned (condition estimate " << cond
       << ")";
    throw IllConditionedError(os.str(), cond);
  }
  return llt;
}

}  // namespace detail

// (2 I + H~^T C~^-1 H~)^-1 H~^T C~^-1 y~. The 2 I term is the inverse of the
// prior covariance E[x~ x~^T] = I / 2 of a unit-power proper constellation.
inline RVector lmmse_detect(const RealCompositeModel& m) {
  require(m.c_w_tilde.rows() == m.h_tilde.rows() && m.y_tilde.size() == m.h_tilde.rows(),
          "lmmse_detect: dimension mismatch");
  const auto cov = detail::checked_llt(m.c_w_tilde, "lmmse_detect (noise covariance)");
  const RMatrix cinv_h = cov.solve(m.h_tilde);
  const RVector cinv_y = cov.solve(m.y_tilde);
  RMatrix q = m.h_tilde.transpose() * cinv_h;
  q.diagonal().array() += 2.0;
  const auto qllt = detail::checked_llt(q, "lmmse_detect (posterior precision)");
  return qllt.solve(m.h_tilde.transpose() * cinv_y);
}

// Woodbury route, 1/2 H~^T (1/2 H~ H~^T + C~)^-1 y~. Keeps 1/2 H~ H~^T so a
// frame can be detected at several noise levels with one Gram product.
class WoodburyDetector {
 public:
  explicit WoodburyDetector(RMatrix h_tilde) : h_(std::move(h_tilde)) {
    half_gram_ = RMatrix::Zero(h_.rows(), h_.rows());
    half_gram_.selfadjointView<Eigen::Lower>().rankUpdate(h_, 0.5);
    half_gram_ = half_gram_.selfadjointView<Eigen::Lower>();
  }

  const RMatrix& h_tilde() const { return h_; }

  RVector detect(const RMatrix& c_w_tilde, const RVector& y_tilde) const {
    require(c_w_tilde.rows() == h_.rows() && y_tilde.size() == h_.rows(),
            "lmmse_detect_woodbury: dimension mismatch");
    const RMatrix s = half_gram_ + c_w_tilde;
    const auto llt = detail::checked_llt(s, "lmmse_detect_woodbury");
    return 0.5 * (h_.transpose() * llt.solve(y_tilde));
  }

 private:
  RMatrix h_;
  RMatrix half_gram_;
};

inline RVector lmmse_detect_woodbury(const RealCompositeModel& m) {
  return WoodburyDetector(m.h_tilde).detect(m.c_w_tilde, m.y_tilde);
}

// Improperness-blind complex LMMSE: the image term and pseudo-covariance are
// ignored and the noise is taken as proper with power (|mu|^2 + |nu|^2) sigma^2.
//   x^ = (mu H)^H (mu H (mu H)^H + (|mu|^2 + |nu|^2) sigma^2 I)^-1 y
class NaiveLmmseDetector {
 public:
  NaiveLmmseDetector(const CMatrix& h_eff, cplx mu, cplx nu)
      : h_(mu * h_eff), gram_(h_ * h_.adjoint()), noise_gain_(std::norm(mu) + std::norm(nu)) {}

  CVector detect(const CVector& y, double sigma_n_sq) const {
    require(h_.rows() == y.size(), "naive_lmmse: dimension mismatch");
    CMatrix s = gram_;
    s.diagonal().array() += noise_gain_ * sigma_n_sq;
    const auto llt = detail::checked_llt(s, "naive_lmmse");
    return h_.adjoint() * llt.solve(y);
  }

 private:
  CMatrix h_;
  CMatrix gram_;
  double noise_gain_;
};

inline CVector naive_lmmse(const CVector& y, const CMatrix& h_eff, double sigma_n_sq, cplx mu,
                           cplx nu) {
  return NaiveLmmseDetector(h_eff, mu, nu).detect(y, sigma_n_sq);
}

}  // namespace afdm
