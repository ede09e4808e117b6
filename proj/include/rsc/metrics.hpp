#pragma once

#include <cmath>
#include <stdexcept>

#include "rsc/frame.hpp"

namespace rsc {

/// PSNR in dB with peak 1.0, capped at 99.0 so identical frames stay finite in CSVs.
inline constexpr double kPsnrCap = 99.0;

template <class Scalar>
double psnr(const Frame<Scalar>& a, const Frame<Scalar>& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("psnr: shape mismatch");
  double se = 0.0;
  for (int c = 0; c < a.channels(); ++c)
    se += static_cast<double>(
        (a.plane(c).template cast<double>() - b.plane(c).template cast<double>())
            .square()
            .sum());
  const double mse = se / (static_cast<double>(a.height()) * a.width() * a.channels());
  if (mse <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

namespace detail {

inline Eigen::ArrayXd gaussian_window(int size, double sigma) {
  Eigen::ArrayXd w(size);
  const double c = (size - 1) / 2.0;
  for (int i = 0; i < size; ++i) w[i] = std::exp(-0.5 * ((i - c) / sigma) * ((i - c) / sigma));
  return w / w.sum();
}

}  // namespace detail

/// Mean local SSIM, 11x11 Gaussian window sigma=1.5, K1=0.01, K2=0.03,
/// dynamic range 1.0. Channels computed independently and averaged.
template <class Scalar>
double ssim(const Frame<Scalar>& a, const Frame<Scalar>& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("ssim: shape mismatch");
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = 0.01 * 0.01;
  constexpr double kC2 = 0.03 * 0.03;
  const Eigen::Index h = a.height(), w = a.width();
  if (h < kWin || w < kWin) throw std::invalid_argument("ssim: frame smaller than window");

  const Eigen::ArrayXd g1 = detail::gaussian_window(kWin, kSigma);
  // Separable 2D window, flattened row-major.
  Eigen::ArrayXXd win(kWin, kWin);
  for (int i = 0; i < kWin; ++i)
    for (int j = 0; j < kWin; ++j) win(i, j) = g1[i] * g1[j];

  double total = 0.0;
  Eigen::Index count = 0;
  for (int c = 0; c < a.channels(); ++c) {
    const auto pa = a.plane(c).template cast<double>().eval();
    const auto pb = b.plane(c).template cast<double>().eval();
    for (Eigen::Index y = 0; y + kWin <= h; ++y) {
      for (Eigen::Index x = 0; x + kWin <= w; ++x) {
        double mu_a = 0, mu_b = 0, saa = 0, sbb = 0, sab = 0;
        for (int i = 0; i < kWin; ++i)
          for (int j = 0; j < kWin; ++j) {
            const double wa = win(i, j);
            const double va = pa(y + i, x + j), vb = pb(y + i, x + j);
            mu_a += wa * va;
            mu_b += wa * vb;
            saa += wa * va * va;
            sbb += wa * vb * vb;
            sab += wa * va * vb;
          }
        const double var_a = saa - mu_a * mu_a;
        const double var_b = sbb - mu_b * mu_b;
        const double cov = sab - mu_a * mu_b;
        const double num = (2 * mu_a * mu_b + kC1) * (2 * cov + kC2);
        const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
        total += num / den;
        ++count;
      }
    }
  }
  return total / static_cast<double>(count);
}

/// Crop a uniform margin off all sides; used for interior metrics.
template <class Scalar>
Frame<Scalar> crop_margin(const Frame<Scalar>& f, Eigen::Index margin) {
  if (f.height() <= 2 * margin || f.width() <= 2 * margin)
    throw std::invalid_argument("crop_margin: margin too large");
  Frame<Scalar> out(f.height() - 2 * margin, f.width() - 2 * margin, f.channels());
  for (int c = 0; c < f.channels(); ++c)
    out.plane(c) = f.plane(c).block(margin, margin, out.height(), out.width());
  return out;
}

}  // namespace rsc
