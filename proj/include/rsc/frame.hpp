#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rsc {

/// One image plane, indexed (row, col). Row-major so PFM/PPM I/O is a straight copy.
template <class Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A sampled pixel value; capacity covers every channel count used here.
template <class Scalar>
using Pixel = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 8, 1>;

/// Multi-channel raster, values nominally in [0,1]. Clamping happens only at
/// 8-bit export, never inside math ops.
template <class Scalar>
class Frame {
 public:
  Frame() = default;

  Frame(Eigen::Index height, Eigen::Index width, int channels) {
    if (height <= 0 || width <= 0 || channels < 1 || channels > 8)
      throw std::invalid_argument("Frame: bad dimensions");
    planes_.reserve(static_cast<size_t>(channels));
    for (int c = 0; c < channels; ++c)
      planes_.push_back(Plane<Scalar>::Zero(height, width));
  }

  static Frame constant(Eigen::Index height, Eigen::Index width, int channels,
                        Scalar value) {
    Frame f(height, width, channels);
    for (auto& p : f.planes_) p.setConstant(value);
    return f;
  }

  Eigen::Index height() const { return planes_.empty() ? 0 : planes_[0].rows(); }
  Eigen::Index width() const { return planes_.empty() ? 0 : planes_[0].cols(); }
  int channels() const { return static_cast<int>(planes_.size()); }
  bool empty() const { return planes_.empty(); }

  Plane<Scalar>& plane(int c) { return planes_.at(static_cast<size_t>(c)); }
  const Plane<Scalar>& plane(int c) const { return planes_.at(static_cast<size_t>(c)); }

  Scalar& at(Eigen::Index y, Eigen::Index x, int c) { return plane(c)(y, x); }
  Scalar at(Eigen::Index y, Eigen::Index x, int c) const { return plane(c)(y, x); }

  Pixel<Scalar> pixel(Eigen::Index y, Eigen::Index x) const {
    Pixel<Scalar> v(channels());
    for (int c = 0; c < channels(); ++c) v[c] = planes_[static_cast<size_t>(c)](y, x);
    return v;
  }

  bool same_shape(const Frame& o) const {
    return height() == o.height() && width() == o.width() && channels() == o.channels();
  }

  template <class Other>
  Frame<Other> cast() const {
    Frame<Other> out(height(), width(), channels());
    for (int c = 0; c < channels(); ++c)
      out.plane(c) = plane(c).template cast<Other>();
    return out;
  }

 private:
  std::vector<Plane<Scalar>> planes_;
};

using Framed = Frame<double>;
using Framef = Frame<float>;

/// The four taps and interpolation fractions of a clamped bilinear read.
/// Shared by the samplers and their adjoints so both sides agree bit for bit.
template <class Scalar>
struct BilinearTaps {
  Eigen::Index x0, x1, y0, y1;
  Scalar fx, fy;
  bool clamped_x, clamped_y;  // true if the coordinate hit the border clamp
};

template <class Scalar>
inline BilinearTaps<Scalar> bilinear_taps(Scalar x, Scalar y, Eigen::Index w,
                                          Eigen::Index h) {
  BilinearTaps<Scalar> t;
  t.clamped_x = x < Scalar(0) || x > Scalar(w - 1);
  t.clamped_y = y < Scalar(0) || y > Scalar(h - 1);
  const Scalar xc = x < Scalar(0) ? Scalar(0) : (x > Scalar(w - 1) ? Scalar(w - 1) : x);
  const Scalar yc = y < Scalar(0) ? Scalar(0) : (y > Scalar(h - 1) ? Scalar(h - 1) : y);
  t.x0 = static_cast<Eigen::Index>(std::floor(xc));
  t.y0 = static_cast<Eigen::Index>(std::floor(yc));
  if (t.x0 > w - 2) t.x0 = w > 1 ? w - 2 : 0;
  if (t.y0 > h - 2) t.y0 = h > 1 ? h - 2 : 0;
  t.x1 = w > 1 ? t.x0 + 1 : 0;
  t.y1 = h > 1 ? t.y0 + 1 : 0;
  t.fx = xc - static_cast<Scalar>(t.x0);
  t.fy = yc - static_cast<Scalar>(t.y0);
  return t;
}

/// Bilinear read of one plane at fractional (x=col, y=row), clamp-to-edge.
template <class Scalar>
inline Scalar sample_plane(const Plane<Scalar>& p, Scalar x, Scalar y) {
  const auto t = bilinear_taps(x, y, p.cols(), p.rows());
  return (Scalar(1) - t.fy) * ((Scalar(1) - t.fx) * p(t.y0, t.x0) + t.fx * p(t.y0, t.x1)) +
         t.fy * ((Scalar(1) - t.fx) * p(t.y1, t.x0) + t.fx * p(t.y1, t.x1));
}

/// Value plus partial derivatives with respect to the sample coordinates.
/// Inside the clamp region the value is constant, so the derivative is zero there.
template <class Scalar>
inline Scalar sample_plane_grad(const Plane<Scalar>& p, Scalar x, Scalar y,
                                Scalar& dv_dx, Scalar& dv_dy) {
  const auto t = bilinear_taps(x, y, p.cols(), p.rows());
  const Scalar v00 = p(t.y0, t.x0), v01 = p(t.y0, t.x1);
  const Scalar v10 = p(t.y1, t.x0), v11 = p(t.y1, t.x1);
  dv_dx = t.clamped_x ? Scalar(0)
                      : (Scalar(1) - t.fy) * (v01 - v00) + t.fy * (v11 - v10);
  dv_dy = t.clamped_y ? Scalar(0)
                      : (Scalar(1) - t.fx) * (v10 - v00) + t.fx * (v11 - v01);
  return (Scalar(1) - t.fy) * ((Scalar(1) - t.fx) * v00 + t.fx * v01) +
         t.fy * ((Scalar(1) - t.fx) * v10 + t.fx * v11);
}

/// Bilinear interpolation of the 4 nearest pixels, coordinates outside the
/// frame clamped to the border pixel. x is the column, y the row.
template <class Scalar>
Pixel<Scalar> bilinear_sample(const Frame<Scalar>& frame, Scalar x, Scalar y) {
  if (frame.empty()) throw std::invalid_argument("bilinear_sample: empty frame");
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("bilinear_sample: non-finite coordinates");
  Pixel<Scalar> out(frame.channels());
  for (int c = 0; c < frame.channels(); ++c)
    out[c] = sample_plane(frame.plane(c), x, y);
  return out;
}

/// Image pyramid; level 0 is full resolution, each level a 2x2 box-filtered,
/// 2x downsampled copy of the previous (dimensions rounded down, minimum 8x8).
template <class Scalar>
struct Pyramid {
  std::vector<Frame<Scalar>> levels;
};

template <class Scalar>
Frame<Scalar> box_downsample(const Frame<Scalar>& in) {
  const Eigen::Index h = in.height() / 2, w = in.width() / 2;
  Frame<Scalar> out(h, w, in.channels());
  for (int c = 0; c < in.channels(); ++c) {
    const auto& src = in.plane(c);
    auto& dst = out.plane(c);
    for (Eigen::Index y = 0; y < h; ++y)
      for (Eigen::Index x = 0; x < w; ++x)
        dst(y, x) = (src(2 * y, 2 * x) + src(2 * y, 2 * x + 1) +
                     src(2 * y + 1, 2 * x) + src(2 * y + 1, 2 * x + 1)) /
                    Scalar(4);
  }
  return out;
}

template <class Scalar>
Pyramid<Scalar> build_pyramid(const Frame<Scalar>& frame, int levels) {
  if (levels < 1) throw std::invalid_argument("build_pyramid: levels must be >= 1");
  if (frame.empty()) throw std::invalid_argument("build_pyramid: empty frame");
  Pyramid<Scalar> pyr;
  pyr.levels.push_back(frame);
  for (int l = 1; l < levels; ++l) {
    const auto& prev = pyr.levels.back();
    if (prev.height() / 2 < 8 || prev.width() / 2 < 8)
      throw std::invalid_argument("build_pyramid: too many levels for input size");
    pyr.levels.push_back(box_downsample(prev));
  }
  return pyr;
}

}  // namespace rsc
