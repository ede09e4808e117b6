#pragma once

#include <stdexcept>
#include <vector>

#include "rsc/frame.hpp"
#include "rsc/rng.hpp"

namespace rsc {

/// Per-pixel 2D vectors in pixel units. u is horizontal (columns), v vertical (rows).
template <class Scalar>
struct Vec2Field {
  Plane<Scalar> u, v;

  static Vec2Field zero(Eigen::Index h, Eigen::Index w) {
    return {Plane<Scalar>::Zero(h, w), Plane<Scalar>::Zero(h, w)};
  }

  Eigen::Index height() const { return u.rows(); }
  Eigen::Index width() const { return u.cols(); }
};

/// M displacement fields plus M scalar weight maps. The effective displacement
/// of field i at pixel x is weights[i](x) * fields[i](x); weights stay
/// unconstrained reals.
template <class Scalar>
struct FieldBundle {
  std::vector<Vec2Field<Scalar>> fields;
  std::vector<Plane<Scalar>> weights;

  static FieldBundle zero(int m, Eigen::Index h, Eigen::Index w) {
    if (m < 1) throw std::invalid_argument("FieldBundle: M must be >= 1");
    FieldBundle b;
    for (int i = 0; i < m; ++i) {
      b.fields.push_back(Vec2Field<Scalar>::zero(h, w));
      b.weights.push_back(Plane<Scalar>::Ones(h, w));
    }
    return b;
  }

  int count() const { return static_cast<int>(fields.size()); }
  Eigen::Index height() const { return fields.empty() ? 0 : fields[0].height(); }
  Eigen::Index width() const { return fields.empty() ? 0 : fields[0].width(); }

  /// weights[i] applied to fields[i].
  Vec2Field<Scalar> modulated(int i) const {
    return {weights[static_cast<size_t>(i)] * fields[static_cast<size_t>(i)].u,
            weights[static_cast<size_t>(i)] * fields[static_cast<size_t>(i)].v};
  }
};

using FieldBundled = FieldBundle<double>;

/// Gradient of a scalar loss with respect to a bundle; same shapes as the bundle.
template <class Scalar>
FieldBundle<Scalar> zero_like(const FieldBundle<Scalar>& b) {
  FieldBundle<Scalar> g = FieldBundle<Scalar>::zero(b.count(), b.height(), b.width());
  for (auto& w : g.weights) w.setZero();
  return g;
}

/// Bilinear resize of one plane to (oh, ow) with the half-pixel-centers
/// convention; constants map to constants.
template <class Scalar>
Plane<Scalar> resize_plane(const Plane<Scalar>& p, Eigen::Index oh, Eigen::Index ow) {
  Plane<Scalar> out(oh, ow);
  const Scalar sy = static_cast<Scalar>(p.rows()) / static_cast<Scalar>(oh);
  const Scalar sx = static_cast<Scalar>(p.cols()) / static_cast<Scalar>(ow);
  for (Eigen::Index y = 0; y < oh; ++y) {
    const Scalar src_y = (static_cast<Scalar>(y) + Scalar(0.5)) * sy - Scalar(0.5);
    for (Eigen::Index x = 0; x < ow; ++x) {
      const Scalar src_x = (static_cast<Scalar>(x) + Scalar(0.5)) * sx - Scalar(0.5);
      out(y, x) = sample_plane(p, src_x, src_y);
    }
  }
  return out;
}

/// 2x (or explicit-size) upsampling of fields and weights. Displacements are
/// doubled to stay in pixel units of the finer grid; weights are interpolated
/// unscaled.
template <class Scalar>
FieldBundle<Scalar> upsample_bundle(const FieldBundle<Scalar>& b, Eigen::Index oh = -1,
                                    Eigen::Index ow = -1) {
  if (oh < 0) oh = 2 * b.height();
  if (ow < 0) ow = 2 * b.width();
  FieldBundle<Scalar> out;
  for (int i = 0; i < b.count(); ++i) {
    Vec2Field<Scalar> f;
    f.u = resize_plane(b.fields[static_cast<size_t>(i)].u, oh, ow) * Scalar(2);
    f.v = resize_plane(b.fields[static_cast<size_t>(i)].v, oh, ow) * Scalar(2);
    out.fields.push_back(std::move(f));
    out.weights.push_back(resize_plane(b.weights[static_cast<size_t>(i)], oh, ow));
  }
  return out;
}

}  // namespace rsc
