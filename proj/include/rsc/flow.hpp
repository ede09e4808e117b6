#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "rsc/bundle.hpp"
#include "rsc/frame.hpp"

namespace rsc {

template <class Scalar>
using Flow = Vec2Field<Scalar>;

/// Dense cost volume between a center and a neighbor feature map.
/// Entry (dx, dy, x, y) is the channel-mean dot product of center(x, y) with
/// neighbor(x+dx, y+dy), neighbor coordinates clamped to the frame.
template <class Scalar>
struct CorrelationVolume {
  int radius = 0;
  std::vector<Plane<Scalar>> slices;  // (2r+1)^2 planes, index (dy+r)*(2r+1)+(dx+r)

  int side() const { return 2 * radius + 1; }
  const Plane<Scalar>& slice(int dx, int dy) const {
    return slices[static_cast<size_t>((dy + radius) * side() + (dx + radius))];
  }
};

template <class Scalar>
CorrelationVolume<Scalar> correlation_volume(const Frame<Scalar>& center,
                                             const Frame<Scalar>& neighbor, int radius) {
  if (!center.same_shape(neighbor))
    throw std::invalid_argument("correlation_volume: shape mismatch");
  if (radius < 1) throw std::invalid_argument("correlation_volume: radius must be >= 1");
  const Eigen::Index h = center.height(), w = center.width();
  const int c = center.channels();
  CorrelationVolume<Scalar> vol;
  vol.radius = radius;
  vol.slices.reserve(static_cast<size_t>(vol.side()) * vol.side());
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      Plane<Scalar> s(h, w);
      for (Eigen::Index y = 0; y < h; ++y) {
        const Eigen::Index yn = std::clamp<Eigen::Index>(y + dy, 0, h - 1);
        for (Eigen::Index x = 0; x < w; ++x) {
          const Eigen::Index xn = std::clamp<Eigen::Index>(x + dx, 0, w - 1);
          Scalar dot = 0;
          for (int k = 0; k < c; ++k) dot += center.at(y, x, k) * neighbor.at(yn, xn, k);
          s(y, x) = dot / static_cast<Scalar>(c);
        }
      }
      vol.slices.push_back(std::move(s));
    }
  }
  return vol;
}

namespace detail {

// Grid node coordinates for block matching: stride apart, last node pinned to
// the frame edge so interpolation covers the full raster.
inline std::vector<Eigen::Index> match_grid(Eigen::Index n, Eigen::Index stride) {
  std::vector<Eigen::Index> g;
  for (Eigen::Index p = 0; p < n; p += stride) g.push_back(p);
  if (g.back() != n - 1) g.push_back(n - 1);
  return g;
}

// Piecewise-linear interpolation of grid samples back to the full raster.
template <class Scalar>
Plane<Scalar> interp_grid(const std::vector<Eigen::Index>& xs,
                          const std::vector<Eigen::Index>& ys,
                          const Plane<Scalar>& values, Eigen::Index h, Eigen::Index w) {
  Plane<Scalar> out(h, w);
  std::vector<Eigen::Index> row_cell(static_cast<size_t>(h)), col_cell(static_cast<size_t>(w));
  for (Eigen::Index y = 0, j = 0; y < h; ++y) {
    while (j + 2 < static_cast<Eigen::Index>(ys.size()) && ys[static_cast<size_t>(j + 1)] <= y) ++j;
    row_cell[static_cast<size_t>(y)] = j;
  }
  for (Eigen::Index x = 0, i = 0; x < w; ++x) {
    while (i + 2 < static_cast<Eigen::Index>(xs.size()) && xs[static_cast<size_t>(i + 1)] <= x) ++i;
    col_cell[static_cast<size_t>(x)] = i;
  }
  for (Eigen::Index y = 0; y < h; ++y) {
    const Eigen::Index j = row_cell[static_cast<size_t>(y)];
    const Eigen::Index y0 = ys[static_cast<size_t>(j)], y1 = ys[static_cast<size_t>(j + 1)];
    const Scalar ty = y1 == y0 ? Scalar(0)
                               : static_cast<Scalar>(y - y0) / static_cast<Scalar>(y1 - y0);
    for (Eigen::Index x = 0; x < w; ++x) {
      const Eigen::Index i = col_cell[static_cast<size_t>(x)];
      const Eigen::Index x0 = xs[static_cast<size_t>(i)], x1 = xs[static_cast<size_t>(i + 1)];
      const Scalar tx = x1 == x0 ? Scalar(0)
                                 : static_cast<Scalar>(x - x0) / static_cast<Scalar>(x1 - x0);
      out(y, x) = (Scalar(1) - ty) * ((Scalar(1) - tx) * values(j, i) + tx * values(j, i + 1)) +
                  ty * ((Scalar(1) - tx) * values(j + 1, i) + tx * values(j + 1, i + 1));
    }
  }
  return out;
}

}  // namespace detail

/// Integer block matching on a coarse grid, bilinearly upsampled to a dense flow.
/// Per grid point the displacement in [-r, r]^2 minimizing the sum of absolute
/// differences over a (2*patch+1)^2 window wins; ties break toward smaller |d|,
/// then lexicographic (dy, dx). Patch pixels outside the frame are clamped.
template <class Scalar>
Flow<Scalar> block_match_flow(const Frame<Scalar>& a, const Frame<Scalar>& b, int radius,
                              int patch, Eigen::Index stride = 4) {
  if (!a.same_shape(b)) throw std::invalid_argument("block_match_flow: shape mismatch");
  if (patch < 1) throw std::invalid_argument("block_match_flow: patch must be >= 1");
  if (radius < 1) throw std::invalid_argument("block_match_flow: radius must be >= 1");
  const Eigen::Index h = a.height(), w = a.width();
  const auto xs = detail::match_grid(w, stride);
  const auto ys = detail::match_grid(h, stride);
  if (xs.size() < 2 || ys.size() < 2)
    throw std::invalid_argument("block_match_flow: frame too small for grid");

  Plane<Scalar> gu(static_cast<Eigen::Index>(ys.size()), static_cast<Eigen::Index>(xs.size()));
  Plane<Scalar> gv(gu.rows(), gu.cols());
  for (size_t j = 0; j < ys.size(); ++j) {
    for (size_t i = 0; i < xs.size(); ++i) {
      const Eigen::Index gy = ys[j], gx = xs[i];
      Scalar best = std::numeric_limits<Scalar>::infinity();
      int best_dx = 0, best_dy = 0;
      long best_norm = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          Scalar sad = 0;
          for (Eigen::Index py = -patch; py <= patch; ++py) {
            const Eigen::Index ya = std::clamp<Eigen::Index>(gy + py, 0, h - 1);
            const Eigen::Index yb = std::clamp<Eigen::Index>(gy + py + dy, 0, h - 1);
            for (Eigen::Index px = -patch; px <= patch; ++px) {
              const Eigen::Index xa = std::clamp<Eigen::Index>(gx + px, 0, w - 1);
              const Eigen::Index xb = std::clamp<Eigen::Index>(gx + px + dx, 0, w - 1);
              for (int k = 0; k < a.channels(); ++k)
                sad += std::abs(a.at(ya, xa, k) - b.at(yb, xb, k));
            }
          }
          const long norm = static_cast<long>(dx) * dx + static_cast<long>(dy) * dy;
          const bool better =
              sad < best ||
              (sad == best && (norm < best_norm ||
                               (norm == best_norm &&
                                (dy < best_dy || (dy == best_dy && dx < best_dx)))));
          if (better) {
            best = sad;
            best_dx = dx;
            best_dy = dy;
            best_norm = norm;
          }
        }
      }
      gu(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = static_cast<Scalar>(best_dx);
      gv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = static_cast<Scalar>(best_dy);
    }
  }
  Flow<Scalar> flow;
  flow.u = detail::interp_grid(xs, ys, gu, h, w);
  flow.v = detail::interp_grid(xs, ys, gv, h, w);
  return flow;
}

}  // namespace rsc
