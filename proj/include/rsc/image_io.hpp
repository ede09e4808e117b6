#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsc/frame.hpp"

namespace rsc {

// PFM: "Pf" = 1 channel, "PF" = 3 channels, "PF<k>" = k channels (local
// extension for flow/bundle rasters). Rows stored bottom-to-top, channels
// interleaved, float32, negative scale = little endian. Float data survives a
// write/read cycle bit-exactly.

inline void write_pfm(const Framef& frame, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_pfm: cannot open " + path.string());
  const int c = frame.channels();
  if (c == 1)
    os << "Pf\n";
  else if (c == 3)
    os << "PF\n";
  else
    os << "PF" << c << "\n";
  os << frame.width() << " " << frame.height() << "\n-1.0\n";
  const Eigen::Index h = frame.height(), w = frame.width();
  std::vector<float> row(static_cast<size_t>(w) * c);
  for (Eigen::Index y = h - 1; y >= 0; --y) {
    for (Eigen::Index x = 0; x < w; ++x)
      for (int k = 0; k < c; ++k) row[static_cast<size_t>(x) * c + k] = frame.at(y, x, k);
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!os) throw std::runtime_error("write_pfm: write failed for " + path.string());
}

namespace detail {

inline std::string next_pfm_token(std::istream& is) {
  std::string tok;
  is >> tok;
  return tok;
}

}  // namespace detail

inline Framef read_pfm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_pfm: cannot open " + path.string());
  std::string magic = detail::next_pfm_token(is);
  int channels = 0;
  if (magic == "Pf")
    channels = 1;
  else if (magic == "PF")
    channels = 3;
  else if (magic.size() > 2 && magic.compare(0, 2, "PF") == 0)
    channels = std::stoi(magic.substr(2));
  else
    throw std::runtime_error("read_pfm: bad magic in " + path.string());
  const int w = std::stoi(detail::next_pfm_token(is));
  const int h = std::stoi(detail::next_pfm_token(is));
  const double scale = std::stod(detail::next_pfm_token(is));
  if (scale >= 0) throw std::runtime_error("read_pfm: big-endian PFM unsupported");
  is.get();  // single whitespace after the scale line
  Framef frame(h, w, channels);
  std::vector<float> row(static_cast<size_t>(w) * channels);
  for (Eigen::Index y = h - 1; y >= 0; --y) {
    is.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!is) throw std::runtime_error("read_pfm: truncated file " + path.string());
    for (Eigen::Index x = 0; x < w; ++x)
      for (int k = 0; k < channels; ++k)
        frame.at(y, x, k) = row[static_cast<size_t>(x) * channels + k];
  }
  return frame;
}

/// Binary PPM (P6, maxval 255); values scaled by 255 and clamped. Single-channel
/// frames are replicated to gray RGB.
template <class Scalar>
void write_ppm(const Frame<Scalar>& frame, const std::filesystem::path& path) {
  if (frame.channels() != 1 && frame.channels() != 3)
    throw std::invalid_argument("write_ppm: needs 1 or 3 channels");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_ppm: cannot open " + path.string());
  const Eigen::Index h = frame.height(), w = frame.width();
  os << "P6\n" << w << " " << h << "\n255\n";
  std::vector<uint8_t> row(static_cast<size_t>(w) * 3);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x)
      for (int k = 0; k < 3; ++k) {
        const Scalar v = frame.at(y, x, frame.channels() == 3 ? k : 0);
        const Scalar scaled = v * Scalar(255);
        const Scalar clamped = std::clamp(scaled, Scalar(0), Scalar(255));
        row[static_cast<size_t>(x) * 3 + k] =
            static_cast<uint8_t>(std::lround(static_cast<double>(clamped)));
      }
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row.size()));
  }
  if (!os) throw std::runtime_error("write_ppm: write failed for " + path.string());
}

inline Framef read_ppm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_ppm: cannot open " + path.string());
  std::string magic = detail::next_pfm_token(is);
  if (magic != "P6") throw std::runtime_error("read_ppm: bad magic in " + path.string());
  const int w = std::stoi(detail::next_pfm_token(is));
  const int h = std::stoi(detail::next_pfm_token(is));
  const int maxval = std::stoi(detail::next_pfm_token(is));
  if (maxval != 255) throw std::runtime_error("read_ppm: only maxval 255 supported");
  is.get();
  Framef frame(h, w, 3);
  std::vector<uint8_t> row(static_cast<size_t>(w) * 3);
  for (Eigen::Index y = 0; y < h; ++y) {
    is.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!is) throw std::runtime_error("read_ppm: truncated file " + path.string());
    for (Eigen::Index x = 0; x < w; ++x)
      for (int k = 0; k < 3; ++k)
        frame.at(y, x, k) = static_cast<float>(row[static_cast<size_t>(x) * 3 + k]) / 255.0f;
  }
  return frame;
}

/// Round a double frame through float32, i.e. exactly what a PFM write/read
/// cycle would produce. Metrics are always taken on these values.
inline Framed quantize_f32(const Framed& in) {
  Framed out(in.height(), in.width(), in.channels());
  for (int c = 0; c < in.channels(); ++c)
    out.plane(c) = in.plane(c).template cast<float>().template cast<double>();
  return out;
}

}  // namespace rsc
