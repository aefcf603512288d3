#ifndef VISTAIN_COLOR_HPP
#define VISTAIN_COLOR_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vistain/image.hpp"

namespace vistain {

// Colour-space conversions.
//
// Optical density follows Beer-Lambert absorbance with a decadic (base-10)
// logarithm: od = -log10((v + eps) / i0), where i0 is the background
// (unattenuated) intensity and eps guards saturated black pixels. eps may be
// zero when no sample is zero; the result must stay finite.
//
// RGB <-> L*a*b* uses sRGB primaries (IEC 61966-2-1) with the D65 reference
// white Xn = 0.95047, Yn = 1.0, Zn = 1.08883 and the CIE 1976 L*a*b*
// functions.

template <typename Scalar>
OdImageT<Scalar> rgb_to_od(const RgbImageT<Scalar>& img, Scalar i0 = Scalar(1),
                           Scalar eps = Scalar(1.0 / 255.0)) {
  if (!(i0 > Scalar(0))) throw InvalidInputError("rgb_to_od: i0 must be positive");
  if (eps < Scalar(0)) throw InvalidInputError("rgb_to_od: eps must be nonnegative");
  if (!img.pixels.allFinite()) throw InvalidInputError("rgb_to_od: non-finite sample");

  OdImageT<Scalar> od;
  od.width = img.width;
  od.height = img.height;
  od.values = (-((img.pixels.array() + eps) / i0).log10()).cwiseMax(Scalar(0));
  if (!od.values.allFinite())
    throw InvalidInputError("rgb_to_od: non-finite optical density (zero sample with eps = 0?)");
  return od;
}

template <typename Scalar>
RgbImageT<Scalar> od_to_rgb(const OdImageT<Scalar>& od, Scalar i0 = Scalar(1)) {
  if (od.channels() != 3)
    throw DimensionError("od_to_rgb: expected 3 channels, got " + std::to_string(od.channels()));
  if (!od.values.allFinite() || (od.values.array() < Scalar(0)).any())
    throw InvalidInputError("od_to_rgb: optical densities must be finite and nonnegative");

  RgbImageT<Scalar> img;
  img.width = od.width;
  img.height = od.height;
  // 10^(-od) = exp(-od ln 10)
  img.pixels = (i0 * (od.values.array() * Scalar(-std::numbers::ln10)).exp())
                   .cwiseMin(Scalar(1))
                   .cwiseMax(Scalar(0))
                   .matrix();
  return img;
}

namespace detail {

template <typename Scalar>
Scalar srgb_to_linear(Scalar v) {
  return v <= Scalar(0.04045) ? v / Scalar(12.92)
                              : std::pow((v + Scalar(0.055)) / Scalar(1.055), Scalar(2.4));
}

template <typename Scalar>
Scalar linear_to_srgb(Scalar v) {
  return v <= Scalar(0.0031308) ? v * Scalar(12.92)
                                : Scalar(1.055) * std::pow(v, Scalar(1) / Scalar(2.4)) - Scalar(0.055);
}

template <typename Scalar>
Scalar lab_f(Scalar t) {
  const Scalar cube = Scalar(216.0 / 24389.0);  // (6/29)^3
  const Scalar slope = Scalar(841.0 / 108.0);   // 1 / (3 (6/29)^2)
  // Cube root above the breakpoint, linear continuation below.
  return t > cube ? std::cbrt(t) : slope * t + Scalar(4.0 / 29.0);
}

template <typename Scalar>
Scalar lab_f_inv(Scalar f) {
  const Scalar delta = Scalar(6.0 / 29.0);
  return f > delta ? f * f * f : Scalar(3) * delta * delta * (f - Scalar(4.0 / 29.0));
}

inline constexpr double kXn = 0.95047;
inline constexpr double kYn = 1.0;
inline constexpr double kZn = 1.08883;

}  // namespace detail

template <typename Scalar>
LabImageT<Scalar> rgb_to_lab(const RgbImageT<Scalar>& img) {
  img.validate("rgb_to_lab");

  LabImageT<Scalar> lab;
  lab.width = img.width;
  lab.height = img.height;
  lab.values.resize(img.pixels.rows(), 3);

  for (Eigen::Index p = 0; p < img.pixels.rows(); ++p) {
    const Scalar r = detail::srgb_to_linear(img.pixels(p, 0));
    const Scalar g = detail::srgb_to_linear(img.pixels(p, 1));
    const Scalar b = detail::srgb_to_linear(img.pixels(p, 2));
    const Scalar x = Scalar(0.4124564) * r + Scalar(0.3575761) * g + Scalar(0.1804375) * b;
    const Scalar y = Scalar(0.2126729) * r + Scalar(0.7151522) * g + Scalar(0.0721750) * b;
    const Scalar z = Scalar(0.0193339) * r + Scalar(0.1191920) * g + Scalar(0.9503041) * b;
    const Scalar fx = detail::lab_f(x / Scalar(detail::kXn));
    const Scalar fy = detail::lab_f(y / Scalar(detail::kYn));
    const Scalar fz = detail::lab_f(z / Scalar(detail::kZn));
    lab.values(p, 0) = Scalar(116) * fy - Scalar(16);
    lab.values(p, 1) = Scalar(500) * (fx - fy);
    lab.values(p, 2) = Scalar(200) * (fy - fz);
  }
  return lab;
}

// Inverse of rgb_to_lab; out-of-gamut values clamp to [0, 1].
template <typename Scalar>
RgbImageT<Scalar> lab_to_rgb(const LabImageT<Scalar>& lab) {
  RgbImageT<Scalar> img;
  img.width = lab.width;
  img.height = lab.height;
  img.pixels.resize(lab.values.rows(), 3);

  for (Eigen::Index p = 0; p < lab.values.rows(); ++p) {
    const Scalar fy = (lab.values(p, 0) + Scalar(16)) / Scalar(116);
    const Scalar fx = fy + lab.values(p, 1) / Scalar(500);
    const Scalar fz = fy - lab.values(p, 2) / Scalar(200);
    const Scalar x = Scalar(detail::kXn) * detail::lab_f_inv(fx);
    const Scalar y = Scalar(detail::kYn) * detail::lab_f_inv(fy);
    const Scalar z = Scalar(detail::kZn) * detail::lab_f_inv(fz);
    const Scalar r = Scalar(3.2404542) * x - Scalar(1.5371385) * y - Scalar(0.4985314) * z;
    const Scalar g = Scalar(-0.9692660) * x + Scalar(1.8760108) * y + Scalar(0.0415560) * z;
    const Scalar b = Scalar(0.0556434) * x - Scalar(0.2040259) * y + Scalar(1.0572252) * z;
    img.pixels(p, 0) = std::clamp(detail::linear_to_srgb(r), Scalar(0), Scalar(1));
    img.pixels(p, 1) = std::clamp(detail::linear_to_srgb(g), Scalar(0), Scalar(1));
    img.pixels(p, 2) = std::clamp(detail::linear_to_srgb(b), Scalar(0), Scalar(1));
  }
  return img;
}

}  // namespace vistain

#endif
