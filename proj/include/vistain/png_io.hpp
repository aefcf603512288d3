#ifndef VISTAIN_PNG_IO_HPP
#define VISTAIN_PNG_IO_HPP

#include <string>

#include "vistain/image.hpp"

namespace vistain {

// 8-bit RGB PNG only. Other colour types (palette, grayscale, alpha) and bit
// depths are rejected with an IoError naming the file; callers convert
// externally when needed. Samples map as v / 255 on read and round(v * 255)
// on write.
RgbImage read_png(const std::string& path);
void write_png(const std::string& path, const RgbImage& img);

}  // namespace vistain

#endif
