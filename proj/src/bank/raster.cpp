// Copyright 2026 The Scrapbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bank/raster.hpp"

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include <jpeglib.h>
#include <png.h>

namespace scrapbook {

namespace fs = std::filesystem;

Image Image::filled(int w, int h, Rgb color) {
  Image img(w, h, 3);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = color.r;
    img.pixels[i + 1] = color.g;
    img.pixels[i + 2] = color.b;
  }
  return img;
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

bool masks_overlap(const Mask& a, const Rect& a_box, const Mask& b, const Rect& b_box) {
  const Rect both = intersect(a_box, b_box);
  if (both.empty()) return false;
  for (int y = both.y; y < both.bottom(); ++y) {
    for (int x = both.x; x < both.right(); ++x) {
      if (a.get(x - a_box.x, y - a_box.y) && b.get(x - b_box.x, y - b_box.y)) return true;
    }
  }
  return false;
}

void composite_over(Image& canvas, const Image& cutout, int x0, int y0) {
  if (canvas.channels != 3 || cutout.channels != 4) {
    throw internal_error("composite_over expects an RGB canvas and an RGBA cutout");
  }
  for (int y = 0; y < cutout.height; ++y) {
    const int cy = y0 + y;
    if (cy < 0 || cy >= canvas.height) continue;
    for (int x = 0; x < cutout.width; ++x) {
      const int cx = x0 + x;
      if (cx < 0 || cx >= canvas.width) continue;
      const std::uint8_t* src = cutout.at(x, y);
      const unsigned alpha = src[3];
      if (alpha == 0) continue;
      std::uint8_t* dst = canvas.at(cx, cy);
      for (int c = 0; c < 3; ++c) {
        dst[c] = static_cast<std::uint8_t>((src[c] * alpha + dst[c] * (255 - alpha) + 127) / 255);
      }
    }
  }
}

namespace {

enum class FileKind { png, jpeg };

FileKind sniff(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open image " + path.string());
  unsigned char magic[8] = {};
  in.read(reinterpret_cast<char*>(magic), sizeof magic);
  if (in.gcount() >= 8 && png_sig_cmp(magic, 0, 8) == 0) return FileKind::png;
  if (in.gcount() >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF) return FileKind::jpeg;
  throw io_error("unsupported image format: " + path.string());
}

struct JpegError {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegError*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw io_error("cannot open " + path.string());
  return f;
}

Image read_jpeg(const fs::path& path, bool header_only) {
  FilePtr file = open_file(path, "rb");
  jpeg_decompress_struct cinfo;
  JpegError err;
  Image img;
  std::string failure;
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw io_error("corrupt JPEG " + path.string() + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  if (header_only) {
    img.width = static_cast<int>(cinfo.image_width);
    img.height = static_cast<int>(cinfo.image_height);
    jpeg_destroy_decompress(&cinfo);
    return img;
  }
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  img = Image(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height), 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.at(0, static_cast<int>(cinfo.output_scanline));
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

Image read_png(const fs::path& path, bool header_only, bool gray) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw io_error("corrupt PNG " + path.string() + ": " + image.message);
  }
  if (header_only) {
    Image img;
    img.width = static_cast<int>(image.width);
    img.height = static_cast<int>(image.height);
    png_image_free(&image);
    return img;
  }
  int channels = 3;
  if (gray) {
    image.format = PNG_FORMAT_GRAY;
    channels = 1;
  } else if (image.format & PNG_FORMAT_FLAG_ALPHA) {
    image.format = PNG_FORMAT_RGBA;
    channels = 4;
  } else {
    image.format = PNG_FORMAT_RGB;
  }
  Image img(static_cast<int>(image.width), static_cast<int>(image.height), channels);
  if (!png_image_finish_read(&image, nullptr, img.pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw io_error("corrupt PNG " + path.string() + ": " + image.message);
  }
  return img;
}

}  // namespace

Image read_image(const fs::path& path) {
  return sniff(path) == FileKind::png ? read_png(path, false, false) : read_jpeg(path, false);
}

std::pair<int, int> read_image_size(const fs::path& path) {
  const Image header = sniff(path) == FileKind::png ? read_png(path, true, false) : read_jpeg(path, true);
  return {header.width, header.height};
}

void write_png(const fs::path& path, const Image& img) {
  if (img.channels != 3 && img.channels != 4) throw internal_error("write_png expects RGB or RGBA");
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = img.channels == 4 ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels.data(), 0, nullptr)) {
    throw io_error("cannot write PNG " + path.string() + ": " + image.message);
  }
}

void write_mask_png(const fs::path& path, const Mask& mask) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const std::size_t stride = (static_cast<std::size_t>(mask.width) + 7) / 8;
  std::vector<png_byte> packed(stride * mask.height, 0);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.get(x, y)) packed[y * stride + x / 8] |= static_cast<png_byte>(0x80 >> (x % 8));
    }
  }
  std::vector<png_bytep> rows(mask.height);
  for (int y = 0; y < mask.height; ++y) rows[y] = packed.data() + y * stride;

  FilePtr file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw io_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw io_error("cannot write mask " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(mask.width), static_cast<png_uint_32>(mask.height), 1,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

Mask read_mask_png(const fs::path& path) {
  const Image gray = read_png(path, false, true);
  Mask mask(gray.width, gray.height);
  for (std::size_t i = 0; i < gray.pixels.size(); ++i) mask.bits[i] = gray.pixels[i] >= 128 ? 1 : 0;
  return mask;
}

}  // namespace scrapbook
