// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include "retmot/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace retmot {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::runtime_error("image '" + path + "': " + why);
}

int pnm_token(std::istream& in) {
  // Skips whitespace and '#' comments between header tokens.
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      int value = 0;
      do {
        if (!std::isdigit(c)) return -1;
        value = value * 10 + (c - '0');
        c = in.get();
      } while (c != EOF && !std::isspace(c));
      return value;
    }
  }
  return -1;
}

FrameBuffer read_pgm(const std::string& path, std::ifstream& in, bool binary) {
  const int w = pnm_token(in);
  const int h = pnm_token(in);
  const int maxval = pnm_token(in);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
    fail(path, "unsupported PGM header");
  FrameBuffer img(w, h);
  if (binary) {
    std::vector<unsigned char> row(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
      in.read(reinterpret_cast<char*>(row.data()), w);
      if (!in) fail(path, "truncated pixel data");
      for (int x = 0; x < w; ++x) img.at(x, y) = row[x];
    }
  } else {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int v = pnm_token(in);
        if (v < 0) fail(path, "truncated pixel data");
        img.at(x, y) = v;
      }
  }
  return img;
}

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

FrameBuffer read_png_file(const std::string& path) {
  PngReadCloser ctx;
  ctx.fp = std::fopen(path.c_str(), "rb");
  if (!ctx.fp) fail(path, "cannot open");
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                   nullptr);
  if (!ctx.png) fail(path, "png init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) fail(path, "png init failed");
  if (setjmp(png_jmpbuf(ctx.png))) fail(path, "corrupt PNG");

  png_init_io(ctx.png, ctx.fp);
  png_read_info(ctx.png, ctx.info);

  // Normalize everything to 8-bit RGB or gray.
  png_set_strip_16(ctx.png);
  png_set_strip_alpha(ctx.png);
  if (png_get_color_type(ctx.png, ctx.info) == PNG_COLOR_TYPE_PALETTE)
    png_set_palette_to_rgb(ctx.png);
  if (png_get_color_type(ctx.png, ctx.info) == PNG_COLOR_TYPE_GRAY &&
      png_get_bit_depth(ctx.png, ctx.info) < 8)
    png_set_expand_gray_1_2_4_to_8(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  const int w = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
  const int h = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
  const int channels = png_get_channels(ctx.png, ctx.info);
  if (w <= 0 || h <= 0 || (channels != 1 && channels != 3))
    fail(path, "unsupported PNG layout");

  std::vector<unsigned char> row(static_cast<std::size_t>(w) * channels);
  FrameBuffer img(w, h);
  for (int y = 0; y < h; ++y) {
    png_read_row(ctx.png, row.data(), nullptr);
    if (channels == 1) {
      for (int x = 0; x < w; ++x) img.at(x, y) = row[x];
    } else {
      for (int x = 0; x < w; ++x) {
        const int base = x * 3;
        img.at(x, y) =
            (row[base] + row[base + 1] + row[base + 2]) / 3.0;
      }
    }
  }
  png_read_end(ctx.png, nullptr);
  return img;
}

unsigned char to_byte(double v) {
  const double c = std::min(255.0, std::max(0.0, v));
  return static_cast<unsigned char>(std::lround(c));
}

}  // namespace

FrameBuffer read_gray_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in) fail(path, "empty file");
  if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '2'))
    return read_pgm(path, in, magic[1] == '5');
  in.close();
  static const unsigned char kPngSig[4] = {0x89, 'P', 'N', 'G'};
  if (static_cast<unsigned char>(magic[0]) == kPngSig[0] && magic[1] == 'P')
    return read_png_file(path);
  fail(path, "unknown format (expected PGM or PNG)");
}

void write_pgm(const std::string& path, const FrameBuffer& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(img.width()));
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) row[x] = to_byte(img.at(x, y));
    out.write(reinterpret_cast<const char*>(row.data()), img.width());
  }
  if (!out) fail(path, "write failed");
}

void write_png(const std::string& path, const FrameBuffer& img) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) fail(path, "cannot open for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    fail(path, "png init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    fail(path, "png write failed");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, img.width(), img.height(), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<unsigned char> row(static_cast<std::size_t>(img.width()));
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) row[x] = to_byte(img.at(x, y));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

void write_gray_image(const std::string& path, const FrameBuffer& img) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0)
    write_png(path, img);
  else
    write_pgm(path, img);
}

FrameBuffer resize_area(const FrameBuffer& img, int new_w, int new_h) {
  if (new_w <= 0 || new_h <= 0)
    throw std::invalid_argument("resize_area: bad target size");
  if (new_w == img.width() && new_h == img.height()) return img;
  FrameBuffer out(new_w, new_h);
  const double sx = static_cast<double>(img.width()) / new_w;
  const double sy = static_cast<double>(img.height()) / new_h;
  for (int y = 0; y < new_h; ++y) {
    const double y0 = y * sy;
    const double y1 = (y + 1) * sy;
    for (int x = 0; x < new_w; ++x) {
      const double x0 = x * sx;
      const double x1 = (x + 1) * sx;
      double acc = 0.0;
      for (int iy = static_cast<int>(y0); iy < y1 && iy < img.height(); ++iy) {
        const double hy = std::min(y1, iy + 1.0) - std::max(y0, double(iy));
        if (hy <= 0.0) continue;
        for (int ix = static_cast<int>(x0); ix < x1 && ix < img.width();
             ++ix) {
          const double wx = std::min(x1, ix + 1.0) - std::max(x0, double(ix));
          if (wx <= 0.0) continue;
          acc += img.at(ix, iy) * wx * hy;
        }
      }
      out.at(x, y) = acc / (sx * sy);
    }
  }
  return out;
}

std::vector<std::string> list_frame_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("frame directory '" + dir + "' does not exist");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".png") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("frame directory '" + dir +
                             "' contains no .pgm/.png frames");
  return files;
}

DirectoryFrameSource::DirectoryFrameSource(const std::string& dir,
                                           int resize_w, int resize_h)
    : files_(list_frame_files(dir)), resize_w_(resize_w), resize_h_(resize_h) {}

std::optional<FrameBuffer> DirectoryFrameSource::next() {
  if (index_ >= files_.size()) return std::nullopt;
  FrameBuffer img = read_gray_image(files_[index_]);
  ++index_;
  if (resize_w_ > 0 && resize_h_ > 0)
    img = resize_area(img, resize_w_, resize_h_);
  if (ref_w_ == 0) {
    ref_w_ = img.width();
    ref_h_ = img.height();
  } else if (img.width() != ref_w_ || img.height() != ref_h_) {
    throw std::runtime_error("frame '" + files_[index_ - 1] +
                             "' has mismatched dimensions");
  }
  return img;
}

}  // namespace retmot
