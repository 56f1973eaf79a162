// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RETMOT_IMAGE_IO_HPP_
#define RETMOT_IMAGE_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "retmot/frame.hpp"

namespace retmot {

/// Reads an 8-bit PGM (P2/P5) or PNG into a 0..255 grayscale field. Color
/// PNGs collapse to the channel average. Throws std::runtime_error naming
/// the file on any failure.
FrameBuffer read_gray_image(const std::string& path);

/// 8-bit grayscale writers; values are clamped to [0, 255] and rounded.
void write_pgm(const std::string& path, const FrameBuffer& img);
void write_png(const std::string& path, const FrameBuffer& img);

/// Writer keyed on the file extension (.pgm / .png).
void write_gray_image(const std::string& path, const FrameBuffer& img);

/// Area-averaging resample to the requested size.
FrameBuffer resize_area(const FrameBuffer& img, int new_w, int new_h);

/// Lexicographically sorted frame files (.pgm/.png) in a directory.
std::vector<std::string> list_frame_files(const std::string& dir);

/// Streaming source of frames, all with identical dimensions.
class FrameSource {
public:
  virtual ~FrameSource() = default;
  virtual void reset() = 0;
  virtual std::optional<FrameBuffer> next() = 0;
  virtual int count() const = 0;  // total frames, known up front
};

/// Frames from a directory of image files, optionally resized.
class DirectoryFrameSource : public FrameSource {
public:
  explicit DirectoryFrameSource(const std::string& dir, int resize_w = 0,
                                int resize_h = 0);
  void reset() override { index_ = 0; }
  std::optional<FrameBuffer> next() override;
  int count() const override { return static_cast<int>(files_.size()); }

private:
  std::vector<std::string> files_;
  std::size_t index_ = 0;
  int resize_w_;
  int resize_h_;
  int ref_w_ = 0;
  int ref_h_ = 0;
};

}  // namespace retmot

#endif  // RETMOT_IMAGE_IO_HPP_
