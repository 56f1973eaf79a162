// Copyright 2026 The retmot Authors
// Licensed under the Apache License, Version 2.0
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "retmot/frame.hpp"
#include "retmot/kernels.hpp"
#include "retmot/ops.hpp"

using namespace retmot;

namespace {

std::vector<double> random_vec(std::mt19937& rng, std::size_t n,
                               double lo = -10.0, double hi = 10.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = uni(rng);
  return v;
}

FrameBuffer random_field(std::mt19937& rng, int w, int h, double lo = -10.0,
                         double hi = 10.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  FrameBuffer f(w, h);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = uni(rng);
  return f;
}

// Independent quadruple-loop correlation with replicate-edge padding.
FrameBuffer conv_reference(const FrameBuffer& field, const Kernel2D& k) {
  FrameBuffer out(field.width(), field.height());
  const int r = k.radius();
  for (int y = 0; y < field.height(); ++y)
    for (int x = 0; x < field.width(); ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          int sx = std::clamp(x + dx, 0, field.width() - 1);
          int sy = std::clamp(y + dy, 0, field.height() - 1);
          acc += field.at(sx, sy) * k.at(dx, dy);
        }
      out.at(x, y) = acc;
    }
  return out;
}

struct BackendRestore {
  ops::Backend saved = ops::active_backend();
  ~BackendRestore() { ops::set_backend(saved); }
};

}  // namespace

TEST_SUITE("ops") {

TEST_CASE("every available backend matches the scalar kernels bit for bit") {
  BackendRestore restore;
  std::mt19937 rng(2024);

  // Ragged lengths exercise the vector tails.
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 129u}) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    const auto c = random_vec(rng, n);
    const auto d = random_vec(rng, n);

    struct Result {
      std::vector<double> relu, on, off, mul, sub, sadd, opp, mx;
    };
    auto run_all = [&](ops::Backend backend) {
      REQUIRE(ops::set_backend(backend));
      const auto& t = ops::table();
      Result r;
      r.relu.resize(n);
      r.on.resize(n);
      r.off.resize(n);
      r.mul.resize(n);
      r.sub.resize(n);
      r.sadd.resize(n);
      r.opp.resize(n);
      r.mx.resize(n);
      t.relu(a.data(), r.relu.data(), n);
      t.halfwave_split(a.data(), r.on.data(), r.off.data(), n);
      t.mul(a.data(), b.data(), r.mul.data(), n);
      t.sub(a.data(), b.data(), r.sub.data(), n);
      t.scale_add(0.37, a.data(), -1.21, b.data(), r.sadd.data(), n);
      t.opponent(a.data(), b.data(), c.data(), d.data(), r.opp.data(), n);
      t.max2(a.data(), b.data(), r.mx.data(), n);
      return r;
    };

    const Result ref = run_all(ops::Backend::scalar);
    for (ops::Backend backend : ops::available_backends()) {
      if (backend == ops::Backend::scalar) continue;
      const Result got = run_all(backend);
      CHECK(got.relu == ref.relu);
      CHECK(got.on == ref.on);
      CHECK(got.off == ref.off);
      CHECK(got.mul == ref.mul);
      CHECK(got.sub == ref.sub);
      CHECK(got.sadd == ref.sadd);
      CHECK(got.opp == ref.opp);
      CHECK(got.mx == ref.mx);
    }
  }
}

TEST_CASE("convolution is bit-identical across backends") {
  BackendRestore restore;
  std::mt19937 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const int w = 5 + trial * 7;
    const int h = 6 + trial * 3;
    const FrameBuffer field = random_field(rng, w, h);
    Kernel2D k(5);
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx)
        k.at(dx, dy) = random_vec(rng, 1)[0];

    REQUIRE(ops::set_backend(ops::Backend::scalar));
    const FrameBuffer ref = convolve2d(field, k);
    for (ops::Backend backend : ops::available_backends()) {
      if (backend == ops::Backend::scalar) continue;
      REQUIRE(ops::set_backend(backend));
      const FrameBuffer got = convolve2d(field, k);
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == ref[i]);
    }
  }
}

TEST_CASE("convolution matches the quadruple-loop reference") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const FrameBuffer field = random_field(rng, 16, 16);
    Kernel2D k(5);
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx)
        k.at(dx, dy) = random_vec(rng, 1)[0];
    const FrameBuffer got = convolve2d(field, k);
    const FrameBuffer want = conv_reference(field, k);
    double scale = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i)
      scale = std::max(scale, std::abs(want[i]));
    for (std::size_t i = 0; i < want.size(); ++i)
      CHECK(std::abs(got[i] - want[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("identity kernel reproduces the input") {
  std::mt19937 rng(7);
  const FrameBuffer field = random_field(rng, 12, 9);
  Kernel2D ident(1);
  ident.at(0, 0) = 1.0;
  const FrameBuffer out = convolve2d(field, ident);
  for (std::size_t i = 0; i < field.size(); ++i) CHECK(out[i] == field[i]);
}

TEST_CASE("impulse field reproduces the kernel") {
  FrameBuffer field(15, 15, 0.0);
  field.at(7, 7) = 1.0;
  Kernel2D k(5);
  std::mt19937 rng(3);
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx) k.at(dx, dy) = random_vec(rng, 1)[0];
  const FrameBuffer out = convolve2d(field, k);
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx)
      // Correlation: the response at an offset reads the tap at the same
      // offset mirrored through the impulse.
      CHECK(out.at(7 + dx, 7 + dy) == doctest::Approx(k.at(-dx, -dy)).epsilon(1e-12));
}

TEST_CASE("convolution is linear and shift-equivariant away from borders") {
  std::mt19937 rng(11);
  const FrameBuffer a = random_field(rng, 20, 20);
  const FrameBuffer b = random_field(rng, 20, 20);
  Kernel2D k(3);
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) k.at(dx, dy) = random_vec(rng, 1)[0];

  FrameBuffer mix(20, 20);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.0 * a[i] - 3.0 * b[i];
  const FrameBuffer ca = convolve2d(a, k);
  const FrameBuffer cb = convolve2d(b, k);
  const FrameBuffer cmix = convolve2d(mix, k);
  for (std::size_t i = 0; i < mix.size(); ++i)
    CHECK(cmix[i] == doctest::Approx(2.0 * ca[i] - 3.0 * cb[i]).epsilon(1e-10));

  FrameBuffer shifted(20, 20, 0.0);
  for (int y = 0; y < 20; ++y)
    for (int x = 1; x < 20; ++x) shifted.at(x, y) = a.at(x - 1, y);
  const FrameBuffer cshift = convolve2d(shifted, k);
  for (int y = 2; y < 18; ++y)
    for (int x = 3; x < 18; ++x)
      CHECK(cshift.at(x, y) == doctest::Approx(ca.at(x - 1, y)).epsilon(1e-10));
}

TEST_CASE("oversized kernels are rejected") {
  FrameBuffer small(3, 3, 1.0);
  Kernel2D k(5);
  CHECK_THROWS_AS(convolve2d(small, k), std::invalid_argument);
}

}  // TEST_SUITE
