#include <doctest.h>

#include <string>
#include <vector>

#include "scv/rng.hpp"
#include "scv/simd/membership.hpp"

using namespace scv;
using namespace scv::simd;

namespace {

QuadricBlock random_block(CounterRng& rng, std::size_t offset, std::size_t dim, QuadricBlock::Kind kind) {
  QuadricBlock b{offset, dim, kind, {}, {}};
  for (std::size_t i = 0; i < dim * dim; ++i) {
    b.inv_re.push_back(rng.uniform(-1.5, 1.5));
    b.inv_im.push_back(rng.uniform(-1.5, 1.5));
  }
  return b;
}

}  // namespace

TEST_CASE("scalar and vector masks agree bit for bit") {
  CounterRng rng(31, 0);
  const std::size_t n = 4;
  // Odd count exercises the remainder lanes.
  const std::size_t count = 10007;
  std::vector<std::vector<double>> store(2 * n, std::vector<double>(count));
  std::vector<const double*> coords;
  for (auto& c : store) {
    for (auto& x : c) x = rng.uniform(-1.2, 1.2);
    coords.push_back(c.data());
  }
  const std::vector<QuadricBlock> blocks = {random_block(rng, 0, 2, QuadricBlock::Kind::euclidean),
                                            random_block(rng, 2, 1, QuadricBlock::Kind::euclidean),
                                            random_block(rng, 3, 1, QuadricBlock::Kind::polydisc)};
  std::vector<std::uint8_t> ref(count), got(count);
  quadric_mask_scalar(blocks, coords.data(), 0, count, ref.data());
  quadric_mask(Level::scalar, blocks, coords.data(), count, got.data());
  CHECK(ref == got);
  std::size_t hits = 0;
  for (auto h : ref) hits += h;
  CHECK(hits > 0);
  CHECK(hits < count);
#if defined(SCV_HAVE_AVX2)
  if (detected_level() == Level::avx2) {
    std::vector<std::uint8_t> vec(count);
    quadric_mask_avx2(blocks, coords.data(), count, vec.data());
    CHECK(ref == vec);
    quadric_mask(Level::avx2, blocks, coords.data(), count, vec.data());
    CHECK(ref == vec);
  }
#endif
}

TEST_CASE("polydisc blocks test every row") {
  QuadricBlock b{0, 2, QuadricBlock::Kind::polydisc, {1, 0, 0, 1}, {0, 0, 0, 0}};
  std::vector<double> re1 = {0.5, 0.5, 0.99}, im1 = {0, 0, 0}, re2 = {0.5, 1.01, 0}, im2 = {0, 0, 0.5};
  const double* coords[] = {re1.data(), im1.data(), re2.data(), im2.data()};
  std::vector<std::uint8_t> out(3);
  quadric_mask(active_level(), std::span<const QuadricBlock>(&b, 1), coords, 3, out.data());
  CHECK(out == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("level names") {
  CHECK(std::string(to_string(Level::scalar)) == "scalar");
  CHECK(std::string(to_string(Level::avx2)) == "avx2");
}
