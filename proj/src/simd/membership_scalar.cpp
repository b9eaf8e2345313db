#include <cstdlib>
#include <cstring>

#include "scv/simd/membership.hpp"

namespace scv::simd {

const char* to_string(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
  }
  return "unknown";
}

Level detected_level() {
#if defined(SCV_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Level::avx2;
#endif
  return Level::scalar;
}

Level active_level() {
  const char* env = std::getenv("SCV_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Level::scalar;
  return detected_level();
}

// Reference kernel. The vector kernels must reproduce this operation order exactly:
// y = y + (a*b - c*d) per term, no fused multiply-add.
void quadric_mask_scalar(std::span<const QuadricBlock> blocks, const double* const* coords,
                         std::size_t begin, std::size_t end, std::uint8_t* out) {
  for (std::size_t i = begin; i < end; ++i) {
    bool inside = true;
    for (const auto& b : blocks) {
      double acc = 0.0;
      bool block_inside = true;
      for (std::size_t r = 0; r < b.dim; ++r) {
        double yr = 0.0;
        double yi = 0.0;
        for (std::size_t c = 0; c < b.dim; ++c) {
          const double mr = b.inv_re[r * b.dim + c];
          const double mi = b.inv_im[r * b.dim + c];
          const double xr = coords[2 * (b.offset + c)][i];
          const double xi = coords[2 * (b.offset + c) + 1][i];
          yr = yr + (mr * xr - mi * xi);
          yi = yi + (mr * xi + mi * xr);
        }
        const double s = yr * yr + yi * yi;
        if (b.kind == QuadricBlock::Kind::euclidean) {
          acc = acc + s;
        } else {
          block_inside = block_inside && (s < 1.0);
        }
      }
      if (b.kind == QuadricBlock::Kind::euclidean) block_inside = acc < 1.0;
      inside = inside && block_inside;
    }
    out[i] = inside ? 1 : 0;
  }
}

void quadric_mask(Level level, std::span<const QuadricBlock> blocks, const double* const* coords,
                  std::size_t count, std::uint8_t* out) {
#if defined(SCV_HAVE_AVX2)
  if (level == Level::avx2) {
    quadric_mask_avx2(blocks, coords, count, out);
    return;
  }
#else
  (void)level;
#endif
  quadric_mask_scalar(blocks, coords, 0, count, out);
}

}  // namespace scv::simd
