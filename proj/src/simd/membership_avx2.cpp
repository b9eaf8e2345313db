// Compiled with -mavx2 only (no -mfma) so products and sums round exactly as in the
// scalar kernel.
#include <immintrin.h>

#include "scv/simd/membership.hpp"

namespace scv::simd {

void quadric_mask_avx2(std::span<const QuadricBlock> blocks, const double* const* coords,
                       std::size_t count, std::uint8_t* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  const std::size_t vec_end = count - count % 4;
  for (std::size_t i = 0; i < vec_end; i += 4) {
    __m256d inside = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (const auto& b : blocks) {
      __m256d acc = _mm256_setzero_pd();
      __m256d block_inside = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
      for (std::size_t r = 0; r < b.dim; ++r) {
        __m256d yr = _mm256_setzero_pd();
        __m256d yi = _mm256_setzero_pd();
        for (std::size_t c = 0; c < b.dim; ++c) {
          const __m256d mr = _mm256_set1_pd(b.inv_re[r * b.dim + c]);
          const __m256d mi = _mm256_set1_pd(b.inv_im[r * b.dim + c]);
          const __m256d xr = _mm256_loadu_pd(coords[2 * (b.offset + c)] + i);
          const __m256d xi = _mm256_loadu_pd(coords[2 * (b.offset + c) + 1] + i);
          yr = _mm256_add_pd(yr, _mm256_sub_pd(_mm256_mul_pd(mr, xr), _mm256_mul_pd(mi, xi)));
          yi = _mm256_add_pd(yi, _mm256_add_pd(_mm256_mul_pd(mr, xi), _mm256_mul_pd(mi, xr)));
        }
        const __m256d s = _mm256_add_pd(_mm256_mul_pd(yr, yr), _mm256_mul_pd(yi, yi));
        if (b.kind == QuadricBlock::Kind::euclidean) {
          acc = _mm256_add_pd(acc, s);
        } else {
          block_inside = _mm256_and_pd(block_inside, _mm256_cmp_pd(s, one, _CMP_LT_OQ));
        }
      }
      if (b.kind == QuadricBlock::Kind::euclidean) block_inside = _mm256_cmp_pd(acc, one, _CMP_LT_OQ);
      inside = _mm256_and_pd(inside, block_inside);
    }
    const int bits = _mm256_movemask_pd(inside);
    out[i] = static_cast<std::uint8_t>(bits & 1);
    out[i + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
    out[i + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
    out[i + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
  }
  quadric_mask_scalar(blocks, coords, vec_end, count, out);
}

}  // namespace scv::simd
