#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scv::simd {

enum class Level { scalar, avx2 };

const char* to_string(Level level);

/// Best level the running CPU supports.
Level detected_level();
/// detected_level(), unless SCV_SIMD=scalar forces the reference kernel.
Level active_level();

/// One block of a hit-or-miss membership test. With y = inverse * x restricted to the
/// block's coordinates, a sample is inside when sum |y_r|^2 < 1 (euclidean) or every
/// |y_r|^2 < 1 (polydisc).
struct QuadricBlock {
  enum class Kind { euclidean, polydisc };

  std::size_t offset;  // first complex coordinate of the block
  std::size_t dim;
  Kind kind;
  std::vector<double> inv_re;  // dim x dim, row-major
  std::vector<double> inv_im;
};

/// Samples are stored structure-of-arrays: coords[2j] holds Re z_j and coords[2j+1]
/// holds Im z_j for every sample. Writes out[i] = 1 when sample i passes every block.
/// All levels produce bit-identical masks.
void quadric_mask(Level level, std::span<const QuadricBlock> blocks, const double* const* coords,
                  std::size_t count, std::uint8_t* out);

void quadric_mask_scalar(std::span<const QuadricBlock> blocks, const double* const* coords,
                         std::size_t begin, std::size_t end, std::uint8_t* out);
#if defined(SCV_HAVE_AVX2)
void quadric_mask_avx2(std::span<const QuadricBlock> blocks, const double* const* coords,
                       std::size_t count, std::uint8_t* out);
#endif

}  // namespace scv::simd
