#pragma once

// Data-parallel inner loops used by the Monte Carlo estimators and the grid
// scans: dense row accumulation (coefficients times precomputed basis rows)
// and batched absolute-determinant moments for small matrices.
//
// Every backend implements the same lane-blocked accumulation scheme (blocks
// of four interleaved partial sums, combined pairwise), so the scalar
// reference and the SIMD variants agree bit for bit.  The active backend is
// chosen once at runtime; KACFTA_SIMD=scalar|avx2|neon overrides the choice.

#include <cstddef>

namespace kacfta::kernels {

struct Backend {
    const char* name;

    // out[j] = sum_i coefs[i] * rows[i * row_stride + j] for j in [0, n_points)
    void (*accum_rows)(double* out, const double* rows, std::size_t row_stride,
                       const double* coefs, std::size_t n_rows, std::size_t n_points);

    // m1 and m0 hold `count` n-by-n matrices in structure-of-arrays layout:
    // entry (r,c) of sample s sits at m[(r*n + c) * count + s].  Accumulates
    //   sums[0] += |det m1|, sums[1] += |det m0|, sums[2] += |det m1|^2,
    //   sums[3] += |det m0|^2, sums[4] += |det m1|*|det m0|
    // over all samples.  n must be 1..4.
    void (*abs_det_moments)(std::size_t n, const double* m1, const double* m0,
                            std::size_t count, double sums[5]);
};

const Backend& scalar_backend();

/// Backend selected for this process (CPU detection + KACFTA_SIMD override).
const Backend& active();

/// All backends usable on this machine, the scalar reference first.
std::size_t available_backends(const Backend** out, std::size_t max);

} // namespace kacfta::kernels
