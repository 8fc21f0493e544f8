#include "kacfta/kernels/kernels.hpp"

#if defined(__AVX2__)

#include "body.hpp"

#include <immintrin.h>

namespace kacfta::kernels {

namespace {

struct PackAvx2 {
    static constexpr std::size_t width = 4;
    __m256d v;
    static PackAvx2 zero() { return {_mm256_setzero_pd()}; }
    static PackAvx2 broadcast(double x) { return {_mm256_set1_pd(x)}; }
    static PackAvx2 load(const double* p) { return {_mm256_loadu_pd(p)}; }
    void store(double* p) const { _mm256_storeu_pd(p, v); }
    PackAvx2 operator+(PackAvx2 o) const { return {_mm256_add_pd(v, o.v)}; }
    PackAvx2 operator-(PackAvx2 o) const { return {_mm256_sub_pd(v, o.v)}; }
    PackAvx2 operator*(PackAvx2 o) const { return {_mm256_mul_pd(v, o.v)}; }
    PackAvx2 abs() const {
        const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
        return {_mm256_and_pd(v, mask)};
    }
    double reduce() const {
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, v);
        return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    }
};

void accum_rows_avx2(double* out, const double* rows, std::size_t row_stride, const double* coefs,
                     std::size_t n_rows, std::size_t n_points) {
    detail::accum_rows_impl<PackAvx2>(out, rows, row_stride, coefs, n_rows, n_points);
}

void abs_det_moments_avx2(std::size_t n, const double* m1, const double* m0, std::size_t count,
                          double sums[5]) {
    detail::abs_det_moments_impl<PackAvx2>(n, m1, m0, count, sums);
}

} // namespace

const Backend& avx2_backend() {
    static const Backend b{"avx2", accum_rows_avx2, abs_det_moments_avx2};
    return b;
}

} // namespace kacfta::kernels

#endif // __AVX2__
