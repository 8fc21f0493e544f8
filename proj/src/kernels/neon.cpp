#include "kacfta/kernels/kernels.hpp"

#if defined(__aarch64__)

#include "body.hpp"

#include <arm_neon.h>

namespace kacfta::kernels {

namespace {

// Two float64x2 registers make a width-4 pack, matching the lane-blocked
// accumulation of the scalar reference exactly.
struct PackNeon {
    static constexpr std::size_t width = 4;
    float64x2_t lo, hi;
    static PackNeon zero() { return {vdupq_n_f64(0.0), vdupq_n_f64(0.0)}; }
    static PackNeon broadcast(double x) { return {vdupq_n_f64(x), vdupq_n_f64(x)}; }
    static PackNeon load(const double* p) { return {vld1q_f64(p), vld1q_f64(p + 2)}; }
    void store(double* p) const {
        vst1q_f64(p, lo);
        vst1q_f64(p + 2, hi);
    }
    PackNeon operator+(PackNeon o) const { return {vaddq_f64(lo, o.lo), vaddq_f64(hi, o.hi)}; }
    PackNeon operator-(PackNeon o) const { return {vsubq_f64(lo, o.lo), vsubq_f64(hi, o.hi)}; }
    PackNeon operator*(PackNeon o) const { return {vmulq_f64(lo, o.lo), vmulq_f64(hi, o.hi)}; }
    PackNeon abs() const { return {vabsq_f64(lo), vabsq_f64(hi)}; }
    double reduce() const {
        return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
               (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    }
};

void accum_rows_neon(double* out, const double* rows, std::size_t row_stride, const double* coefs,
                     std::size_t n_rows, std::size_t n_points) {
    detail::accum_rows_impl<PackNeon>(out, rows, row_stride, coefs, n_rows, n_points);
}

void abs_det_moments_neon(std::size_t n, const double* m1, const double* m0, std::size_t count,
                          double sums[5]) {
    detail::abs_det_moments_impl<PackNeon>(n, m1, m0, count, sums);
}

} // namespace

const Backend& neon_backend() {
    static const Backend b{"neon", accum_rows_neon, abs_det_moments_neon};
    return b;
}

} // namespace kacfta::kernels

#endif // __aarch64__
