#pragma once

// Shared kernel bodies, templated over a lane pack.  Instantiating the same
// expression tree for every backend is what makes the scalar reference and
// the SIMD variants bitwise identical (contraction is off for these TUs).

#include <cmath>
#include <cstddef>

namespace kacfta::kernels::detail {

// Width-1 pack used for loop tails by every backend.
struct Pack1 {
    static constexpr std::size_t width = 1;
    double v;
    static Pack1 zero() { return {0.0}; }
    static Pack1 broadcast(double x) { return {x}; }
    static Pack1 load(const double* p) { return {*p}; }
    void store(double* p) const { *p = v; }
    Pack1 operator+(Pack1 o) const { return {v + o.v}; }
    Pack1 operator-(Pack1 o) const { return {v - o.v}; }
    Pack1 operator*(Pack1 o) const { return {v * o.v}; }
    Pack1 abs() const { return {std::fabs(v)}; }
    double reduce() const { return v; }
};

// Portable width-4 pack: the scalar reference backend.
struct Pack4 {
    static constexpr std::size_t width = 4;
    double v[4];
    static Pack4 zero() { return {{0.0, 0.0, 0.0, 0.0}}; }
    static Pack4 broadcast(double x) { return {{x, x, x, x}}; }
    static Pack4 load(const double* p) { return {{p[0], p[1], p[2], p[3]}}; }
    void store(double* p) const {
        p[0] = v[0];
        p[1] = v[1];
        p[2] = v[2];
        p[3] = v[3];
    }
    Pack4 operator+(Pack4 o) const { return {{v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2], v[3] + o.v[3]}}; }
    Pack4 operator-(Pack4 o) const { return {{v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2], v[3] - o.v[3]}}; }
    Pack4 operator*(Pack4 o) const { return {{v[0] * o.v[0], v[1] * o.v[1], v[2] * o.v[2], v[3] * o.v[3]}}; }
    Pack4 abs() const { return {{std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2]), std::fabs(v[3])}}; }
    double reduce() const { return (v[0] + v[1]) + (v[2] + v[3]); }
};

template <class V>
void accum_rows_impl(double* out, const double* rows, std::size_t row_stride, const double* coefs,
                     std::size_t n_rows, std::size_t n_points) {
    std::size_t j = 0;
    for (; j + V::width <= n_points; j += V::width) {
        V acc = V::zero();
        for (std::size_t i = 0; i < n_rows; ++i)
            acc = acc + V::broadcast(coefs[i]) * V::load(rows + i * row_stride + j);
        acc.store(out + j);
    }
    for (; j < n_points; ++j) {
        Pack1 acc = Pack1::zero();
        for (std::size_t i = 0; i < n_rows; ++i)
            acc = acc + Pack1::broadcast(coefs[i]) * Pack1::load(rows + i * row_stride + j);
        acc.store(out + j);
    }
}

template <class V>
V det_pack(std::size_t n, const double* m, std::size_t count, std::size_t j) {
    auto e = [&](std::size_t r, std::size_t c) { return V::load(m + (r * n + c) * count + j); };
    if (n == 1) return e(0, 0);
    if (n == 2) return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
    if (n == 3)
        return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
               e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
               e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    // n == 4: Laplace expansion along the first two rows.
    auto a = [&](std::size_t i, std::size_t k) { return e(0, i) * e(1, k) - e(0, k) * e(1, i); };
    auto b = [&](std::size_t i, std::size_t k) { return e(2, i) * e(3, k) - e(2, k) * e(3, i); };
    return a(0, 1) * b(2, 3) - a(0, 2) * b(1, 3) + a(0, 3) * b(1, 2) + a(1, 2) * b(0, 3) -
           a(1, 3) * b(0, 2) + a(2, 3) * b(0, 1);
}

template <class V>
void abs_det_moments_impl(std::size_t n, const double* m1, const double* m0, std::size_t count,
                          double sums[5]) {
    V acc[5] = {V::zero(), V::zero(), V::zero(), V::zero(), V::zero()};
    std::size_t j = 0;
    for (; j + V::width <= count; j += V::width) {
        V d1 = det_pack<V>(n, m1, count, j).abs();
        V d0 = det_pack<V>(n, m0, count, j).abs();
        acc[0] = acc[0] + d1;
        acc[1] = acc[1] + d0;
        acc[2] = acc[2] + d1 * d1;
        acc[3] = acc[3] + d0 * d0;
        acc[4] = acc[4] + d1 * d0;
    }
    double tail[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (; j < count; ++j) {
        Pack1 d1 = det_pack<Pack1>(n, m1, count, j).abs();
        Pack1 d0 = det_pack<Pack1>(n, m0, count, j).abs();
        tail[0] += d1.v;
        tail[1] += d0.v;
        tail[2] += d1.v * d1.v;
        tail[3] += d0.v * d0.v;
        tail[4] += d1.v * d0.v;
    }
    for (int k = 0; k < 5; ++k) sums[k] = acc[k].reduce() + tail[k];
}

} // namespace kacfta::kernels::detail
