#include "kacfta/kernels/kernels.hpp"

#include "body.hpp"

namespace kacfta::kernels {

namespace {

void accum_rows_scalar(double* out, const double* rows, std::size_t row_stride, const double* coefs,
                       std::size_t n_rows, std::size_t n_points) {
    detail::accum_rows_impl<detail::Pack4>(out, rows, row_stride, coefs, n_rows, n_points);
}

void abs_det_moments_scalar(std::size_t n, const double* m1, const double* m0, std::size_t count,
                            double sums[5]) {
    detail::abs_det_moments_impl<detail::Pack4>(n, m1, m0, count, sums);
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", accum_rows_scalar, abs_det_moments_scalar};
    return b;
}

} // namespace kacfta::kernels
