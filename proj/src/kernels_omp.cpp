#include <algorithm>
#include <cmath>
#include <vector>

#include "kernels_impl.hpp"

// OpenMP backend.  Pointwise loops parallelize directly; reductions compute
// the same fixed-chunk partials as the serial backend (parallel over chunks,
// sequential combine), so the result does not depend on the thread count.

namespace tcm::kernels::omp {

void apply_multiplier(Complex* c, const double* m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) c[i] *= m[i];
}

void apply_mask(Complex* c, const unsigned char* mask, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i)
        if (!mask[i]) c[i] = Complex{0.0, 0.0};
}

void apply_ik(Complex* out, const Complex* in, const double* kvals, int n,
              int axis) {
    const std::size_t plane = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        std::size_t idx = ix * plane;
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const int ia = axis == 0 ? ix : (axis == 1 ? iy : iz);
                const double k = kvals[ia];
                const Complex v = in[idx];
                out[idx] = Complex(-k * v.imag(), k * v.real());
            }
        }
    }
}

void leray(Complex* cx, Complex* cy, Complex* cz, const double* kvals, int n) {
    const std::size_t plane = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const double kx = kvals[ix];
        std::size_t idx = ix * plane;
        for (int iy = 0; iy < n; ++iy) {
            const double ky = kvals[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                detail::leray_point(cx[idx], cy[idx], cz[idx], kx, ky, kvals[iz]);
            }
        }
    }
}

void stage_scale_sum(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = e[i] * (x[i] + s * y[i]);
}

void stage_scale_add(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = e[i] * x[i] + s * y[i];
}

void stage_scale_two(Complex* out, const double* e2, const Complex* x, double s,
                     const double* e1, const Complex* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = e2[i] * x[i] + s * (e1[i] * y[i]);
}

void stage_final(Complex* out, const double* e2, const Complex* x, double s,
                 const Complex* a, const double* e1, const Complex* b,
                 const Complex* c, const Complex* d, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i)
        out[i] = e2[i] * (x[i] + s * a[i]) + 2.0 * s * (e1[i] * (b[i] + c[i])) +
                 s * d[i];
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_add(const double* a, const double* b, double* acc, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) acc[i] += a[i] * b[i];
}

void damping(const double* wx, const double* wy, const double* wz, double sigma,
             double gamma, double* ox, double* oy, double* oz, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i)
        detail::damping_point(wx[i], wy[i], wz[i], sigma, gamma, ox[i], oy[i],
                              oz[i]);
}

namespace {
template <class PartialFn>
double chunked_sum(std::size_t n, PartialFn&& partial) {
    const std::size_t nc = detail::chunk_count(n);
    std::vector<double> parts(nc);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < nc; ++c) {
        const std::size_t lo = c * reduce_chunk;
        const std::size_t hi = std::min(n, lo + reduce_chunk);
        parts[c] = partial(lo, hi);
    }
    double total = 0.0;
    for (double p : parts) total += p;
    return total;
}
} // namespace

double sum_abs2_weighted(const Complex* c, const double* w, std::size_t n) {
    return chunked_sum(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
        return s;
    });
}

double sum_abs2(const Complex* c, std::size_t n) {
    return chunked_sum(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += c[i].real() * c[i].real() + c[i].imag() * c[i].imag();
        return s;
    });
}

double sum_pow(const double* a, double p, std::size_t n) {
    return chunked_sum(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::pow(std::abs(a[i]), p);
        return s;
    });
}

double sum_pow3(const double* x, const double* y, const double* z, double p,
                std::size_t n) {
    return chunked_sum(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double m2 = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
            s += std::pow(m2, 0.5 * p);
        }
        return s;
    });
}

double max_abs(const double* a, std::size_t n) {
    const std::size_t nc = detail::chunk_count(n);
    std::vector<double> parts(nc, 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < nc; ++c) {
        const std::size_t lo = c * reduce_chunk;
        const std::size_t hi = std::min(n, lo + reduce_chunk);
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(a[i]));
        parts[c] = m;
    }
    double m = 0.0;
    for (double p : parts) m = std::max(m, p);
    return m;
}

double dot(const double* a, const double* b, std::size_t n) {
    return chunked_sum(n, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
        return s;
    });
}

} // namespace tcm::kernels::omp
