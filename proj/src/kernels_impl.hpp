#pragma once

#include <cmath>

#include "tcm/kernels.hpp"

// Internal: the two backing implementations behind the dispatch layer.  The
// signatures mirror tcm/kernels.hpp exactly.

namespace tcm::kernels::serial {
void apply_multiplier(Complex* c, const double* m, std::size_t n);
void apply_mask(Complex* c, const unsigned char* mask, std::size_t n);
void apply_ik(Complex* out, const Complex* in, const double* kvals, int n, int axis);
void leray(Complex* cx, Complex* cy, Complex* cz, const double* kvals, int n);
void stage_scale_sum(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n);
void stage_scale_add(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n);
void stage_scale_two(Complex* out, const double* e2, const Complex* x, double s,
                     const double* e1, const Complex* y, std::size_t n);
void stage_final(Complex* out, const double* e2, const Complex* x, double s,
                 const Complex* a, const double* e1, const Complex* b,
                 const Complex* c, const Complex* d, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void mul_add(const double* a, const double* b, double* acc, std::size_t n);
void damping(const double* wx, const double* wy, const double* wz, double sigma,
             double gamma, double* ox, double* oy, double* oz, std::size_t n);
double sum_abs2_weighted(const Complex* c, const double* w, std::size_t n);
double sum_abs2(const Complex* c, std::size_t n);
double sum_pow(const double* a, double p, std::size_t n);
double sum_pow3(const double* x, const double* y, const double* z, double p,
                std::size_t n);
double max_abs(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
} // namespace tcm::kernels::serial

namespace tcm::kernels::omp {
void apply_multiplier(Complex* c, const double* m, std::size_t n);
void apply_mask(Complex* c, const unsigned char* mask, std::size_t n);
void apply_ik(Complex* out, const Complex* in, const double* kvals, int n, int axis);
void leray(Complex* cx, Complex* cy, Complex* cz, const double* kvals, int n);
void stage_scale_sum(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n);
void stage_scale_add(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n);
void stage_scale_two(Complex* out, const double* e2, const Complex* x, double s,
                     const double* e1, const Complex* y, std::size_t n);
void stage_final(Complex* out, const double* e2, const Complex* x, double s,
                 const Complex* a, const double* e1, const Complex* b,
                 const Complex* c, const Complex* d, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void mul_add(const double* a, const double* b, double* acc, std::size_t n);
void damping(const double* wx, const double* wy, const double* wz, double sigma,
             double gamma, double* ox, double* oy, double* oz, std::size_t n);
double sum_abs2_weighted(const Complex* c, const double* w, std::size_t n);
double sum_abs2(const Complex* c, std::size_t n);
double sum_pow(const double* a, double p, std::size_t n);
double sum_pow3(const double* x, const double* y, const double* z, double p,
                std::size_t n);
double max_abs(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
} // namespace tcm::kernels::omp

namespace tcm::kernels::detail {

// Shared per-point bodies so the two backends cannot drift apart numerically.

inline void damping_point(double wx, double wy, double wz, double sigma,
                          double gamma, double& ox, double& oy, double& oz) {
    const double mag2 = wx * wx + wy * wy + wz * wz;
    double factor;
    if (gamma == 1.0) {
        factor = sigma;
    } else if (mag2 > 0.0) {
        factor = sigma * std::pow(mag2, 0.5 * (gamma - 1.0));
    } else {
        factor = 0.0;
    }
    ox = factor * wx;
    oy = factor * wy;
    oz = factor * wz;
}

inline void leray_point(Complex& cx, Complex& cy, Complex& cz, double kx,
                        double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 == 0.0) return;
    const Complex kdotw = kx * cx + ky * cy + kz * cz;
    const Complex f = kdotw / k2;
    cx -= kx * f;
    cy -= ky * f;
    cz -= kz * f;
}

inline std::size_t chunk_count(std::size_t n) {
    return (n + reduce_chunk - 1) / reduce_chunk;
}

} // namespace tcm::kernels::detail
