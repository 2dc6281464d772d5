#pragma once

#include <complex>
#include <cstddef>

namespace tcm::kernels {

using Complex = std::complex<double>;

/// Every kernel below has a serial reference implementation and an OpenMP
/// one.  The serial versions use the same fixed-chunk reduction layout as the
/// parallel ones, so results are bit-identical across modes and thread
/// counts.  tcm_bench compares the two.
enum class Mode { Serial, OpenMP };

Mode mode();
void set_mode(Mode m);

// chunk length for deterministic reductions
inline constexpr std::size_t reduce_chunk = 4096;

// ---- spectral (complex) kernels -----------------------------------------

/// c[i] *= m[i]
void apply_multiplier(Complex* c, const double* m, std::size_t n);
/// c[i] = mask[i] ? c[i] : 0
void apply_mask(Complex* c, const unsigned char* mask, std::size_t n);
/// out[i] = i * kval[axis index of i] * in[i]   (spectral derivative)
void apply_ik(Complex* out, const Complex* in, const double* kvals, int n,
              int axis);
/// In-place Leray projection: per mode, w -= k (k.w)/|k|^2; k=0 untouched.
void leray(Complex* cx, Complex* cy, Complex* cz, const double* kvals, int n);

// RK stage combinations (e, e1, e2 are real per-mode factors):
/// out[i] = e[i] * (x[i] + s*y[i])
void stage_scale_sum(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n);
/// out[i] = e[i]*x[i] + s*y[i]
void stage_scale_add(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n);
/// out[i] = e2[i]*x[i] + s*e1[i]*y[i]
void stage_scale_two(Complex* out, const double* e2, const Complex* x, double s,
                     const double* e1, const Complex* y, std::size_t n);
/// out[i] = e2[i]*(x[i] + s*a[i]) + 2*s*e1[i]*(b[i] + c[i]) + s*d[i]
void stage_final(Complex* out, const double* e2, const Complex* x, double s,
                 const Complex* a, const double* e1, const Complex* b,
                 const Complex* c, const Complex* d, std::size_t n);

// ---- pointwise physical-space kernels ------------------------------------

/// out[i] = a[i]*b[i]
void mul(const double* a, const double* b, double* out, std::size_t n);
/// acc[i] += a[i]*b[i]
void mul_add(const double* a, const double* b, double* acc, std::size_t n);
/// (ox,oy,oz)[i] = sigma * |w(i)|^(gamma-1) * w(i), Euclidean magnitude;
/// zero where w vanishes and gamma > 1.
void damping(const double* wx, const double* wy, const double* wz, double sigma,
             double gamma, double* ox, double* oy, double* oz, std::size_t n);

// ---- deterministic reductions ---------------------------------------------

/// sum_i w[i] * |c[i]|^2
double sum_abs2_weighted(const Complex* c, const double* w, std::size_t n);
/// sum_i |c[i]|^2
double sum_abs2(const Complex* c, std::size_t n);
/// sum_i |a[i]|^p
double sum_pow(const double* a, double p, std::size_t n);
/// sum_i (x^2+y^2+z^2)^(p/2)
double sum_pow3(const double* x, const double* y, const double* z, double p,
                std::size_t n);
double max_abs(const double* a, std::size_t n);
/// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

} // namespace tcm::kernels
