#include <atomic>

#include "kernels_impl.hpp"

namespace tcm::kernels {

namespace {
std::atomic<Mode> g_mode{Mode::OpenMP};
}

Mode mode() { return g_mode.load(std::memory_order_relaxed); }
void set_mode(Mode m) { g_mode.store(m, std::memory_order_relaxed); }

#define TCM_DISPATCH(fn, ...)                     \
    (mode() == Mode::OpenMP ? omp::fn(__VA_ARGS__) \
                            : serial::fn(__VA_ARGS__))

void apply_multiplier(Complex* c, const double* m, std::size_t n) {
    TCM_DISPATCH(apply_multiplier, c, m, n);
}
void apply_mask(Complex* c, const unsigned char* mask, std::size_t n) {
    TCM_DISPATCH(apply_mask, c, mask, n);
}
void apply_ik(Complex* out, const Complex* in, const double* kvals, int n,
              int axis) {
    TCM_DISPATCH(apply_ik, out, in, kvals, n, axis);
}
void leray(Complex* cx, Complex* cy, Complex* cz, const double* kvals, int n) {
    TCM_DISPATCH(leray, cx, cy, cz, kvals, n);
}
void stage_scale_sum(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n) {
    TCM_DISPATCH(stage_scale_sum, out, e, x, s, y, n);
}
void stage_scale_add(Complex* out, const double* e, const Complex* x, double s,
                     const Complex* y, std::size_t n) {
    TCM_DISPATCH(stage_scale_add, out, e, x, s, y, n);
}
void stage_scale_two(Complex* out, const double* e2, const Complex* x, double s,
                     const double* e1, const Complex* y, std::size_t n) {
    TCM_DISPATCH(stage_scale_two, out, e2, x, s, e1, y, n);
}
void stage_final(Complex* out, const double* e2, const Complex* x, double s,
                 const Complex* a, const double* e1, const Complex* b,
                 const Complex* c, const Complex* d, std::size_t n) {
    TCM_DISPATCH(stage_final, out, e2, x, s, a, e1, b, c, d, n);
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
    TCM_DISPATCH(mul, a, b, out, n);
}
void mul_add(const double* a, const double* b, double* acc, std::size_t n) {
    TCM_DISPATCH(mul_add, a, b, acc, n);
}
void damping(const double* wx, const double* wy, const double* wz, double sigma,
             double gamma, double* ox, double* oy, double* oz, std::size_t n) {
    TCM_DISPATCH(damping, wx, wy, wz, sigma, gamma, ox, oy, oz, n);
}
double sum_abs2_weighted(const Complex* c, const double* w, std::size_t n) {
    return TCM_DISPATCH(sum_abs2_weighted, c, w, n);
}
double sum_abs2(const Complex* c, std::size_t n) {
    return TCM_DISPATCH(sum_abs2, c, n);
}
double sum_pow(const double* a, double p, std::size_t n) {
    return TCM_DISPATCH(sum_pow, a, p, n);
}
double sum_pow3(const double* x, const double* y, const double* z, double p,
                std::size_t n) {
    return TCM_DISPATCH(sum_pow3, x, y, z, p, n);
}
double max_abs(const double* a, std::size_t n) {
    return TCM_DISPATCH(max_abs, a, n);
}
double dot(const double* a, const double* b, std::size_t n) {
    return TCM_DISPATCH(dot, a, b, n);
}

#undef TCM_DISPATCH

} // namespace tcm::kernels
