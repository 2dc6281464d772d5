#include "tcm/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace tcm {

namespace {

// One forward/backward plan pair per grid size.  Plans are created with
// FFTW_ESTIMATE (reproducible across runs) and FFTW_UNALIGNED so the
// new-array execute interface accepts any buffer; execution is thread-safe,
// only creation is serialized.
struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

PlanPair plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t size = static_cast<std::size_t>(n) * n * n;
    fftw_complex* a = fftw_alloc_complex(size);
    fftw_complex* b = fftw_alloc_complex(size);
    PlanPair p;
    p.forward = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!p.forward || !p.backward)
        throw std::runtime_error("transform: fftw plan creation failed");
    cache.emplace(n, p);
    return p;
}

std::vector<Complex>& scratch_buffer(std::size_t size) {
    static thread_local std::vector<Complex> buf;
    if (buf.size() < size) buf.resize(size);
    return buf;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

void forward_transform_into(const Grid& g, const double* samples, Complex* out) {
    const std::size_t size = g.size();
    auto& in = scratch_buffer(size);
    for (std::size_t i = 0; i < size; ++i) in[i] = Complex(samples[i], 0.0);
    const PlanPair p = plans_for(g.n());
    fftw_execute_dft(p.forward, as_fftw(in.data()), as_fftw(out));
    const double scale = 1.0 / static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) out[i] *= scale;
}

void inverse_transform_into(const Grid& g, const Complex* coeffs, double* out) {
    const std::size_t size = g.size();
    auto& buf = scratch_buffer(size);
    const PlanPair p = plans_for(g.n());
    fftw_execute_dft(p.backward, as_fftw(const_cast<Complex*>(coeffs)),
                     as_fftw(buf.data()));
    for (std::size_t i = 0; i < size; ++i) out[i] = buf[i].real();
}

SpectralScalarField forward_transform(const std::shared_ptr<const Grid>& g,
                                      std::span<const double> samples) {
    if (samples.size() != g->size())
        throw std::invalid_argument("forward_transform: sample array shape mismatch");
    SpectralScalarField f(g);
    forward_transform_into(*g, samples.data(), f.coeffs.data());
    return f;
}

std::vector<double> inverse_transform(const SpectralScalarField& f) {
    std::vector<double> samples(f.grid->size());
    inverse_transform_into(*f.grid, f.coeffs.data(), samples.data());
    return samples;
}

std::array<std::vector<double>, 3> inverse_transform(const SpectralVectorField& w) {
    return {inverse_transform(w[0]), inverse_transform(w[1]),
            inverse_transform(w[2])};
}

SpectralVectorField forward_transform(const std::shared_ptr<const Grid>& g,
                                      std::span<const double> x,
                                      std::span<const double> y,
                                      std::span<const double> z) {
    SpectralVectorField w(g);
    w[0] = forward_transform(g, x);
    w[1] = forward_transform(g, y);
    w[2] = forward_transform(g, z);
    return w;
}

} // namespace tcm
