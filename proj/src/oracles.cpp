#include "tcm/oracles.hpp"

#include <cmath>

namespace tcm::oracles {

namespace {

using C = std::complex<double>;

CMat<4> matmul(const CMat<4>& a, const CMat<4>& b) {
    CMat<4> r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const C aik = a[i][k];
            if (aik == C{}) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

double norm1(const CMat<4>& m) {
    double best = 0.0;
    for (int j = 0; j < 4; ++j) {
        double col = 0.0;
        for (int i = 0; i < 4; ++i) col += std::abs(m[i][j]);
        best = std::max(best, col);
    }
    return best;
}

} // namespace

CMat<4> expm4(const CMat<4>& m) {
    // scale so the Taylor series converges fast, then square back
    int squarings = 0;
    double scale = 1.0;
    const double nrm = norm1(m);
    while (nrm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }

    CMat<4> a{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = m[i][j] * scale;

    CMat<4> result{};
    for (int i = 0; i < 4; ++i) result[i][i] = 1.0;
    CMat<4> term = result;
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, a);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) term[i][j] /= double(k);
        double mag = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                result[i][j] += term[i][j];
                mag += std::abs(term[i][j]);
            }
        if (mag < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

CVec<4> apply4(const CMat<4>& m, const CVec<4>& x) {
    CVec<4> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m[i][j] * x[j];
    return r;
}

CVec<4> coupled_mode_solution(const std::array<double, 3>& k, double eta,
                              double mu, double t, const CVec<4>& x0) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    CMat<4> m{};
    for (int i = 0; i < 3; ++i) {
        m[i][i] = C{-eta * k2, 0.0};
        m[i][3] = C{0.0, -k[i]}; // -i k_i theta
        m[3][i] = C{0.0, -k[i]}; // -i k_i v_i
    }
    m[3][3] = C{-mu * k2, 0.0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] *= t;
    return apply4(expm4(m), x0);
}

} // namespace tcm::oracles
