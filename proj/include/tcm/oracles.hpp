#pragma once

#include <array>
#include <complex>

namespace tcm::oracles {

/// Dense complex matrix exponential by scaling-and-squaring Taylor series.
/// Small fixed size, used to integrate single-mode linear subsystems
/// independently of the time stepper.
template <int N>
using CMat = std::array<std::array<std::complex<double>, N>, N>;
template <int N>
using CVec = std::array<std::complex<double>, N>;

CMat<4> expm4(const CMat<4>& m);
CVec<4> apply4(const CMat<4>& m, const CVec<4>& x);

/// exp(M t) x0 for the per-mode (v_hat, theta_hat) system
///   v' = -eta |k|^2 v - i k theta,  theta' = -mu |k|^2 theta - i k . v
/// with scaled wavenumber vector k.
CVec<4> coupled_mode_solution(const std::array<double, 3>& k, double eta,
                              double mu, double t, const CVec<4>& x0);

} // namespace tcm::oracles
