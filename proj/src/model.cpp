#include "tcm/model.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "tcm/kernels.hpp"
#include "tcm/transform.hpp"

namespace tcm {

std::vector<std::string> ModelParams::validate() const {
    std::vector<std::string> errs;
    if (!(nu > 0.0)) errs.push_back("nu must be > 0");
    if (!(eta > 0.0)) errs.push_back("eta must be > 0");
    if (!(mu > 0.0)) errs.push_back("mu must be > 0");
    if (!(sigma1 >= 0.0)) errs.push_back("sigma1 must be >= 0");
    if (!(sigma2 >= 0.0)) errs.push_back("sigma2 must be >= 0");
    if (!(alpha >= 1.0)) errs.push_back("alpha must be >= 1");
    if (!(beta >= 1.0)) errs.push_back("beta must be >= 1");
    return errs;
}

SimState zero_state(const std::shared_ptr<const Grid>& g) { return SimState(g); }

bool is_finite(const SimState& s) {
    return is_finite(s.u) && is_finite(s.v) && is_finite(s.theta) &&
           std::isfinite(s.time);
}

double divergence_defect(const SimState& s) { return l2_norm(divergence(s.u)); }

SpectralVectorField damping_term(const SpectralVectorField& w, double gamma,
                                 double sigma) {
    if (gamma < 1.0)
        throw std::invalid_argument("damping_term: exponent must be >= 1");
    const Grid& g = *w.grid();
    const std::size_t size = g.size();
    const auto wp = inverse_transform(w);
    std::vector<double> ox(size), oy(size), oz(size);
    kernels::damping(wp[0].data(), wp[1].data(), wp[2].data(), sigma, gamma,
                     ox.data(), oy.data(), oz.data(), size);
    SpectralVectorField out(w.grid());
    forward_transform_into(g, ox.data(), out[0].coeffs.data());
    forward_transform_into(g, oy.data(), out[1].coeffs.data());
    forward_transform_into(g, oz.data(), out[2].coeffs.data());
    dealias_inplace(out);
    return out;
}

namespace {

std::vector<double> axis_wavenumbers(const Grid& g) {
    std::vector<double> k(g.n());
    for (int i = 0; i < g.n(); ++i) k[i] = g.k_axis(i);
    return k;
}

void check_finite(const SpectralScalarField& f, const char* what) {
    const double s = kernels::sum_abs2(f.coeffs.data(), f.grid->size());
    if (!std::isfinite(s))
        throw std::runtime_error(std::string("nonlinear_rhs: non-finite ") + what +
                                 " tendency (under-resolved run?)");
}

} // namespace

Tendency nonlinear_rhs(const SimState& state, const ModelParams& params) {
    const auto& gp = state.grid();
    const Grid& g = *gp;
    const std::size_t size = g.size();
    const auto kvals = axis_wavenumbers(g);

    Tendency out{SpectralVectorField(gp), SpectralVectorField(gp),
                 SpectralScalarField(gp)};

    const bool adv = params.advection;
    const bool damp_u = params.damping && params.sigma1 > 0.0;
    const bool damp_v = params.damping && params.sigma2 > 0.0;

    std::array<std::vector<double>, 3> up, vp;
    if (adv || damp_u) up = inverse_transform(state.u);
    if (adv || damp_v) vp = inverse_transform(state.v);

    // physical accumulators per equation
    std::array<std::vector<double>, 3> au, av;
    std::vector<double> at;
    const bool need_au = adv || damp_u;
    const bool need_av = adv || damp_v;
    if (need_au)
        for (auto& a : au) a.assign(size, 0.0);
    if (need_av)
        for (auto& a : av) a.assign(size, 0.0);
    if (adv) at.assign(size, 0.0);

    if (adv) {
        std::vector<Complex> ctmp(size);
        std::vector<double> deriv(size);
        for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < 3; ++i) {
                // d u_i / dx_j feeds (u.grad)u and (v.grad)u
                kernels::apply_ik(ctmp.data(), state.u[i].coeffs.data(),
                                  kvals.data(), g.n(), j);
                inverse_transform_into(g, ctmp.data(), deriv.data());
                kernels::mul_add(up[j].data(), deriv.data(), au[i].data(), size);
                kernels::mul_add(vp[j].data(), deriv.data(), av[i].data(), size);

                // d v_i / dx_j feeds (u.grad)v
                kernels::apply_ik(ctmp.data(), state.v[i].coeffs.data(),
                                  kvals.data(), g.n(), j);
                inverse_transform_into(g, ctmp.data(), deriv.data());
                kernels::mul_add(up[j].data(), deriv.data(), av[i].data(), size);
            }
            kernels::apply_ik(ctmp.data(), state.theta.coeffs.data(), kvals.data(),
                              g.n(), j);
            inverse_transform_into(g, ctmp.data(), deriv.data());
            kernels::mul_add(up[j].data(), deriv.data(), at.data(), size);
        }
    }

    if (damp_u) {
        std::vector<double> dx(size), dy(size), dz(size);
        kernels::damping(up[0].data(), up[1].data(), up[2].data(), params.sigma1,
                         params.alpha, dx.data(), dy.data(), dz.data(), size);
        for (std::size_t i = 0; i < size; ++i) {
            au[0][i] += dx[i];
            au[1][i] += dy[i];
            au[2][i] += dz[i];
        }
    }
    if (damp_v) {
        std::vector<double> dx(size), dy(size), dz(size);
        kernels::damping(vp[0].data(), vp[1].data(), vp[2].data(), params.sigma2,
                         params.beta, dx.data(), dy.data(), dz.data(), size);
        for (std::size_t i = 0; i < size; ++i) {
            av[0][i] += dx[i];
            av[1][i] += dy[i];
            av[2][i] += dz[i];
        }
    }

    // u equation: everything inside the projector
    if (need_au) {
        for (int i = 0; i < 3; ++i) {
            forward_transform_into(g, au[i].data(), out.du[i].coeffs.data());
            dealias_inplace(out.du[i]);
        }
    }
    if (adv) {
        // conservative div(v (x) v): transform the six products, then ik_j
        std::vector<double> prod(size);
        std::vector<Complex> phat(size), dtmp(size);
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                kernels::mul(vp[i].data(), vp[j].data(), prod.data(), size);
                forward_transform_into(g, prod.data(), phat.data());
                kernels::apply_mask(phat.data(), g.dealias_mask().data(), size);
                // d_j p_ij contributes to component i; d_i p_ij to component j
                kernels::apply_ik(dtmp.data(), phat.data(), kvals.data(), g.n(), j);
                for (std::size_t m = 0; m < size; ++m)
                    out.du[i].coeffs[m] += dtmp[m];
                if (j != i) {
                    kernels::apply_ik(dtmp.data(), phat.data(), kvals.data(),
                                      g.n(), i);
                    for (std::size_t m = 0; m < size; ++m)
                        out.du[j].coeffs[m] += dtmp[m];
                }
            }
        }
    }
    if (need_au || adv) {
        out.du = leray_project(out.du);
        for (int i = 0; i < 3; ++i)
            for (auto& c : out.du[i].coeffs) c = -c;
    }

    // v equation
    if (need_av) {
        for (int i = 0; i < 3; ++i) {
            forward_transform_into(g, av[i].data(), out.dv[i].coeffs.data());
            dealias_inplace(out.dv[i]);
        }
    }
    if (params.coupling) {
        std::vector<Complex> ctmp(size);
        for (int i = 0; i < 3; ++i) {
            kernels::apply_ik(ctmp.data(), state.theta.coeffs.data(), kvals.data(),
                              g.n(), i);
            for (std::size_t m = 0; m < size; ++m) out.dv[i].coeffs[m] += ctmp[m];
        }
    }
    for (int i = 0; i < 3; ++i)
        for (auto& c : out.dv[i].coeffs) c = -c;

    // theta equation
    if (adv) {
        forward_transform_into(g, at.data(), out.dtheta.coeffs.data());
        dealias_inplace(out.dtheta);
    }
    if (params.coupling) {
        std::vector<Complex> ctmp(size);
        for (int j = 0; j < 3; ++j) {
            kernels::apply_ik(ctmp.data(), state.v[j].coeffs.data(), kvals.data(),
                              g.n(), j);
            for (std::size_t m = 0; m < size; ++m)
                out.dtheta.coeffs[m] += ctmp[m];
        }
    }
    for (auto& c : out.dtheta.coeffs) c = -c;

    check_finite(out.du[0], "u");
    check_finite(out.dv[0], "v");
    check_finite(out.dtheta, "theta");
    return out;
}

namespace {

using FactorPtr = std::shared_ptr<const std::vector<double>>;

/// e^(-c |k|^2 dt} per mode, cached; the cache resets if an adaptive run
/// floods it with distinct dt values.
FactorPtr diffusion_factor(const Grid& g, double c, double dt) {
    using Key = std::tuple<int, double, double, double>;
    static std::mutex mtx;
    static std::map<Key, FactorPtr> cache;
    const Key key{g.n(), g.box_length(), c, dt};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto f = std::make_shared<std::vector<double>>(g.size());
    const auto& k2 = g.k2();
    for (std::size_t i = 0; i < g.size(); ++i)
        (*f)[i] = std::exp(-c * k2[i] * dt);
    std::lock_guard<std::mutex> lock(mtx);
    if (cache.size() > 64) cache.clear();
    return cache.emplace(key, std::move(f)).first->second;
}

FactorPtr ones_factor(const Grid& g) {
    using Key = std::pair<int, double>;
    static std::mutex mtx;
    static std::map<Key, FactorPtr> cache;
    const Key key{g.n(), g.box_length()};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<std::vector<double>>(g.size(), 1.0);
    return cache.emplace(key, std::move(f)).first->second;
}

void add_diffusion(Tendency& t, const SimState& s, const ModelParams& p) {
    const auto& k2 = s.grid()->k2();
    const std::size_t size = s.grid()->size();
    for (int i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < size; ++m) {
            t.du[i].coeffs[m] -= p.nu * k2[m] * s.u[i].coeffs[m];
            t.dv[i].coeffs[m] -= p.eta * k2[m] * s.v[i].coeffs[m];
        }
    for (std::size_t m = 0; m < size; ++m)
        t.dtheta.coeffs[m] -= p.mu * k2[m] * s.theta.coeffs[m];
}

} // namespace

SimState step(const SimState& state, double dt, const ModelParams& params,
              const StepOptions& opts) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const auto& gp = state.grid();
    const Grid& g = *gp;
    const std::size_t size = g.size();

    FactorPtr eh_u, ef_u, eh_v, ef_v, eh_t, ef_t;
    if (opts.integrating_factor) {
        eh_u = diffusion_factor(g, params.nu, 0.5 * dt);
        ef_u = diffusion_factor(g, params.nu, dt);
        eh_v = diffusion_factor(g, params.eta, 0.5 * dt);
        ef_v = diffusion_factor(g, params.eta, dt);
        eh_t = diffusion_factor(g, params.mu, 0.5 * dt);
        ef_t = diffusion_factor(g, params.mu, dt);
    } else {
        eh_u = ef_u = eh_v = ef_v = eh_t = ef_t = ones_factor(g);
    }

    auto rhs = [&](const SimState& s) {
        Tendency t = nonlinear_rhs(s, params);
        if (!opts.integrating_factor) add_diffusion(t, s, params);
        return t;
    };

    auto fields = [&](SimState& s) {
        return std::array<Complex*, 7>{
            s.u[0].coeffs.data(), s.u[1].coeffs.data(), s.u[2].coeffs.data(),
            s.v[0].coeffs.data(), s.v[1].coeffs.data(), s.v[2].coeffs.data(),
            s.theta.coeffs.data()};
    };
    auto tendency_fields = [&](Tendency& t) {
        return std::array<Complex*, 7>{
            t.du[0].coeffs.data(), t.du[1].coeffs.data(), t.du[2].coeffs.data(),
            t.dv[0].coeffs.data(), t.dv[1].coeffs.data(), t.dv[2].coeffs.data(),
            t.dtheta.coeffs.data()};
    };
    const std::array<const double*, 7> eh{eh_u->data(), eh_u->data(),
                                          eh_u->data(), eh_v->data(),
                                          eh_v->data(), eh_v->data(),
                                          eh_t->data()};
    const std::array<const double*, 7> ef{ef_u->data(), ef_u->data(),
                                          ef_u->data(), ef_v->data(),
                                          ef_v->data(), ef_v->data(),
                                          ef_t->data()};

    SimState base = state; // untouched copy of y_n
    Tendency k1 = rhs(base);

    SimState ys(gp);
    ys.time = state.time + 0.5 * dt;
    auto y = fields(ys);
    auto b = fields(base);
    auto a1 = tendency_fields(k1);
    for (int f = 0; f < 7; ++f)
        kernels::stage_scale_sum(y[f], eh[f], b[f], 0.5 * dt, a1[f], size);
    Tendency k2 = rhs(ys);

    auto a2 = tendency_fields(k2);
    for (int f = 0; f < 7; ++f)
        kernels::stage_scale_add(y[f], eh[f], b[f], 0.5 * dt, a2[f], size);
    Tendency k3 = rhs(ys);

    auto a3 = tendency_fields(k3);
    for (int f = 0; f < 7; ++f)
        kernels::stage_scale_two(y[f], ef[f], b[f], dt, eh[f], a3[f], size);
    ys.time = state.time + dt;
    Tendency k4 = rhs(ys);

    SimState out(gp);
    auto o = fields(out);
    auto a4 = tendency_fields(k4);
    for (int f = 0; f < 7; ++f)
        kernels::stage_final(o[f], ef[f], b[f], dt / 6.0, a1[f], eh[f], a2[f],
                             a3[f], a4[f], size);

    out.u = leray_project(out.u);
    out.time = state.time + dt;
    if (!is_finite(out))
        throw std::runtime_error("step: state became non-finite (NaN propagation)");
    return out;
}

double cfl_dt(const SimState& state, double safety, double cap,
              const ModelParams& params, bool integrating_factor) {
    if (!(safety > 0.0 && safety <= 1.0))
        throw std::invalid_argument("cfl_dt: safety must be in (0, 1]");
    const Grid& g = *state.grid();
    const auto up = inverse_transform(state.u);
    const auto vp = inverse_transform(state.v);
    const double dx = g.dx();
    double dt = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        const double m = std::max(kernels::max_abs(up[axis].data(), g.size()),
                                  kernels::max_abs(vp[axis].data(), g.size()));
        if (m > 0.0) dt = std::min(dt, safety * dx / m);
    }
    if (!integrating_factor) {
        const double kmax = g.dk() * (g.n() / 2);
        const double kmax2 = 3.0 * kmax * kmax;
        dt = std::min(dt, safety / (params.ell() * kmax2));
    }
    if (!std::isfinite(dt)) return cap;
    return std::min(dt, cap);
}

} // namespace tcm
