#include "tcm/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "tcm/diagnostics.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/transform.hpp"

namespace tcm::lab {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void require_norm_index(double p, const char* what) {
    if (!(p >= 1.0))
        throw std::invalid_argument(std::string(what) + ": integrability index < 1");
}

double holder_gap(double p, double p1, double q1) {
    return std::abs(inv(p) - inv(p1) - inv(q1));
}

/// ||L^s f||_p with the convention that s = 0 is a plain L^p norm.
double lambda_lp(const SpectralScalarField& f, double s, double p) {
    require_norm_index(p, "lambda_lp");
    if (s == 0.0) return lp_norm(f, p);
    return lp_norm(lambda_pow(f, s), p);
}

SpectralScalarField pointwise_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g) {
    require_same_grid(f, g);
    const auto a = inverse_transform(f);
    const auto b = inverse_transform(g);
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
    return forward_transform(f.grid, prod);
}

SpectralScalarField partial_derivative(const SpectralScalarField& f,
                                       std::array<int, 3> multi) {
    SpectralScalarField out = f;
    for (int axis = 0; axis < 3; ++axis)
        for (int rep = 0; rep < multi[axis]; ++rep) out = gradient(out)[axis];
    return out;
}

} // namespace

double gn_solve_kappa(double s, double p, double m, double q, double l,
                      double r) {
    if (!(m >= 0.0) || !(s >= 0.0) || !(s <= l) || !(m <= l))
        throw std::invalid_argument("gn_solve_kappa: need 0 <= m, s <= l");
    require_norm_index(q, "gn_solve_kappa");
    require_norm_index(r, "gn_solve_kappa");
    require_norm_index(p, "gn_solve_kappa");

    const double lhs = s / 3.0 - inv(p);
    const double a = m / 3.0 - inv(q);
    const double b = l / 3.0 - inv(r);
    const double den = b - a;
    const double num = lhs - a;
    constexpr double tiny = 1e-14;

    double kappa;
    if (std::abs(den) < tiny) {
        if (std::abs(num) < tiny)
            kappa = 0.0; // degenerate endpoint, any weight works
        else
            throw std::invalid_argument(
                "gn_solve_kappa: inadmissible exponent combination (no solution)");
    } else {
        kappa = num / den;
    }
    if (kappa < -1e-12 || kappa > 1.0 + 1e-12)
        throw std::invalid_argument("gn_solve_kappa: kappa outside [0, 1]");
    kappa = std::clamp(kappa, 0.0, 1.0);
    if (std::isinf(p) && (kappa <= 0.0 || kappa >= 1.0))
        throw std::invalid_argument(
            "gn_solve_kappa: p = infinity requires kappa strictly inside (0, 1)");
    return kappa;
}

GNInstance make_gn_instance(std::string name, double s, double p, double m,
                            double q, double l, double r) {
    GNInstance inst{std::move(name), s, p, m, q, l, r, 0.0};
    inst.kappa = gn_solve_kappa(s, p, m, q, l, r);
    return inst;
}

double gn_ratio(const SpectralScalarField& f, const GNInstance& inst) {
    const double num = lambda_lp(f, inst.s, inst.p);
    const double dm = lambda_lp(f, inst.m, inst.q);
    const double dl = lambda_lp(f, inst.l, inst.r);
    const double den =
        std::pow(dm, 1.0 - inst.kappa) * std::pow(dl, inst.kappa);
    if (!(den > 0.0))
        throw std::invalid_argument("gn_ratio: zero field");
    return num / den;
}

double kato_ponce_ratio(const SpectralScalarField& f, const SpectralScalarField& g,
                        double s, double p, double p1, double q1, double p2,
                        double q2) {
    if (!(s > 0.0))
        throw std::invalid_argument("kato_ponce_ratio: s must be positive");
    if (holder_gap(p, p1, q1) > 1e-12 || holder_gap(p, p2, q2) > 1e-12)
        throw std::invalid_argument("kato_ponce_ratio: inconsistent exponents");
    const SpectralScalarField fg = pointwise_product(f, g);
    const double lhs = lambda_lp(fg, s, p);
    const double rhs = lp_norm(f, p1) * lambda_lp(g, s, q1) +
                       lp_norm(g, p2) * lambda_lp(f, s, q2);
    if (rhs == 0.0) return 0.0;
    return lhs / rhs;
}

double commutator_ratio(const SpectralScalarField& f, const SpectralScalarField& g,
                        double s, double p, double p1, double q1, double p2,
                        double q2) {
    if (!(s > 0.0))
        throw std::invalid_argument("commutator_ratio: s must be positive");
    if (holder_gap(p, p1, q1) > 1e-12 || holder_gap(p, p2, q2) > 1e-12)
        throw std::invalid_argument("commutator_ratio: inconsistent exponents");

    // [L^s, f] g = L^s(fg) - f L^s g
    const SpectralScalarField lsfg = lambda_pow(pointwise_product(f, g), s);
    const SpectralScalarField flsg = pointwise_product(f, lambda_pow(g, s));
    SpectralScalarField comm = lsfg;
    for (std::size_t i = 0; i < comm.coeffs.size(); ++i)
        comm.coeffs[i] -= flsg.coeffs[i];
    const double lhs = lp_norm(comm, p);

    const SpectralVectorField gf = gradient(f);
    const double grad_f_norm = lp_norm(gf, p1);
    const double rhs = grad_f_norm * lambda_lp(g, s - 1.0, q1) +
                       lp_norm(g, p2) * lambda_lp(f, s, q2);
    if (rhs == 0.0) return 0.0;
    return lhs / rhs;
}

double kozono_bmo_ratio(const SpectralScalarField& f, const SpectralScalarField& g,
                        std::array<int, 3> da, std::array<int, 3> db, double r) {
    if (!(r > 1.0) || std::isinf(r))
        throw std::invalid_argument("kozono_bmo_ratio: r must lie in (1, inf)");
    const int oa = da[0] + da[1] + da[2];
    const int ob = db[0] + db[1] + db[2];
    if (oa < 1 || ob < 1)
        throw std::invalid_argument("kozono_bmo_ratio: multi-indices need order >= 1");

    const SpectralScalarField dfa = partial_derivative(f, da);
    const SpectralScalarField dgb = partial_derivative(g, db);
    const double lhs = lp_norm(pointwise_product(dfa, dgb), r);

    const double order = oa + ob;
    const double rhs = bmo_estimate(f).dyadic * lambda_lp(g, order, r) +
                       bmo_estimate(g).dyadic * lambda_lp(f, order, r);
    if (lhs == 0.0 && rhs == 0.0) return 0.0;
    if (rhs == 0.0) return std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

double linfty_log_ratio(const SpectralScalarField& f, double s) {
    if (!(s > 1.5))
        throw std::invalid_argument("linfty_log_ratio: s must exceed 3/2");
    const double linf = lp_norm(f, lp_infinity);
    const double bmo = bmo_estimate(f).dyadic;
    const double hs = sobolev_norm(f, s, false);
    return linf / (1.0 + bmo * std::log(std::numbers::e + hs));
}

TheoryExponents theory_exponents(double alpha) {
    if (!(alpha > 5.0 / 3.0 && alpha < 4.0))
        throw std::invalid_argument(
            "theory_exponents: alpha must lie in (5/3, 4)");
    TheoryExponents e{};
    e.kappa = (3.0 * alpha - 5.0) / (4.0 * (alpha - 1.0));
    e.delta = (5.0 * alpha - 1.0) / (4.0 * (alpha + 1.0));
    if (!(e.kappa > 0.0 && e.kappa < 1.0))
        throw std::invalid_argument("theory_exponents: kappa left (0, 1)");
    if (!(e.delta > 0.0 && e.delta < 1.0))
        throw std::invalid_argument("theory_exponents: delta left (0, 1)");
    return e;
}

SpectralScalarField random_band_limited_field(const std::shared_ptr<const Grid>& g,
                                              std::uint64_t seed, int band,
                                              double slope) {
    if (band > g->dealias_cutoff())
        throw std::invalid_argument(
            "random_band_limited_field: band exceeds the dealias cutoff");
    SpectralScalarField f(g);
    if (band <= 0) return f;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    // fixed lexicographic order over the half-lattice keeps this reproducible
    for (int kx = -band; kx <= band; ++kx)
        for (int ky = -band; ky <= band; ++ky)
            for (int kz = -band; kz <= band; ++kz) {
                const double k2 = double(kx) * kx + double(ky) * ky +
                                  double(kz) * kz;
                if (k2 == 0.0 || k2 > double(band) * band) continue;
                const bool positive =
                    kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0)));
                if (!positive) continue;
                const double amp = std::pow(std::sqrt(k2), slope);
                const double ph = phase(rng);
                set_hermitian_mode(f, {kx, ky, kz},
                                   amp * Complex{std::cos(ph), std::sin(ph)});
            }
    return f;
}

SpectralVectorField random_band_limited_vector(const std::shared_ptr<const Grid>& g,
                                               std::uint64_t seed, int band,
                                               double slope,
                                               bool divergence_free) {
    SpectralVectorField w(g);
    for (int i = 0; i < 3; ++i)
        w[i] = random_band_limited_field(g, seed + static_cast<std::uint64_t>(i),
                                         band, slope);
    if (divergence_free) w = leray_project(w);
    return w;
}

std::vector<RatioReport> standard_ratio_sweep(const std::shared_ptr<const Grid>& g,
                                              int samples, std::uint64_t seed) {
    struct Entry {
        std::string name;
        std::function<double(const SpectralScalarField&,
                             const SpectralScalarField&)> eval;
    };

    const auto gn_single = make_gn_instance("gn_all_l2", 1, 2, 0, 2, 2, 2);
    // kappa = 1/2 form of the gradient interpolation; the 3/4-exponent
    // variant quoted in places fails the scaling relation and is rejected
    // by gn_solve_kappa, so only this one is swept.
    const auto gn_grad = make_gn_instance("gn_grad_kappa_half", 1, 2, 0, 2, 2, 2);
    const auto gn_damp = make_gn_instance("gn_l9_2_alpha3", 0, 4.5, 0.5, 2, 1, 2);
    const auto gn_linf =
        make_gn_instance("gn_linf_kappa_third", 0, lp_infinity, 1, 2, 2.5, 2);

    std::vector<Entry> entries;
    entries.push_back({gn_single.name, [gn_single](const auto& f, const auto&) {
                           return gn_ratio(f, gn_single);
                       }});
    entries.push_back({gn_grad.name + "_(3/4_variant_rejected)",
                       [gn_grad](const auto& f, const auto&) {
                           return gn_ratio(f, gn_grad);
                       }});
    entries.push_back({gn_damp.name, [gn_damp](const auto& f, const auto&) {
                           return gn_ratio(f, gn_damp);
                       }});
    entries.push_back({gn_linf.name, [gn_linf](const auto& f, const auto&) {
                           return gn_ratio(f, gn_linf);
                       }});
    entries.push_back({"kato_ponce_s1_l2", [](const auto& f, const auto& gg) {
                           return kato_ponce_ratio(f, gg, 1.0, 2.0, lp_infinity,
                                                   2.0, lp_infinity, 2.0);
                       }});
    entries.push_back({"commutator_s1_l2", [](const auto& f, const auto& gg) {
                           return commutator_ratio(f, gg, 1.0, 2.0, lp_infinity,
                                                   2.0, lp_infinity, 2.0);
                       }});
    entries.push_back({"kozono_bmo_dx_dy_r2", [](const auto& f, const auto& gg) {
                           return kozono_bmo_ratio(f, gg, {1, 0, 0}, {0, 1, 0},
                                                   2.0);
                       }});
    entries.push_back({"linfty_log_s2", [](const auto& f, const auto&) {
                           return linfty_log_ratio(f, 2.0);
                       }});

    const int band = std::min(g->dealias_cutoff() / 2, 8);
    std::vector<RatioReport> reports;
    for (const auto& e : entries) {
        RatioReport rep;
        rep.instance = e.name;
        rep.samples = samples;
        rep.seed = seed;
        double sum = 0.0;
        for (int i = 0; i < samples; ++i) {
            const auto f = random_band_limited_field(
                g, seed + 2 * static_cast<std::uint64_t>(i), band, -2.0);
            const auto gg = random_band_limited_field(
                g, seed + 2 * static_cast<std::uint64_t>(i) + 1, band, -2.0);
            const double r = e.eval(f, gg);
            rep.max_ratio = std::max(rep.max_ratio, r);
            sum += r;
        }
        rep.mean_ratio = samples > 0 ? sum / samples : 0.0;
        reports.push_back(std::move(rep));
    }
    return reports;
}

} // namespace tcm::lab
