#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace tcm {

/// Periodic cubic grid: n collocation points per axis on a box of side
/// box_length, with the integer wavenumber lattice {-n/2+1, ..., n/2} per
/// axis scaled by 2*pi/box_length.  Carries the 2/3-rule dealias mask and a
/// cache of |k|^(2s) spectral weights shared by the norm routines.
class Grid {
public:
    Grid(int n, double box_length = 2.0 * std::numbers::pi);

    static std::shared_ptr<const Grid> make(int n,
                                            double box_length = 2.0 * std::numbers::pi);

    int n() const { return n_; }
    std::size_t size() const { return size_; }
    double box_length() const { return box_length_; }
    double box_volume() const { return box_volume_; }
    double cell_volume() const { return cell_volume_; }
    double dx() const { return box_length_ / n_; }
    /// Wavenumber spacing 2*pi/box_length.
    double dk() const { return dk_; }

    /// Integer wavenumber for a storage index along one axis.  Index n/2 maps
    /// to +n/2 (the self-conjugate mode).
    int k_int(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }
    double k_axis(int idx) const { return k_int(idx) * dk_; }

    /// Largest integer |k_i| kept by the 2/3 rule, floor(n/3).
    int dealias_cutoff() const { return cutoff_; }

    /// |k|^2 (scaled wavenumbers) per flat mode index.
    const std::vector<double>& k2() const { return k2_; }
    /// 1 where the mode survives dealiasing, 0 elsewhere.
    const std::vector<std::uint8_t>& dealias_mask() const { return mask_; }

    /// Cached |k|^(2s) weights; the k=0 entry is 1 for s=0 and 0 otherwise,
    /// so homogeneous norms and Lambda^s multipliers share one table.
    std::shared_ptr<const std::vector<double>> lambda_weights(double s) const;

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }

private:
    int n_;
    double box_length_;
    double dk_;
    double box_volume_;
    double cell_volume_;
    std::size_t size_;
    int cutoff_;
    std::vector<double> k2_;
    std::vector<std::uint8_t> mask_;
    mutable std::mutex weights_mutex_;
    mutable std::map<double, std::shared_ptr<const std::vector<double>>> weights_;
};

/// Fields interoperate when their grids agree in resolution and box size.
bool same_grid(const Grid& a, const Grid& b);

} // namespace tcm
