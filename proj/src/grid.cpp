#include "tcm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace tcm {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

Grid::Grid(int n, double box_length) : n_(n), box_length_(box_length) {
    if (!power_of_two(n) || n < 8)
        throw std::invalid_argument("grid: n must be a power of two >= 8");
    if (!(box_length > 0.0))
        throw std::invalid_argument("grid: box_length must be positive");

    dk_ = 2.0 * std::numbers::pi / box_length_;
    box_volume_ = box_length_ * box_length_ * box_length_;
    size_ = static_cast<std::size_t>(n_) * n_ * n_;
    cell_volume_ = box_volume_ / static_cast<double>(size_);
    cutoff_ = n_ / 3;

    k2_.resize(size_);
    mask_.resize(size_);
    std::size_t idx = 0;
    for (int ix = 0; ix < n_; ++ix) {
        const int kx = k_int(ix);
        for (int iy = 0; iy < n_; ++iy) {
            const int ky = k_int(iy);
            for (int iz = 0; iz < n_; ++iz, ++idx) {
                const int kz = k_int(iz);
                const double kk =
                    static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                    static_cast<double>(kz) * kz;
                k2_[idx] = kk * dk_ * dk_;
                mask_[idx] = (std::abs(kx) <= cutoff_ && std::abs(ky) <= cutoff_ &&
                              std::abs(kz) <= cutoff_)
                                 ? 1
                                 : 0;
            }
        }
    }
}

std::shared_ptr<const Grid> Grid::make(int n, double box_length) {
    return std::make_shared<const Grid>(n, box_length);
}

std::shared_ptr<const std::vector<double>> Grid::lambda_weights(double s) const {
    {
        std::lock_guard<std::mutex> lock(weights_mutex_);
        auto it = weights_.find(s);
        if (it != weights_.end()) return it->second;
    }
    auto w = std::make_shared<std::vector<double>>(size_);
    if (s == 0.0) {
        // |k|^0 with the DC mode passing through
        for (std::size_t i = 0; i < size_; ++i) (*w)[i] = 1.0;
    } else {
        for (std::size_t i = 0; i < size_; ++i)
            (*w)[i] = k2_[i] > 0.0 ? std::pow(k2_[i], s) : 0.0;
    }
    std::lock_guard<std::mutex> lock(weights_mutex_);
    auto [it, inserted] = weights_.emplace(s, std::move(w));
    return it->second;
}

bool same_grid(const Grid& a, const Grid& b) {
    return &a == &b || (a.n() == b.n() && a.box_length() == b.box_length());
}

} // namespace tcm
