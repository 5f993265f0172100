#pragma once

#include <cmath>

#include "hurstlab/errors.hpp"

namespace hurstlab {

// Hurst index. Closed-form constants are also defined at the Brownian
// boundary h = 1/2, so the type accepts [1/2, 1); simulation entry points
// additionally require h > 1/2 via `require_rough_above_half`.
class Hurst {
public:
    explicit Hurst(double h) : h_(h) {
        if (!(h >= 0.5) || !(h < 1.0) || !std::isfinite(h))
            throw InvalidArgument("Hurst index must lie in [0.5, 1), got " + std::to_string(h));
    }

    double value() const noexcept { return h_; }

    // Simulation modules call this: the model itself is stated for h > 1/2.
    void require_rough_above_half() const {
        if (h_ <= 0.5)
            throw InvalidArgument("this operation requires Hurst index > 0.5, got " +
                                  std::to_string(h_));
    }

    friend bool operator==(Hurst a, Hurst b) noexcept { return a.h_ == b.h_; }

private:
    double h_;
};

}  // namespace hurstlab
