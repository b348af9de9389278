#pragma once

#include <cmath>
#include <cstdint>

namespace pbp {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
};

// Wilson score interval at 95%. Degenerate outcomes (0 or n hits) collapse
// to a zero-width interval so deterministic estimates report exactly 0 or 1.
inline Interval wilson95(int64_t hits, int64_t trials) {
    if (trials <= 0) return {0.0, 1.0};
    if (hits <= 0) return {0.0, 0.0};
    if (hits >= trials) return {1.0, 1.0};
    const double z = 1.959963984540054;
    const double n = double(trials);
    const double phat = double(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

}  // namespace pbp
