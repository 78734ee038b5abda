#pragma once

#include <cmath>

namespace spectral {

// Neumaier-compensated accumulator. The inequality slacks evaluated by the
// bounds module sit near zero for saturating spectra, so plain summation
// noise would be visible in the verdicts.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace spectral
