#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mirrorboot {

// An ordered collection of finite observations from one population.
// Construction rejects empty input and non-finite values; the hypothesis
// tests additionally require size() >= 2.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty())
            throw std::invalid_argument("Sample: at least one observation required");
        for (double v : values_)
            if (!std::isfinite(v))
                throw std::invalid_argument("Sample: all observations must be finite");
    }

    Sample(std::initializer_list<double> values)
        : Sample(std::vector<double>(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    // The span aliases internal storage, so it must not outlive the Sample;
    // calling values() on a temporary is rejected outright.
    std::span<const double> values() const& noexcept { return values_; }
    std::span<const double> values() const&& = delete;
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double mean() const noexcept {
        double sum = 0.0;
        for (double v : values_) sum += v;
        return sum / static_cast<double>(values_.size());
    }

    // Sample standard deviation with the n-1 denominator; zero for n == 1.
    double sd() const noexcept {
        const std::size_t n = values_.size();
        if (n < 2) return 0.0;
        const double m = mean();
        double ss = 0.0;
        for (double v : values_) {
            const double d = v - m;
            ss += d * d;
        }
        return std::sqrt(ss / static_cast<double>(n - 1));
    }

private:
    std::vector<double> values_;
};

} // namespace mirrorboot
