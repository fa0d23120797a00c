#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace weylp {

// Uniform evaluation grid start, start+step, ..., through end (inclusive up to
// floating slop in the division).
struct GridSpec {
    double start = 0.0;
    double end = 0.0;
    double step = 1.0;

    GridSpec() = default;
    GridSpec(double start_, double end_, double step_) : start(start_), end(end_), step(step_) {
        if (!(step > 0.0)) throw std::invalid_argument("GridSpec: step must be positive");
        if (!(start <= end)) throw std::invalid_argument("GridSpec: start must be <= end");
    }

    std::int64_t count() const {
        return static_cast<std::int64_t>(std::floor((end - start) / step + 1e-9)) + 1;
    }
    double point(std::int64_t i) const { return start + static_cast<double>(i) * step; }

    std::vector<double> points() const {
        std::vector<double> out(static_cast<std::size_t>(count()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(static_cast<std::int64_t>(i));
        return out;
    }
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace weylp
