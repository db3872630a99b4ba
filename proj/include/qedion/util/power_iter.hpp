#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace qedion {

// Deterministic splitmix-style stream for reproducible start vectors.
struct DetRng {
    std::uint64_t s;
    explicit DetRng(std::uint64_t seed) : s(seed + 0x9e3779b97f4a7c15ull) {}
    double next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return (double)(z >> 11) / 9007199254740992.0 - 0.5;
    }
};

// Largest singular value of T via power iteration on T*T. The caller
// provides the vector algebra through functors; `start` must be nonzero.
//
// Power iteration approaches sigma_max from below, which is the
// conservative side when certifying measured <= bound.
template <class Vec>
double largest_singular_value(const std::function<Vec(const Vec&)>& applyT,
                              const std::function<Vec(const Vec&)>& applyTadj, Vec start,
                              const std::function<double(const Vec&)>& norm,
                              const std::function<void(Vec&, double)>& scale, double tol = 1e-10,
                              int max_iter = 400) {
    double n0 = norm(start);
    if (n0 == 0.0) return 0.0;
    scale(start, 1.0 / n0);
    double sigma = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = applyT(start);
        const double s = norm(w);
        if (s == 0.0) return 0.0;
        Vec v2 = applyTadj(w);
        const double n2 = norm(v2);
        if (n2 == 0.0) return s;
        scale(v2, 1.0 / n2);
        start = std::move(v2);
        if (std::abs(s - sigma) <= tol * std::max(1.0, s) && it > 4) return s;
        sigma = s;
    }
    return sigma;
}

}  // namespace qedion
