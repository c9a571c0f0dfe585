#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace framediv {

// Ordered list of n real eigenvalues with a cached distinctness
// certificate. Values are kept sorted ascending; min_gap is the smallest
// pairwise absolute difference. Operations whose formulas have simple
// poles at coincident eigenvalues call require_distinct() first.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 2) throw BadParameters("Spectrum requires n >= 2 eigenvalues");
        std::sort(values_.begin(), values_.end());
        min_gap_ = std::numeric_limits<double>::infinity();
        max_abs_ = 0.0;
        for (size_t i = 0; i < values_.size(); ++i) {
            max_abs_ = std::max(max_abs_, std::abs(values_[i]));
            if (i + 1 < values_.size())
                min_gap_ = std::min(min_gap_, values_[i + 1] - values_[i]);
        }
    }

    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

    double min_gap() const { return min_gap_; }
    double max_abs() const { return max_abs_; }

    // Coincident-eigenvalue rejection threshold, scaled by magnitude.
    double degeneracy_tolerance() const { return 1e-8 * (1.0 + max_abs_); }
    bool distinct() const { return min_gap_ > degeneracy_tolerance(); }

    void require_distinct(const std::string& op) const {
        if (!distinct())
            throw DegenerateSpectrum(op + ": spectrum min_gap " + std::to_string(min_gap_) +
                                     " below degeneracy tolerance");
    }

private:
    std::vector<double> values_;
    double min_gap_;
    double max_abs_;
};

// sigma[k-1] holds the k-th elementary symmetric function of a spectrum.
struct ElementarySymmetricVector {
    std::vector<double> sigma;
    int size() const { return static_cast<int>(sigma.size()); }
};

// Expand prod (x - lambda_i) one root at a time. c[k] carries the signed
// coefficient of x^{m-k} for the processed prefix of m roots, so after
// each step c[k] -= lambda * c[k-1] (processed in decreasing k).
inline ElementarySymmetricVector elementary_symmetric(const Spectrum& spec) {
    const int n = spec.size();
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    c[0] = 1.0;
    int m = 0;
    for (double lambda : spec.values()) {
        ++m;
        for (int k = m; k >= 1; --k) c[k] -= lambda * c[k - 1];
    }
    ElementarySymmetricVector out;
    out.sigma.resize(n);
    double sign = -1.0;
    for (int k = 1; k <= n; ++k) {
        out.sigma[k - 1] = sign * c[k]; // sigma_k = (-1)^k c_k
        sign = -sign;
    }
    return out;
}

// Newton's identities, applied iteratively. Both directions are exact
// polynomial recurrences; the only divisions are by the integer k.
//
//   p_k = sum_{i=1}^{k-1} (-1)^{i-1} sigma_i p_{k-i} + (-1)^{k-1} k sigma_k
inline std::vector<double> power_sums_from_sigma(const std::vector<double>& sigma, int n) {
    const int m = static_cast<int>(sigma.size());
    if (m > n) throw BadParameters("power_sums_from_sigma: m > n");
    std::vector<double> p(m, 0.0);
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i < k; ++i) {
            acc += sign * sigma[i - 1] * p[k - i - 1];
            sign = -sign;
        }
        acc += sign * k * sigma[k - 1];
        p[k - 1] = acc;
    }
    return p;
}

//   sigma_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} sigma_{k-i} p_i,  sigma_0 = 1
inline std::vector<double> sigma_from_power_sums(const std::vector<double>& p, int n) {
    const int m = static_cast<int>(p.size());
    if (m > n) throw BadParameters("sigma_from_power_sums: m > n");
    std::vector<double> sigma(m, 0.0);
    auto sigma_at = [&](int k) { return k == 0 ? 1.0 : sigma[k - 1]; };
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * sigma_at(k - i) * p[i - 1];
            sign = -sign;
        }
        sigma[k - 1] = acc / k;
    }
    return sigma;
}

} // namespace framediv
