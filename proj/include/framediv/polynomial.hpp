#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "errors.hpp"
#include "spectrum.hpp"

namespace framediv {

struct PolyEval {
    double value;  // P(x)
    double first;  // P'(x)
    double second; // P''(x)
};

// Degree-n monic polynomial stored by its elementary symmetric
// coefficients, so that
//
//   P(x) = x^n - sigma_1 x^{n-1} + sigma_2 x^{n-2} - ... + (-1)^n sigma_n.
//
// sigma_k is stored unsigned; signs are applied at evaluation.
class MonicPolynomial {
public:
    static MonicPolynomial from_sigma(ElementarySymmetricVector ev) {
        MonicPolynomial p;
        p.sigma_ = std::move(ev.sigma);
        return p;
    }

    static MonicPolynomial from_spectrum(const Spectrum& spec) {
        return from_sigma(elementary_symmetric(spec));
    }

    // x^n
    static MonicPolynomial power(int n) {
        MonicPolynomial p;
        p.sigma_.assign(static_cast<size_t>(n), 0.0);
        return p;
    }

    int degree() const { return static_cast<int>(sigma_.size()); }

    // 1-based: sigma(k) = sigma_k.
    double sigma(int k) const { return sigma_[static_cast<size_t>(k - 1)]; }
    const std::vector<double>& sigma_vector() const { return sigma_; }

    void set_sigma(int k, double value) { sigma_[static_cast<size_t>(k - 1)] = value; }

    // coeff[j] is the coefficient of x^j; coeff[n] = 1.
    std::vector<double> signed_coefficients() const {
        const int n = degree();
        std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
        c[n] = 1.0;
        double sign = -1.0;
        for (int k = 1; k <= n; ++k) {
            c[n - k] = sign * sigma_[k - 1];
            sign = -sign;
        }
        return c;
    }

    // Horner evaluation of P, P', P'' in one sweep.
    PolyEval eval_suite(double x) const {
        const std::vector<double> c = signed_coefficients();
        double p = c[degree()];
        double p1 = 0.0;
        double p2 = 0.0;
        for (int j = degree() - 1; j >= 0; --j) {
            p2 = p2 * x + p1;
            p1 = p1 * x + p;
            p = p * x + c[j];
        }
        return {p, p1, 2.0 * p2};
    }

    double operator()(double x) const { return eval_suite(x).value; }

private:
    std::vector<double> sigma_;
};

// P'(lambda_i) = prod_{k != i} (lambda_i - lambda_k). For identity work
// on explicit spectra this product form is the accurate route; Horner
// evaluation is cross-checked against it in the tests.
inline double pprime_product(const Spectrum& spec, int i) {
    const auto& v = spec.values();
    double prod = 1.0;
    for (int k = 0; k < spec.size(); ++k)
        if (k != i) prod *= v[static_cast<size_t>(i)] - v[static_cast<size_t>(k)];
    return prod;
}

// P''(lambda_i) = 2 sum_{m != i} prod_{j != i,m} (lambda_i - lambda_j).
inline double psecond_product(const Spectrum& spec, int i) {
    const auto& v = spec.values();
    const double li = v[static_cast<size_t>(i)];
    double acc = 0.0;
    for (int m = 0; m < spec.size(); ++m) {
        if (m == i) continue;
        double prod = 1.0;
        for (int j = 0; j < spec.size(); ++j)
            if (j != i && j != m) prod *= li - v[static_cast<size_t>(j)];
        acc += prod;
    }
    return 2.0 * acc;
}

inline std::vector<std::complex<double>> companion_roots(const MonicPolynomial& P) {
    const int n = P.degree();
    if (n < 1) throw BadParameters("companion_roots: degree must be >= 1");
    const std::vector<double> c = P.signed_coefficients();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()[i];
    return roots;
}

struct RealRootResult {
    std::vector<double> roots; // ascending
    double max_imag = 0.0;     // largest |Im| seen before projection
};

// Companion-matrix eigensolve followed by two safeguarded Newton steps.
// Newton is skipped where P' is tiny (clustered roots unfold as +-sqrt,
// where the raw eigenvalues are already the right answer to ~sqrt(eps)).
inline RealRootResult real_roots(const MonicPolynomial& P) {
    RealRootResult out;
    double scale = 1.0;
    for (const std::complex<double>& z : companion_roots(P)) {
        out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
        scale = std::max(scale, std::abs(z.real()));
        out.roots.push_back(z.real());
    }
    for (double& r : out.roots) {
        for (int iter = 0; iter < 2; ++iter) {
            const PolyEval e = P.eval_suite(r);
            if (std::abs(e.first) < 1e-10 * (1.0 + std::abs(e.second))) break;
            const double step = e.value / e.first;
            if (std::abs(step) > 1e-3 * scale) break;
            r -= step;
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

} // namespace framediv
