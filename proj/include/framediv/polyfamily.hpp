#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "spectrum.hpp"

namespace framediv {

// One-parameter polynomial family P(x)(t) = Q(x) + t, where Q is monic
// of degree n with Q(0) = 0. Shifting t slides the graph vertically, so
// the root structure of every family member is read off the critical
// profile of Q.

struct Interval {
    double lo;
    double hi;
    bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
};

// Critical points xi_1 < ... < xi_{n-1} of Q with their values and
// max/min classification.
//   m_lower: smallest local maximum value of Q (+inf when no maximum)
//   m_upper: largest local minimum value of Q  (-inf when no minimum)
struct CriticalProfile {
    std::vector<double> xi;
    std::vector<double> q_values;
    std::vector<bool> is_max;
    double m_lower = std::numeric_limits<double>::infinity();
    double m_upper = -std::numeric_limits<double>::infinity();
};

namespace detail {

// Monic polynomial from a signed coefficient vector c[0..m] (c[m] != 0),
// normalized by the leading coefficient.
inline MonicPolynomial monic_from_coefficients(std::vector<double> c) {
    const int m = static_cast<int>(c.size()) - 1;
    const double lead = c[static_cast<size_t>(m)];
    ElementarySymmetricVector ev;
    ev.sigma.resize(static_cast<size_t>(m));
    double sign = -1.0;
    for (int k = 1; k <= m; ++k) {
        ev.sigma[static_cast<size_t>(k - 1)] = sign * c[static_cast<size_t>(m - k)] / lead;
        sign = -sign;
    }
    return MonicPolynomial::from_sigma(std::move(ev));
}

inline MonicPolynomial derivative_monic(const MonicPolynomial& P) {
    const std::vector<double> c = P.signed_coefficients();
    std::vector<double> d(c.size() - 1, 0.0);
    for (size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
    return monic_from_coefficients(std::move(d));
}

} // namespace detail

inline CriticalProfile critical_profile(const MonicPolynomial& Q) {
    const int n = Q.degree();
    if (n < 2) throw BadParameters("critical_profile: degree must be >= 2");
    const MonicPolynomial dq = detail::derivative_monic(Q);
    const RealRootResult rr = real_roots(dq);
    double scale = 1.0;
    for (double x : rr.roots) scale = std::max(scale, std::abs(x));
    if (rr.max_imag > 1e-7 * scale)
        throw DegenerateCriticalPoints("critical_profile: Q' has non-real roots");
    for (size_t i = 0; i + 1 < rr.roots.size(); ++i)
        if (rr.roots[i + 1] - rr.roots[i] < 1e-7 * scale)
            throw DegenerateCriticalPoints("critical_profile: Q' has a non-simple root");

    CriticalProfile profile;
    profile.xi = rr.roots;
    for (double x : rr.roots) {
        const PolyEval e = Q.eval_suite(x);
        if (std::abs(e.second) < 1e-9 * scale)
            throw DegenerateCriticalPoints("critical_profile: Q'' vanishes at a critical point");
        profile.q_values.push_back(e.value);
        profile.is_max.push_back(e.second < 0.0);
        if (e.second < 0.0)
            profile.m_lower = std::min(profile.m_lower, e.value);
        else
            profile.m_upper = std::max(profile.m_upper, e.value);
    }
    return profile;
}

// [-M, -m] where M is the smallest local maximum value and m the largest
// local minimum value: exactly the t for which Q + t keeps n real roots.
inline Interval admissible_interval(const CriticalProfile& profile) {
    const Interval iv{-profile.m_lower, -profile.m_upper};
    if (iv.lo > iv.hi)
        throw EmptyInterval("admissible_interval: inverted thresholds, no t admits full real spectrum");
    return iv;
}

struct ShiftFamily {
    MonicPolynomial Q;
    Interval t_range;
    CriticalProfile profile;

    static ShiftFamily from_base(MonicPolynomial q) {
        const int n = q.degree();
        if (std::abs(q.sigma(n)) > 0.0)
            throw BadParameters("ShiftFamily: Q must satisfy Q(0) = 0 (zero constant coefficient)");
        ShiftFamily fam;
        fam.profile = critical_profile(q);
        fam.t_range = admissible_interval(fam.profile);
        fam.Q = std::move(q);
        return fam;
    }

    // Family member at parameter t: Q(x) + t, i.e. sigma_n = (-1)^n t.
    MonicPolynomial member(double t) const {
        MonicPolynomial p = Q;
        const int n = p.degree();
        p.set_sigma(n, (n % 2 == 0 ? 1.0 : -1.0) * t);
        return p;
    }
};

struct RootsAt {
    std::vector<double> roots;     // ascending, cluster means duplicated
    std::vector<int> multiplicity; // per entry
    int max_multiplicity = 1;
};

// All n real roots of Q + t. Roots closer than the cluster tolerance are
// merged and reported with their multiplicity; double roots unfold as
// +-sqrt(offset), so 1e-6 spacing corresponds to ~1e-12 in t.
inline RootsAt roots_at(const ShiftFamily& family, double t) {
    const MonicPolynomial p = family.member(t);
    const RealRootResult rr = real_roots(p);
    double scale = 1.0;
    for (double r : rr.roots) scale = std::max(scale, std::abs(r));
    if (rr.max_imag > 1e-6 * scale)
        throw ComplexRootsDetected("roots_at: complex roots detected (t outside admissible interval?)");

    const double cluster_tol = 1e-6 * scale;
    RootsAt out;
    size_t i = 0;
    while (i < rr.roots.size()) {
        size_t j = i + 1;
        double acc = rr.roots[i];
        while (j < rr.roots.size() && rr.roots[j] - rr.roots[j - 1] < cluster_tol) {
            acc += rr.roots[j];
            ++j;
        }
        const int mult = static_cast<int>(j - i);
        const double mean = acc / mult;
        for (int k = 0; k < mult; ++k) {
            out.roots.push_back(mean);
            out.multiplicity.push_back(mult);
        }
        out.max_multiplicity = std::max(out.max_multiplicity, mult);
        i = j;
    }
    return out;
}

enum class Endpoint { lower, upper };

struct BlowupSample {
    double offset;               // delta
    double t;
    std::vector<double> roots;   // ascending
    std::vector<double> ratios;  // P''(lambda_i)/P'(lambda_i)^2
};

struct BlowupScan {
    Endpoint endpoint;
    double endpoint_t = 0.0;
    bool at_threshold = false;     // endpoint coincides with -M / -m
    std::vector<int> merging;      // sorted root indices that collide at the threshold
    std::vector<BlowupSample> samples; // ordered by decreasing offset
    bool divergent = false;
    int divergence_sign = 0;       // -1 at lower endpoint, +1 at upper
    double max_flagged_abs = 0.0;  // |ratio| of flagged entries at smallest offset
    double nonflagged_variation = 0.0; // relative drift over the last offset decade
};

inline std::vector<double> default_blowup_offsets() {
    std::vector<double> offsets;
    for (double expo = -2.0; expo >= -6.0 - 1e-12; expo -= 0.25)
        offsets.push_back(std::pow(10.0, expo));
    return offsets;
}

// Scans t inward from one endpoint of the admissible interval and tracks
// P''(lambda_i)/P'(lambda_i)^2 per root. At a threshold endpoint the
// merging pair diverges with a definite sign (negative at the lower
// endpoint where roots collide at a local maximum of Q, positive at the
// upper endpoint); everything else must stay put. The divergence proxy is
// |ratio| > 1e3 at offset 1e-6, the matching sign, and monotone growth
// over the last three offset decades.
inline BlowupScan endpoint_blowup_scan(const ShiftFamily& family, Endpoint endpoint,
                                       std::vector<double> offsets = default_blowup_offsets()) {
    if (offsets.empty()) throw BadParameters("endpoint_blowup_scan: no offsets");
    std::sort(offsets.begin(), offsets.end(), std::greater<double>());
    for (double d : offsets)
        if (d <= 0.0) throw BadParameters("endpoint_blowup_scan: offsets must be positive");

    const Interval admissible = admissible_interval(family.profile);
    BlowupScan scan;
    scan.endpoint = endpoint;
    scan.endpoint_t = (endpoint == Endpoint::lower) ? family.t_range.lo : family.t_range.hi;
    const double threshold = (endpoint == Endpoint::lower) ? admissible.lo : admissible.hi;
    const double tol = 1e-9 * (1.0 + std::abs(threshold));
    scan.at_threshold = std::isfinite(threshold) && std::abs(scan.endpoint_t - threshold) <= tol;

    if (scan.at_threshold) {
        const RootsAt at = roots_at(family, threshold);
        for (size_t i = 0; i < at.multiplicity.size(); ++i)
            if (at.multiplicity[i] >= 2) scan.merging.push_back(static_cast<int>(i));
    }

    const double direction = (endpoint == Endpoint::lower) ? 1.0 : -1.0;
    for (double delta : offsets) {
        BlowupSample sample;
        sample.offset = delta;
        sample.t = scan.endpoint_t + direction * delta;
        const MonicPolynomial p = family.member(sample.t);
        const RootsAt roots = roots_at(family, sample.t);
        sample.roots = roots.roots;
        for (double r : sample.roots) {
            const PolyEval e = p.eval_suite(r);
            sample.ratios.push_back(e.second / (e.first * e.first));
        }
        scan.samples.push_back(std::move(sample));
    }

    auto sample_at = [&](double delta) -> const BlowupSample& {
        size_t best = 0;
        for (size_t i = 1; i < scan.samples.size(); ++i)
            if (std::abs(std::log10(scan.samples[i].offset / delta)) <
                std::abs(std::log10(scan.samples[best].offset / delta)))
                best = i;
        return scan.samples[best];
    };

    const BlowupSample& finest = scan.samples.back();
    auto is_flagged = [&](int idx) {
        return std::find(scan.merging.begin(), scan.merging.end(), idx) != scan.merging.end();
    };

    if (!scan.merging.empty()) {
        const int expected_sign = (endpoint == Endpoint::lower) ? -1 : +1;
        bool ok = true;
        const BlowupSample& s4 = sample_at(1e-4);
        const BlowupSample& s5 = sample_at(1e-5);
        for (int idx : scan.merging) {
            const double r = finest.ratios[static_cast<size_t>(idx)];
            scan.max_flagged_abs = std::max(scan.max_flagged_abs, std::abs(r));
            if (std::abs(r) < 1e3) ok = false;
            if (expected_sign * r <= 0.0) ok = false;
            const double a4 = std::abs(s4.ratios[static_cast<size_t>(idx)]);
            const double a5 = std::abs(s5.ratios[static_cast<size_t>(idx)]);
            if (!(a4 < a5 && a5 < std::abs(r))) ok = false;
        }
        scan.divergent = ok;
        scan.divergence_sign = ok ? expected_sign : 0;
    }

    // Non-flagged entries: relative drift between the two finest decades.
    const BlowupSample& coarser = sample_at(finest.offset * 10.0);
    for (size_t i = 0; i < finest.ratios.size(); ++i) {
        if (is_flagged(static_cast<int>(i))) continue;
        const double now = finest.ratios[i];
        const double before = coarser.ratios[i];
        scan.nonflagged_variation =
            std::max(scan.nonflagged_variation, std::abs(now - before) / std::max(1.0, std::abs(now)));
    }
    return scan;
}

// Root trajectories over an explicit t grid, with the second-order ratio
// per root. Used for continuity and interlacing checks.
struct RootPath {
    std::vector<double> t_samples;
    std::vector<std::vector<double>> roots;
    std::vector<std::vector<double>> ratios;
};

inline RootPath track_roots(const ShiftFamily& family, const std::vector<double>& ts) {
    RootPath path;
    for (double t : ts) {
        const RootsAt r = roots_at(family, t);
        const MonicPolynomial p = family.member(t);
        std::vector<double> ratios;
        for (double x : r.roots) {
            const PolyEval e = p.eval_suite(x);
            ratios.push_back(e.second / (e.first * e.first));
        }
        path.t_samples.push_back(t);
        path.roots.push_back(r.roots);
        path.ratios.push_back(std::move(ratios));
    }
    return path;
}

} // namespace framediv
