#pragma once

// Scoring functions for point forecasts: Bregman divergence families (every
// member elicits the mean), the pinball loss (elicits quantiles), and a 1-D
// optimum search for empirical risks.

#include <functional>
#include <span>
#include <string>

#include "scorebench/forecast.hpp"

namespace scorebench::pointscore {

struct BregmanFamily {
    enum class Kind { power_shifted, power_abs, exp_sq, poly_heavy };

    Kind kind;
    double param;

    /// Shifted power family. p = -1 and p = 0 are the Itakura-Saito and
    /// Poisson/KL special cases; the general branch uses exponent p+2.
    /// Requires positive arguments (nonnegative y on the general branch).
    static BregmanFamily power_shifted(double p);

    /// Generator |x|^p / (p(p-1)), p > 1. Defined on all reals.
    static BregmanFamily power_abs(double p);

    /// Generator exp(k x^2), k > 0. Defined on all reals.
    static BregmanFamily exp_sq(double k);

    /// Generator x^p + x^2, p >= 2, on nonnegative arguments.
    static BregmanFamily poly_heavy(double p);

    std::string name() const;
};

BregmanFamily bregman_family_from_name(const std::string& name, double param);

/// D(y, mu) = Phi(y) - Phi(mu) - Phi'(mu)(y - mu). Nonnegative, zero iff
/// y == mu on the family domain; domain violations throw std::domain_error.
double bregman(const BregmanFamily& fam, double y, double mu);

// Generator and derivatives where the family defines them directly
// (power_abs, exp_sq, poly_heavy, and the general power_shifted branch).
double generator(const BregmanFamily& fam, double x);
double generator_prime(const BregmanFamily& fam, double x);
double generator_second(const BregmanFamily& fam, double x);

/// sum_i probs[i] * bregman(fam, values[i], c)
double expected_bregman(const BregmanFamily& fam, std::span<const double> values,
                        std::span<const double> probs, double c);
double expected_bregman(const BregmanFamily& fam, const GriddedForecast& q, double c);

struct PinballLoss {
    double tau;
    explicit PinballLoss(double tau);
    double operator()(double y, double q) const;
};

double pinball(double tau, double y, double q);

struct SearchBracket {
    double lo;
    double hi;
    double tol = 1e-8;
};

/// Golden-section minimizer of the empirical risk (1/n) sum_i loss(y_i, c)
/// over c in [lo, hi]. Assumes the risk is convex in c on the bracket (the
/// loss may have kinks). Deterministic; throws on a non-finite evaluation.
double elicit_optimum(const std::function<double(double y, double c)>& loss,
                      std::span<const double> samples, const SearchBracket& search);

}  // namespace scorebench::pointscore
