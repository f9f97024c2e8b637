#include "scorebench/pointscore.hpp"

#include <cmath>
#include <stdexcept>

namespace scorebench::pointscore {

namespace {

void require_domain(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

double power_shifted_div(double p, double y, double mu) {
    if (p == -1.0) {  // Itakura-Saito
        require_domain(y > 0.0 && mu > 0.0, "bregman power_shifted p=-1: needs y, mu > 0");
        const double r = y / mu;
        return r - std::log(r) - 1.0;
    }
    if (p == 0.0) {  // Poisson / KL
        require_domain(y > 0.0 && mu > 0.0, "bregman power_shifted p=0: needs y, mu > 0");
        return y * std::log(y / mu) - y + mu;
    }
    require_domain(y >= 0.0 && mu > 0.0, "bregman power_shifted: needs y >= 0, mu > 0");
    return std::pow(y, p + 2.0) / ((p + 1.0) * (p + 2.0)) - y * std::pow(mu, p + 1.0) / (p + 1.0) +
           std::pow(mu, p + 2.0) / (p + 2.0);
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

BregmanFamily BregmanFamily::power_shifted(double p) {
    if (p == -2.0) throw std::invalid_argument("power_shifted: generator singular at p = -2");
    return {Kind::power_shifted, p};
}

BregmanFamily BregmanFamily::power_abs(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("power_abs: p must be > 1");
    return {Kind::power_abs, p};
}

BregmanFamily BregmanFamily::exp_sq(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("exp_sq: k must be > 0");
    return {Kind::exp_sq, k};
}

BregmanFamily BregmanFamily::poly_heavy(double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("poly_heavy: p must be >= 2");
    return {Kind::poly_heavy, p};
}

std::string BregmanFamily::name() const {
    switch (kind) {
        case Kind::power_shifted: return "power_shifted";
        case Kind::power_abs: return "power_abs";
        case Kind::exp_sq: return "exp_sq";
        case Kind::poly_heavy: return "poly_heavy";
    }
    return "?";
}

BregmanFamily bregman_family_from_name(const std::string& name, double param) {
    if (name == "power_shifted") return BregmanFamily::power_shifted(param);
    if (name == "power_abs") return BregmanFamily::power_abs(param);
    if (name == "exp_sq") return BregmanFamily::exp_sq(param);
    if (name == "poly_heavy") return BregmanFamily::poly_heavy(param);
    throw std::invalid_argument("unknown Bregman family '" + name + "'");
}

double generator(const BregmanFamily& fam, double x) {
    const double p = fam.param;
    switch (fam.kind) {
        case BregmanFamily::Kind::power_shifted:
            require_domain(p != -1.0 && p != 0.0, "generator: power_shifted special cases");
            require_domain(x >= 0.0, "generator power_shifted: needs x >= 0");
            return std::pow(x, p + 2.0) / ((p + 1.0) * (p + 2.0));
        case BregmanFamily::Kind::power_abs:
            return std::pow(std::fabs(x), p) / (p * (p - 1.0));
        case BregmanFamily::Kind::exp_sq:
            return std::exp(p * x * x);
        case BregmanFamily::Kind::poly_heavy:
            require_domain(x >= 0.0, "generator poly_heavy: needs x >= 0");
            return std::pow(x, p) + x * x;
    }
    throw std::logic_error("unreachable");
}

double generator_prime(const BregmanFamily& fam, double x) {
    const double p = fam.param;
    switch (fam.kind) {
        case BregmanFamily::Kind::power_shifted:
            require_domain(p != -1.0 && p != 0.0, "generator_prime: power_shifted special cases");
            require_domain(x >= 0.0, "generator_prime power_shifted: needs x >= 0");
            return std::pow(x, p + 1.0) / (p + 1.0);
        case BregmanFamily::Kind::power_abs:
            return sign(x) * std::pow(std::fabs(x), p - 1.0) / (p - 1.0);
        case BregmanFamily::Kind::exp_sq:
            return 2.0 * p * x * std::exp(p * x * x);
        case BregmanFamily::Kind::poly_heavy:
            require_domain(x >= 0.0, "generator_prime poly_heavy: needs x >= 0");
            return p * std::pow(x, p - 1.0) + 2.0 * x;
    }
    throw std::logic_error("unreachable");
}

double generator_second(const BregmanFamily& fam, double x) {
    const double p = fam.param;
    switch (fam.kind) {
        case BregmanFamily::Kind::power_shifted:
            require_domain(p != -1.0 && p != 0.0, "generator_second: power_shifted special cases");
            require_domain(x > 0.0, "generator_second power_shifted: needs x > 0");
            return std::pow(x, p);
        case BregmanFamily::Kind::power_abs:
            return std::pow(std::fabs(x), p - 2.0);
        case BregmanFamily::Kind::exp_sq:
            return (2.0 * p + 4.0 * p * p * x * x) * std::exp(p * x * x);
        case BregmanFamily::Kind::poly_heavy:
            require_domain(x >= 0.0, "generator_second poly_heavy: needs x >= 0");
            return p * (p - 1.0) * std::pow(x, p - 2.0) + 2.0;
    }
    throw std::logic_error("unreachable");
}

double bregman(const BregmanFamily& fam, double y, double mu) {
    if (!std::isfinite(y) || !std::isfinite(mu)) {
        throw std::domain_error("bregman: non-finite arguments");
    }
    switch (fam.kind) {
        case BregmanFamily::Kind::power_shifted:
            return power_shifted_div(fam.param, y, mu);
        case BregmanFamily::Kind::power_abs:
        case BregmanFamily::Kind::exp_sq:
            break;
        case BregmanFamily::Kind::poly_heavy:
            require_domain(y >= 0.0 && mu >= 0.0, "bregman poly_heavy: needs y, mu >= 0");
            break;
    }
    return generator(fam, y) - generator(fam, mu) - generator_prime(fam, mu) * (y - mu);
}

double expected_bregman(const BregmanFamily& fam, std::span<const double> values,
                        std::span<const double> probs, double c) {
    if (values.size() != probs.size()) {
        throw std::invalid_argument("expected_bregman: values/probs length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(probs[i] >= 0.0)) {
            throw std::invalid_argument("expected_bregman: probabilities must be >= 0");
        }
        if (probs[i] > 0.0) acc += probs[i] * bregman(fam, values[i], c);
    }
    return acc;
}

double expected_bregman(const BregmanFamily& fam, const GriddedForecast& q, double c) {
    return expected_bregman(fam, q.grid().centers(), q.pmf(), c);
}

PinballLoss::PinballLoss(double tau_) : tau(tau_) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("PinballLoss: tau must lie in (0,1)");
}

double PinballLoss::operator()(double y, double q) const {
    return pinball(tau, y, q);
}

double pinball(double tau, double y, double q) {
    return y >= q ? tau * (y - q) : (1.0 - tau) * (q - y);
}

double elicit_optimum(const std::function<double(double y, double c)>& loss,
                      std::span<const double> samples, const SearchBracket& search) {
    if (!(search.lo < search.hi)) throw std::invalid_argument("elicit_optimum: lo must be < hi");
    if (!(search.tol > 0.0)) throw std::invalid_argument("elicit_optimum: tol must be > 0");
    if (samples.empty()) throw std::invalid_argument("elicit_optimum: empty sample set");

    const auto risk = [&](double c) {
        double acc = 0.0;
        for (double y : samples) acc += loss(y, c);
        const double r = acc / static_cast<double>(samples.size());
        if (!std::isfinite(r)) {
            throw std::runtime_error("elicit_optimum: non-finite loss inside the bracket");
        }
        return r;
    };

    constexpr double kInvPhi = 0.6180339887498949;  // 1/phi
    double lo = search.lo, hi = search.hi;
    double c1 = hi - (hi - lo) * kInvPhi;
    double c2 = lo + (hi - lo) * kInvPhi;
    double f1 = risk(c1), f2 = risk(c2);
    while (hi - lo > search.tol) {
        if (f1 < f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - (hi - lo) * kInvPhi;
            f1 = risk(c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + (hi - lo) * kInvPhi;
            f2 = risk(c2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace scorebench::pointscore
