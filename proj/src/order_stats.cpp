#include "ppmsync/order_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ppmsync {

namespace {

constexpr double kEuler = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * kPi);

void check_rank(std::uint64_t nu, std::uint64_t population) {
    if (nu < 1) throw std::invalid_argument("order statistic rank nu must be >= 1");
    if (population < nu) {
        throw std::invalid_argument("order statistic population G = " + std::to_string(population) +
                                    " is smaller than nu = " + std::to_string(nu));
    }
}

void check_log_population(double log_population) {
    if (!(log_population > 1.0)) {
        throw std::domain_error("Cramer expansion requires ln G > 1 (G >= 3)");
    }
}

// log Phi(x), accurate in both tails.
double log_cdf(double x) {
    if (x < 0.0) return std::log(0.5 * std::erfc(-x / kSqrt2));
    return std::log1p(-0.5 * std::erfc(x / kSqrt2));
}

double log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

// Log-concave density of the nu-th largest of G standard normals.
class OrderStatDensity {
public:
    OrderStatDensity(std::uint64_t nu, std::uint64_t population)
        : below_(static_cast<double>(population - nu)), above_(static_cast<double>(nu - 1)) {
        const double g = static_cast<double>(population);
        log_prefactor_ = std::lgamma(g + 1.0) - std::lgamma(above_ + 1.0) - std::lgamma(below_ + 1.0);
    }

    double log_density(double x) const {
        double v = log_prefactor_ + log_pdf(x);
        if (below_ > 0.0) v += below_ * log_cdf(x);
        if (above_ > 0.0) v += above_ * log_cdf(-x);
        return v;
    }

    double operator()(double x) const { return std::exp(log_density(x)); }

    // First and second derivatives of the log density.
    std::array<double, 2> log_derivatives(double x) const {
        const double lp = log_pdf(x);
        const double r_low = std::exp(lp - log_cdf(x));    // phi / Phi
        const double r_high = std::exp(lp - log_cdf(-x));  // phi / (1 - Phi)
        const double d1 = -x + below_ * r_low - above_ * r_high;
        const double d2 = -1.0 + below_ * (-x * r_low - r_low * r_low) - above_ * (-x * r_high + r_high * r_high);
        return {d1, d2};
    }

private:
    double below_;
    double above_;
    double log_prefactor_ = 0.0;
};

// Half-width beyond which G * P(|Z| > c) < 1e-13; the order statistic lies
// outside [-c, c] with at most that probability.
double truncation_half_width(std::uint64_t population) {
    const double g = static_cast<double>(population);
    double c = 1.0;
    while (g * std::erfc(c / kSqrt2) > 1e-13) c += 0.125;
    return c;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11, &err);
}

Moments scaled(const Moments& std_moments, double mean, double sigma) {
    return {mean + sigma * std_moments.mean, sigma * sigma * std_moments.var};
}

// Cramer's expansion where ln ln G is defined and positive; exact quadrature otherwise.
Moments order_stat_moments(std::uint64_t nu, std::uint64_t population, double mean, double sigma) {
    check_rank(nu, population);
    if (population <= 2) return scaled(order_stat_oracle(nu, population), mean, sigma);
    const OrderStatQuery q{nu, population, mean, sigma};
    return {cramer_mean(q), cramer_var(q)};
}

}  // namespace

HarmonicSums harmonic_sums(std::uint64_t nu) {
    if (nu < 1) throw std::invalid_argument("harmonic_sums: nu must be >= 1");
    HarmonicSums h;
    // Smallest terms first.
    for (std::uint64_t j = nu - 1; j >= 1; --j) {
        const double inv = 1.0 / static_cast<double>(j);
        h.s1 += inv;
        h.s2 += inv * inv;
    }
    return h;
}

double cramer_mean_at(std::uint64_t nu, double log_population, double mean, double sigma) {
    if (nu < 1) throw std::invalid_argument("cramer_mean: nu must be >= 1");
    check_log_population(log_population);
    const double root = std::sqrt(2.0 * log_population);
    const double numerator = std::log(log_population) + std::log(4.0 * kPi) +
                             2.0 * (harmonic_sums(nu).s1 - kEuler);
    return mean + sigma * (root - numerator / (2.0 * root));
}

double cramer_var_at(std::uint64_t nu, double log_population, double sigma) {
    if (nu < 1) throw std::invalid_argument("cramer_var: nu must be >= 1");
    check_log_population(log_population);
    return sigma * sigma / (2.0 * log_population) * (kPi * kPi / 6.0 - harmonic_sums(nu).s2);
}

double cramer_mean(const OrderStatQuery& q) {
    check_rank(q.nu, q.population);
    return cramer_mean_at(q.nu, std::log(static_cast<double>(q.population)), q.mean, q.sigma);
}

double cramer_var(const OrderStatQuery& q) {
    check_rank(q.nu, q.population);
    return cramer_var_at(q.nu, std::log(static_cast<double>(q.population)), q.sigma);
}

Moments order_stat_oracle(std::uint64_t nu, std::uint64_t population) {
    check_rank(nu, population);
    if (population > kMaxOraclePopulation) {
        throw std::invalid_argument("order_stat_oracle: G = " + std::to_string(population) +
                                    " exceeds the supported maximum of " +
                                    std::to_string(kMaxOraclePopulation));
    }
    const OrderStatDensity density(nu, population);
    const double c = truncation_half_width(population);

    // Mode by bisection on the (monotone) derivative of the log density.
    double lo = -c;
    double hi = c;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (density.log_derivatives(mid)[0] > 0.0 ? lo : hi) = mid;
    }
    const double mode = 0.5 * (lo + hi);
    const double curvature = density.log_derivatives(mode)[1];
    const double scale = curvature < 0.0 ? 1.0 / std::sqrt(-curvature) : 1.0;

    // Panels concentrated around the peak so no quadrature rule steps over it.
    std::vector<double> cuts{-c, c};
    for (double k : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        for (double sign : {-1.0, 1.0}) {
            const double x = mode + sign * k * scale;
            if (x > -c && x < c) cuts.push_back(x);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto piecewise = [&](const std::function<double(double)>& f) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1]);
        return total;
    };

    const double mass = piecewise(density);
    const double mean = piecewise([&](double x) { return x * density(x); }) / mass;
    const double var = piecewise([&](double x) {
                           const double d = x - mean;
                           return d * d * density(x);
                       }) / mass;
    return {mean, var};
}

EmpiricalMoments empirical_order_stat(std::uint64_t nu, std::uint64_t population,
                                      std::uint64_t trials, RandomStream& rng) {
    check_rank(nu, population);
    if (trials < 100) throw std::invalid_argument("empirical_order_stat: trials must be >= 100");

    std::vector<double> draws(population);
    const auto rank = static_cast<std::ptrdiff_t>(nu - 1);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (auto& x : draws) x = rng.gaussian();
        std::nth_element(draws.begin(), draws.begin() + rank, draws.end(), std::greater<>());
        const double v = draws[static_cast<std::size_t>(rank)];
        const double delta = v - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (v - mean);
    }
    EmpiricalMoments out;
    out.mean = mean;
    out.var = m2 / static_cast<double>(trials - 1);
    out.se = std::sqrt(out.var / static_cast<double>(trials));
    return out;
}

DominanceReport dominance_report(const CanonicalParams& c) {
    c.check();
    const std::uint64_t m = c.num_positions;
    const std::uint64_t l = c.num_paths;
    if (m < 3) throw std::invalid_argument("dominance_report: M must be >= 3");
    if (l >= m) throw std::invalid_argument("dominance_report: L must be < M");

    const std::uint64_t noise = m - l;
    const double amplitude = c.amplitude();
    DominanceReport r;

    const Moments s1 = order_stat_moments(1, noise, 0.0, 1.0);
    r.mean_S1 = s1.mean;
    r.var_S1 = s1.var;
    if (l <= noise) {
        const Moments sl = order_stat_moments(l, noise, 0.0, 1.0);
        r.mean_SL = sl.mean;
        r.var_SL = sl.var;
    }

    if (l == 1) {
        r.mean_B1 = r.mean_BL = amplitude;
        r.var_B1 = r.var_BL = 1.0;
    } else {
        const Moments b1 = order_stat_moments(1, l, amplitude, 1.0);
        const Moments bl = order_stat_moments(l, l, amplitude, 1.0);
        r.mean_B1 = b1.mean;
        r.var_B1 = b1.var;
        r.mean_BL = bl.mean;
        r.var_BL = bl.var;
    }

    if (r.mean_SL) {
        r.mean_D = *r.mean_SL - r.mean_B1;
        r.var_D = *r.var_SL + r.var_B1;
        if (*r.mean_D > 0.0) {
            r.chebyshev_lower_bound = std::max(0.0, 1.0 - *r.var_D / (*r.mean_D * *r.mean_D));
        }
    }
    return r;
}

LeadingOrderMeans leading_order_means(const CanonicalParams& c) {
    c.check();
    const std::uint64_t l = c.num_paths;
    const std::uint64_t noise = c.num_positions - l;
    if (l < 2 || noise < 2) {
        throw std::invalid_argument("leading_order_means: requires L >= 2 and M - L >= 2");
    }
    const double amplitude = c.amplitude();

    auto leading = [](double log_population, double log_rank) {
        const double root = std::sqrt(2.0 * log_population);
        return root - log_rank / root;
    };
    const double log_noise = std::log(static_cast<double>(noise));
    const double log_l = std::log(static_cast<double>(l));

    LeadingOrderMeans out;
    out.mean_SL = leading(log_noise, log_l);
    out.mean_B1 = amplitude + leading(log_l, 0.0);
    out.mean_S1 = leading(log_noise, 0.0);
    out.mean_BL = amplitude + leading(log_l, log_l);
    return out;
}

PriorCondition prior_condition(const PhysicalParams& p, std::uint64_t num_paths) {
    const ValidationReport report = validate_physical(p);
    if (!report.passed) {
        throw ParameterError(report.failures(), "physical parameters failed validation: " +
                                                    report.failures());
    }
    PriorCondition out;
    out.rhs = std::sqrt(p.symbol_energy * std::log(p.bandwidth * p.k2) /
                        (p.k3 * std::numbers::ln2 * p.bandwidth * p.delay_spread));
    out.holds = static_cast<double>(num_paths) < out.rhs;
    return out;
}

}  // namespace ppmsync
