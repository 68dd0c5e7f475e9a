#include "raqm/bounds.hpp"

#include "raqm/qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace raqm::bounds {

namespace {

// Photon-number cutoff for the series sums. For mu <= 10 the neglected tail
// is below 1e-15 by a huge margin (P(10, 200) ~ 1e-216).
constexpr int kSeriesCutoff = 200;

double clone_fidelity(int n) { return static_cast<double>(n + 1) / static_cast<double>(n + 2); }

// pmf[0..kSeriesCutoff] by the multiplicative recurrence.
std::vector<double> pmf_table(double mu) {
    std::vector<double> p(kSeriesCutoff + 1);
    p[0] = std::exp(-mu);
    for (int n = 1; n <= kSeriesCutoff; ++n)
        p[n] = p[n - 1] * mu / n;
    return p;
}

} // namespace

double poisson_pmf(double mu, int n) {
    if (mu <= 0.0)
        throw std::invalid_argument("poisson_pmf: mu must be positive");
    if (n < 0)
        throw std::invalid_argument("poisson_pmf: n must be non-negative");
    // Log-space evaluation stays finite well past n = 200.
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

std::array<double, 6> six_state_components(double theta, double phi) {
    const cplx phase(std::cos(phi), std::sin(phi));
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const PureQubit meas_plus(c, phase * s);
    const PureQubit meas_minus(-s, phase * c);

    std::array<double, 6> comp{};
    const auto states = complementary_states();
    for (std::size_t k = 0; k < states.size(); ++k) {
        // Outcome +/- occurs with probability |<m|psi>|^2 and re-prepares |m>,
        // which then overlaps the input with the same probability.
        const double p_plus = meas_plus.overlap(states[k]);
        const double p_minus = meas_minus.overlap(states[k]);
        comp[k] = p_plus * p_plus + p_minus * p_minus;
    }
    return comp;
}

double six_state_average(double theta, double phi) {
    const auto comp = six_state_components(theta, phi);
    double sum = 0.0;
    for (double f : comp)
        sum += f;
    return sum / 6.0;
}

double nqubit_bound(int n) {
    if (n < 1)
        throw std::invalid_argument("nqubit_bound: n must be >= 1");
    return clone_fidelity(n);
}

double coherent_bound(double mu) {
    if (mu <= 0.0)
        throw std::invalid_argument("coherent_bound: mu must be positive");
    // -expm1(-mu) = 1 - e^{-mu} without cancellation for small mu.
    const double one_minus_p0 = -std::expm1(-mu);
    const double emu = std::exp(-mu);
    return ((one_minus_p0 - mu + mu * mu) / (mu * mu) - 0.5 * emu) / one_minus_p0;
}

BoundSolution coherent_bound_with_efficiency(const BoundParams& params) {
    const double mu = params.mu, eta = params.eta;
    if (mu <= 0.0)
        throw std::invalid_argument("coherent_bound_with_efficiency: mu must be positive");
    if (eta <= 0.0 || eta > 1.0)
        throw std::invalid_argument("coherent_bound_with_efficiency: eta must be in (0, 1]");

    const auto pmf = pmf_table(mu);
    if (pmf[kSeriesCutoff] > 1e-15)
        throw std::runtime_error("coherent_bound_with_efficiency: series tail not negligible");

    // Backward tail sums; tail[i] = sum_{n >= i} pmf[n]. Accumulating from the
    // smallest terms keeps them accurate, and using tail[1] (rather than
    // 1 - pmf[0]) as the normalization makes the eta = 1 endpoint exact.
    std::vector<double> tail(kSeriesCutoff + 2, 0.0);
    std::vector<double> weighted_tail(kSeriesCutoff + 2, 0.0);
    for (int n = kSeriesCutoff; n >= 0; --n) {
        tail[n] = tail[n + 1] + pmf[n];
        weighted_tail[n] = weighted_tail[n + 1] + clone_fidelity(n) * pmf[n];
    }

    const double norm = tail[1];
    const double target = norm * eta;

    int n_min = 0;
    while (n_min < kSeriesCutoff && tail[n_min + 1] > target)
        ++n_min;

    BoundSolution sol;
    sol.n_min = n_min;
    sol.gamma = std::max(0.0, target - tail[n_min + 1]);
    sol.eta_c = (sol.gamma + tail[n_min + 1]) / norm;
    sol.bound = (clone_fidelity(n_min) * sol.gamma + weighted_tail[n_min + 1]) /
                (sol.gamma + tail[n_min + 1]);
    return sol;
}

Margin margin(double measured_fidelity, double bound, double std_dev) {
    if (measured_fidelity < 0.0 || measured_fidelity > 1.0)
        throw std::invalid_argument("margin: measured fidelity outside [0, 1]");
    if (bound < 0.0 || bound > 1.0)
        throw std::invalid_argument("margin: bound outside [0, 1]");
    if (std_dev <= 0.0)
        throw std::invalid_argument("margin: std_dev must be positive");
    const double diff = measured_fidelity - bound;
    return Margin{diff, diff / std_dev};
}

} // namespace raqm::bounds
