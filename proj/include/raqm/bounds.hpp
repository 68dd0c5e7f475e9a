#pragma once

#include <array>

namespace raqm::bounds {

struct BoundParams {
    double mu;   // mean photon number of the input coherent pulse, > 0
    double eta;  // retrieval efficiency, in (0, 1]
};

// Solution of the efficiency-aware measure-and-prepare bound.
struct BoundSolution {
    int n_min = 0;        // cutoff photon number
    double gamma = 0.0;   // partial weight assigned at n = n_min, in [0, P(mu, n_min))
    double eta_c = 0.0;   // effective classical efficiency; equals eta
    double bound = 0.0;   // best classical conditional fidelity, in [2/3, 1)
};

// e^{-mu} mu^n / n!, stable for n up to a few hundred.
double poisson_pmf(double mu, int n);

// Per-input-state average fidelities of a measure-and-prepare strategy whose
// measurement basis is (cos(t/2)|U> + e^{i p} sin(t/2)|D>, orthogonal), in
// the fixed six-state order. Each entry is sum_{outcomes} prob * fidelity.
std::array<double, 6> six_state_components(double theta, double phi);

// Equal-weight mean of the six components; 2/3 for every (theta, phi).
double six_state_average(double theta, double phi);

// Best classical storage fidelity for an N-qubit input: (N+1)/(N+2).
double nqubit_bound(int n);

// Classical bound for a weak coherent input with mean photon number mu,
// conditioned on at least one photon:
//   F(mu) = (1/(1-e^{-mu})) [ (1-e^{-mu}-mu+mu^2)/mu^2 - e^{-mu}/2 ].
double coherent_bound(double mu);

// Classical bound that also exploits a retrieval efficiency eta < 1: the
// classical device may discard all registrations below a photon-number
// cutoff n_min and a gamma-fraction of the n_min shell, post-selecting the
// most clonable events while keeping its output rate at eta.
//   n_min = min i with sum_{n >= i+1} P(mu,n) <= (1 - P(mu,0)) eta
//   gamma = (1 - P(mu,0)) eta - sum_{n >= n_min+1} P(mu,n)
//   bound = [ (n_min+1)/(n_min+2) gamma + sum_{n >= n_min+1} (n+1)/(n+2) P(mu,n) ]
//           / [ gamma + sum_{n >= n_min+1} P(mu,n) ]
// The construction makes eta_c == eta identically and collapses to
// coherent_bound(mu) at eta = 1.
BoundSolution coherent_bound_with_efficiency(const BoundParams& params);

struct Margin {
    double difference;  // measured - bound
    double sigmas;      // difference / std_dev
};

Margin margin(double measured_fidelity, double bound, double std_dev);

} // namespace raqm::bounds
