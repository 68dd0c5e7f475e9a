#pragma once

#include "raqm/qstate.hpp"
#include "raqm/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>

namespace raqm::tomo {

// Measurement bases, one per Bloch axis: Z = {|U>,|D>}, X = {|+>,|->},
// Y = {|s+>,|s->}.
enum class Basis { Z = 0, X = 1, Y = 2 };
constexpr std::array<std::string_view, 3> kBasisNames = {"Z", "X", "Y"};

PureQubit basis_plus_state(Basis b);

struct BasisCounts {
    // Counts are integral when sampled; analytic mode feeds expectation
    // values through the same reconstruction path, hence doubles.
    double n_plus = 0.0;
    double n_minus = 0.0;

    double total() const { return n_plus + n_minus; }
};

struct CountsTable {
    std::array<BasisCounts, 3> basis{};  // indexed by Basis

    BasisCounts& operator[](Basis b) { return basis[static_cast<std::size_t>(b)]; }
    const BasisCounts& operator[](Basis b) const { return basis[static_cast<std::size_t>(b)]; }
};

// CSV rows `basis,n_plus,n_minus`, one per basis.
void save_counts_csv(std::ostream& out, const CountsTable& counts);
CountsTable load_counts_csv(std::istream& in);

// Probability of the +1 outcome of `basis` on rho.
double plus_probability(const DensityMatrix& rho, Basis basis);

// Binomial sampling of `shots` projective measurements.
BasisCounts measure_basis(const DensityMatrix& rho, Basis basis, std::int64_t shots,
                          rng::Stream& stream);

// All three bases with `shots` each; streams split per basis off `key`.
CountsTable measure_all(const DensityMatrix& rho, std::int64_t shots, rng::Key key);

// Exact expectation counts (p * shots), for analytic-mode pipelines.
CountsTable expected_counts(const DensityMatrix& rho, double shots);

// Linear inversion rho = (I + sum_b r_b sigma_b)/2 with
// r_b = (n_plus - n_minus)/(n_plus + n_minus); if |r| > 1 the vector is
// scaled back to the sphere (nearest physical state).
DensityMatrix reconstruct(const CountsTable& counts);

struct TomographyResult {
    DensityMatrix rho;
    double fidelity = 0.0;
    double std_dev = 0.0;
};

// Fidelity of the reconstructed state against `target`, with a
// nonparametric bootstrap standard deviation over per-basis binomial
// resampling.
TomographyResult estimate_fidelity(const CountsTable& counts, const PureQubit& target,
                                   int resamples, rng::Key key);

// Infinite-statistics counterpart: exact fidelity from rho itself plus the
// binomially propagated standard error at the given shot number.
TomographyResult analytic_fidelity(const DensityMatrix& rho, const PureQubit& target,
                                   std::int64_t shots);

// One pass of a storage channel: input pure state in, conditional output
// state and retrieval probability out.
struct ChannelOutput {
    DensityMatrix state;
    double retrieval_prob = 0.0;
};
using StorageChannel = std::function<ChannelOutput(const PureQubit&)>;

struct SixStateResult {
    double mean_fidelity = 0.0;
    double std_dev = 0.0;            // propagated error of the six-state mean
    double mean_retrieval_prob = 0.0;
    std::array<TomographyResult, 6> per_state;
};

// Runs the channel for each of the six complementary inputs and averages
// the per-state fidelities with equal weight: sampled mode tomographs
// `shots` per basis with `resamples` bootstrap draws, analytic mode uses
// exact expectations with propagated errors at the same shot number.
SixStateResult run_six_state(const StorageChannel& channel, std::int64_t shots, int resamples,
                             rng::Key key);
SixStateResult run_six_state_analytic(const StorageChannel& channel, std::int64_t shots);

} // namespace raqm::tomo
