#include "raqm/tomography.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace raqm::tomo {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bloch component picked up by each basis.
double bloch_component(const BlochVector& r, Basis b) {
    switch (b) {
    case Basis::Z: return r.rz;
    case Basis::X: return r.rx;
    case Basis::Y: return r.ry;
    }
    throw std::logic_error("bloch_component: bad basis");
}

DensityMatrix density_from_counts(const std::array<double, 3>& r_raw) {
    BlochVector r{r_raw[static_cast<std::size_t>(Basis::X)],
                  r_raw[static_cast<std::size_t>(Basis::Y)],
                  r_raw[static_cast<std::size_t>(Basis::Z)]};
    const double n = r.norm();
    if (n > 1.0) {
        // Nearest physical state: pull the vector radially onto the sphere.
        r.rx /= n;
        r.ry /= n;
        r.rz /= n;
    }
    return density_from_bloch(r);
}

double fidelity_from_counts(const std::array<double, 3>& r_raw, const PureQubit& target) {
    return fidelity(target, density_from_counts(r_raw));
}

} // namespace

PureQubit basis_plus_state(Basis b) {
    switch (b) {
    case Basis::Z: return PureQubit(1.0, 0.0);
    case Basis::X: return PureQubit(kInvSqrt2, kInvSqrt2);
    case Basis::Y: return PureQubit(kInvSqrt2, cplx(0.0, kInvSqrt2));
    }
    throw std::logic_error("basis_plus_state: bad basis");
}

void save_counts_csv(std::ostream& out, const CountsTable& counts) {
    out << "basis,n_plus,n_minus\n";
    for (std::size_t b = 0; b < 3; ++b)
        out << kBasisNames[b] << ',' << counts.basis[b].n_plus << ',' << counts.basis[b].n_minus
            << '\n';
}

CountsTable load_counts_csv(std::istream& in) {
    CountsTable counts;
    std::string line;
    bool seen[3] = {false, false, false};
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("basis,", 0) == 0)
            continue;
        std::istringstream fields(line);
        std::string name, plus, minus;
        if (!std::getline(fields, name, ',') || !std::getline(fields, plus, ',') ||
            !std::getline(fields, minus))
            throw std::runtime_error("counts CSV: expected `basis,n_plus,n_minus`");
        int b = -1;
        for (std::size_t k = 0; k < kBasisNames.size(); ++k)
            if (name == kBasisNames[k])
                b = static_cast<int>(k);
        if (b < 0)
            throw std::runtime_error("counts CSV: unknown basis `" + name + "`");
        counts.basis[static_cast<std::size_t>(b)] = BasisCounts{std::stod(plus), std::stod(minus)};
        seen[b] = true;
    }
    if (!seen[0] || !seen[1] || !seen[2])
        throw std::runtime_error("counts CSV: missing basis row");
    return counts;
}

double plus_probability(const DensityMatrix& rho, Basis basis) {
    return fidelity(basis_plus_state(basis), rho);
}

BasisCounts measure_basis(const DensityMatrix& rho, Basis basis, std::int64_t shots,
                          rng::Stream& stream) {
    if (shots <= 0)
        throw std::invalid_argument("measure_basis: shots must be positive");
    const double p = plus_probability(rho, basis);
    const std::int64_t plus = stream.binomial(shots, p);
    return BasisCounts{static_cast<double>(plus), static_cast<double>(shots - plus)};
}

CountsTable measure_all(const DensityMatrix& rho, std::int64_t shots, rng::Key key) {
    CountsTable counts;
    for (std::size_t b = 0; b < 3; ++b) {
        auto stream = key.child(b).stream();
        counts.basis[b] = measure_basis(rho, static_cast<Basis>(b), shots, stream);
    }
    return counts;
}

CountsTable expected_counts(const DensityMatrix& rho, double shots) {
    CountsTable counts;
    for (std::size_t b = 0; b < 3; ++b) {
        const double p = plus_probability(rho, static_cast<Basis>(b));
        counts.basis[b] = BasisCounts{p * shots, (1.0 - p) * shots};
    }
    return counts;
}

DensityMatrix reconstruct(const CountsTable& counts) {
    std::array<double, 3> r{};
    for (std::size_t b = 0; b < 3; ++b) {
        const auto& c = counts.basis[b];
        if (c.n_plus < 0.0 || c.n_minus < 0.0)
            throw std::invalid_argument("reconstruct: negative count");
        if (c.total() <= 0.0)
            throw std::invalid_argument("reconstruct: zero total counts in a basis");
        r[b] = (c.n_plus - c.n_minus) / c.total();
    }
    return density_from_counts(r);
}

TomographyResult estimate_fidelity(const CountsTable& counts, const PureQubit& target,
                                   int resamples, rng::Key key) {
    if (resamples < 100)
        throw std::invalid_argument("estimate_fidelity: need at least 100 resamples");

    TomographyResult result{reconstruct(counts), 0.0, 0.0};
    result.fidelity = fidelity(target, result.rho);

    std::array<double, 3> p_hat{};
    std::array<std::int64_t, 3> totals{};
    for (std::size_t b = 0; b < 3; ++b) {
        p_hat[b] = counts.basis[b].n_plus / counts.basis[b].total();
        totals[b] = static_cast<std::int64_t>(std::llround(counts.basis[b].total()));
    }

    double sum = 0.0, sum2 = 0.0;
    for (int rep = 0; rep < resamples; ++rep) {
        auto stream = key.child(static_cast<std::uint64_t>(rep)).stream();
        std::array<double, 3> r{};
        for (std::size_t b = 0; b < 3; ++b) {
            const auto plus = stream.binomial(totals[b], p_hat[b]);
            r[b] = (2.0 * static_cast<double>(plus) - static_cast<double>(totals[b])) /
                   static_cast<double>(totals[b]);
        }
        const double f = fidelity_from_counts(r, target);
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / resamples;
    const double var = std::max(0.0, (sum2 - resamples * mean * mean) / (resamples - 1));
    result.std_dev = std::sqrt(var);
    return result;
}

TomographyResult analytic_fidelity(const DensityMatrix& rho, const PureQubit& target,
                                   std::int64_t shots) {
    if (shots <= 0)
        throw std::invalid_argument("analytic_fidelity: shots must be positive");

    TomographyResult result{rho, fidelity(target, rho), 0.0};

    // F = (1 + a . r)/2 with a the target's Bloch vector, so
    // var(F) = sum_b a_b^2 p_b (1 - p_b) / N.
    const BlochVector a = bloch_from_density(DensityMatrix::pure(target));
    const std::array<double, 3> a_comp{a.rz, a.rx, a.ry};  // basis order Z, X, Y
    double var = 0.0;
    for (std::size_t b = 0; b < 3; ++b) {
        const double p = plus_probability(rho, static_cast<Basis>(b));
        var += a_comp[b] * a_comp[b] * p * (1.0 - p) / static_cast<double>(shots);
    }
    result.std_dev = std::sqrt(var);
    return result;
}

namespace {

SixStateResult assemble_six_state(const std::array<TomographyResult, 6>& per_state,
                                  const std::array<double, 6>& probs) {
    SixStateResult out;
    out.per_state = per_state;
    double var = 0.0;
    for (std::size_t k = 0; k < 6; ++k) {
        out.mean_fidelity += per_state[k].fidelity;
        out.mean_retrieval_prob += probs[k];
        var += per_state[k].std_dev * per_state[k].std_dev;
    }
    out.mean_fidelity /= 6.0;
    out.mean_retrieval_prob /= 6.0;
    out.std_dev = std::sqrt(var) / 6.0;
    return out;
}

} // namespace

SixStateResult run_six_state(const StorageChannel& channel, std::int64_t shots, int resamples,
                             rng::Key key) {
    const auto inputs = complementary_states();
    std::array<TomographyResult, 6> per_state = {
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0}};
    std::array<double, 6> probs{};
    for (std::size_t k = 0; k < 6; ++k) {
        const ChannelOutput out = channel(inputs[k]);
        probs[k] = out.retrieval_prob;
        const auto counts = measure_all(out.state, shots, key.child(k).child(0));
        per_state[k] = estimate_fidelity(counts, inputs[k], resamples, key.child(k).child(1));
    }
    return assemble_six_state(per_state, probs);
}

SixStateResult run_six_state_analytic(const StorageChannel& channel, std::int64_t shots) {
    const auto inputs = complementary_states();
    std::array<TomographyResult, 6> per_state = {
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0},
        TomographyResult{DensityMatrix::maximally_mixed(), 0, 0}};
    std::array<double, 6> probs{};
    for (std::size_t k = 0; k < 6; ++k) {
        const ChannelOutput out = channel(inputs[k]);
        probs[k] = out.retrieval_prob;
        per_state[k] = analytic_fidelity(out.state, inputs[k], shots);
    }
    return assemble_six_state(per_state, probs);
}

} // namespace raqm::tomo
