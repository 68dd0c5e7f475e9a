#include "raqm/photonics.hpp"

#include <cmath>
#include <stdexcept>

namespace raqm::photonics {

void DetectorModel::validate() const {
    if (quantum_efficiency < 0.0 || quantum_efficiency > 1.0)
        throw std::invalid_argument("DetectorModel: quantum_efficiency outside [0, 1]");
    if (dark_click_prob < 0.0 || dark_click_prob >= 1.0)
        throw std::invalid_argument("DetectorModel: dark_click_prob outside [0, 1)");
    if (coupling_efficiency < 0.0 || coupling_efficiency > 1.0)
        throw std::invalid_argument("DetectorModel: coupling_efficiency outside [0, 1]");
}

int sample_photon_number(double mu, rng::Stream& stream) {
    if (mu < 0.0)
        throw std::invalid_argument("sample_photon_number: mu must be >= 0");
    return stream.poisson(mu);
}

double click_probability(double mean_photons_at_detector, const DetectorModel& det) {
    if (mean_photons_at_detector < 0.0)
        throw std::invalid_argument("click_probability: mean photon number must be >= 0");
    det.validate();
    const double effective = det.quantum_efficiency * det.coupling_efficiency *
                             mean_photons_at_detector;
    return 1.0 - (1.0 - det.dark_click_prob) * std::exp(-effective);
}

} // namespace raqm::photonics
