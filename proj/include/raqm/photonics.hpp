#pragma once

#include "raqm/qstate.hpp"
#include "raqm/rng.hpp"

namespace raqm::photonics {

// Weak coherent pulse carrying a dual-rail qubit in its single-photon
// component.
struct CoherentPulse {
    double mean_photons;  // nbar, >= 0
    PureQubit state;
};

// Threshold (non-number-resolving) detector and the collection path in
// front of it. coupling_efficiency is the fiber-coupling factor of the
// output path; it is applied here, in the detection pipeline, so intrinsic
// retrieval efficiencies reported elsewhere exclude it.
struct DetectorModel {
    double quantum_efficiency = 1.0;
    double dark_click_prob = 0.0;      // per detection gate
    double coupling_efficiency = 0.65;

    void validate() const;
};

// Poisson(mu) photon number, deterministic given the stream.
int sample_photon_number(double mu, rng::Stream& stream);

// Click probability of a threshold detector seeing a coherent field with
// the given mean photon number at its input:
//   1 - (1 - dark) exp(-qe * coupling * m).
double click_probability(double mean_photons_at_detector, const DetectorModel& det);

} // namespace raqm::photonics
