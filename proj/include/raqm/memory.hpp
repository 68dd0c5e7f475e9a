#pragma once

#include "raqm/photonics.hpp"
#include "raqm/qstate.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

namespace raqm::memory {

constexpr int kGridRows = 15;
constexpr int kGridCols = 14;
constexpr int kSlotsPerRow = kGridCols / 2;                // 7
constexpr int kSlotCount = kGridRows * kSlotsPerRow;       // 105

struct CellAddress {
    int row = 0;  // 0..14
    int col = 0;  // 0..13

    bool in_grid() const { return row >= 0 && row < kGridRows && col >= 0 && col < kGridCols; }
    bool operator==(const CellAddress&) const = default;
};

// A dual-rail qubit slot: rail U in column 2k, rail D in column 2k+1 of the
// same row. Slots are indexed row-major, 0..104.
struct QubitSlot {
    CellAddress u_cell;
    CellAddress d_cell;

    // Slot k of `row`, cells (row, 2k) and (row, 2k+1).
    static QubitSlot at(int row, int slot_col);
    static QubitSlot from_index(int index);
    // Slot whose U cell is `u`; throws unless u.col is even.
    static QubitSlot from_u_cell(CellAddress u);

    int row() const { return u_cell.row; }
    int slot_col() const { return u_cell.col / 2; }
    int index() const { return row() * kSlotsPerRow + slot_col(); }

    bool operator==(const QubitSlot&) const = default;
};

// Per-cell intrinsic retrieval efficiency, defined at the reference storage
// time t_ref at which it was measured or configured.
class EfficiencyMap {
public:
    EfficiencyMap(std::array<std::array<double, kGridCols>, kGridRows> eta, double t_ref_us);

    // Radially symmetric map eta_edge + (eta_center - eta_edge) e^{-r^2/2s^2},
    // r the distance from the grid center normalized to the farthest corner,
    // s fixed so the corner lands within 1e-3 of eta_edge. t_ref = 1.38 us.
    static EfficiencyMap gaussian(double eta_center, double eta_edge);
    static EfficiencyMap uniform(double eta, double t_ref_us = kDefaultTRefUs);

    // CSV: one `# t_ref_us=<v>` header line (other # lines are skipped),
    // then 15 rows of 14 comma-separated values.
    static EfficiencyMap load_csv(std::istream& in);
    static EfficiencyMap load_csv_file(const std::string& path);
    void save_csv(std::ostream& out) const;

    double at(CellAddress cell) const;
    double t_ref_us() const { return t_ref_us_; }

    static constexpr double kDefaultTRefUs = 1.38;

private:
    std::array<std::array<double, kGridCols>, kGridRows> eta_;
    double t_ref_us_;
};

struct MemoryParams {
    double tau_us = 27.8;             // 1/e decay time of the stored excitation
    double larmor_period_us = 1.38;   // retrieval revives at integer multiples
    double p_dep = 0.0;               // depolarization applied at read
    double dphi_rad_per_us = 0.0;     // differential rail phase drift
    double crosstalk_eps = 0.0;       // white-noise weight leaked to neighbors

    void validate() const;
};

// Larmor envelope: cos^2(pi t / T_L), maxima at integer multiples of T_L.
double larmor_envelope(double t_us, double larmor_period_us);

// eta_cell * exp(-(t - t_ref)/tau) * larmor_envelope(t), clamped to [0, 1].
// t is the storage duration.
double retrieval_efficiency(const EfficiencyMap& map, CellAddress cell, double t_us,
                            const MemoryParams& params);

struct StoredExcitation {
    QubitSlot slot;
    DensityMatrix state;
    double write_time_us = 0.0;
};

struct ReadResult {
    DensityMatrix conditional_state;
    double retrieval_prob = 0.0;
};

// Rail-asymmetric loss + differential phase + depolarization, conditioned on
// retrieval. With A = diag(sqrt(eta_u), sqrt(eta_d) e^{i phi}):
//   conditional = depolarize(A rho A^dag / tr, p_dep), retrieval_prob = tr.
// A zero-probability read yields the maximally mixed conditional state.
ReadResult apply_storage_channel(const DensityMatrix& rho, double eta_u, double eta_d,
                                 double dphi_rad, double p_dep);

// p such that the balanced-rail conditional fidelity 1 - p/2 equals the
// target: p = 2 (1 - target), target in (0.5, 1].
double calibrate_depolarization(double target_avg_fidelity);

// The 210-cell array. Mutations are serialized by the caller; independent
// Monte Carlo runs clone independent arrays.
class CellArray {
public:
    CellArray(EfficiencyMap map, MemoryParams params);

    const EfficiencyMap& map() const { return map_; }
    const MemoryParams& params() const { return params_; }

    bool occupied(const QubitSlot& slot) const;

    // Stores the pulse's qubit state; all channel noise is applied at read.
    const StoredExcitation& write(const QubitSlot& slot, const photonics::CoherentPulse& input,
                                  double time_us);

    // Applies the storage channel over the elapsed time and frees the slot.
    ReadResult read(const QubitSlot& slot, double time_us);

    // Mixes white noise of weight eps into slots adjacent to `addressed`
    // (same row +/- one slot column, same slot column +/- one row).
    void apply_crosstalk(const QubitSlot& addressed, double eps);

private:
    EfficiencyMap map_;
    MemoryParams params_;
    std::array<std::optional<StoredExcitation>, kSlotCount> slots_;
};

} // namespace raqm::memory
