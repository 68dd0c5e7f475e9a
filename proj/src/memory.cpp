#include "raqm/memory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace raqm::memory {

namespace {

// Designed offset of the farthest corner above eta_edge in the gaussian map.
constexpr double kCornerTol = 1e-3;

void require_slot(const QubitSlot& slot) {
    if (!slot.u_cell.in_grid() || !slot.d_cell.in_grid())
        throw std::out_of_range("QubitSlot: cell outside the 15x14 grid");
    if (slot.u_cell.row != slot.d_cell.row || slot.d_cell.col != slot.u_cell.col + 1 ||
        slot.u_cell.col % 2 != 0)
        throw std::invalid_argument("QubitSlot: rails must be column-adjacent (cols 2k, 2k+1)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

QubitSlot QubitSlot::at(int row, int slot_col) {
    QubitSlot s{CellAddress{row, 2 * slot_col}, CellAddress{row, 2 * slot_col + 1}};
    require_slot(s);
    return s;
}

QubitSlot QubitSlot::from_index(int index) {
    if (index < 0 || index >= kSlotCount)
        throw std::out_of_range("QubitSlot::from_index: index outside 0..104");
    return at(index / kSlotsPerRow, index % kSlotsPerRow);
}

QubitSlot QubitSlot::from_u_cell(CellAddress u) {
    if (!u.in_grid())
        throw std::out_of_range("QubitSlot::from_u_cell: cell outside the grid");
    if (u.col % 2 != 0)
        throw std::invalid_argument("QubitSlot::from_u_cell: U rail must sit in an even column");
    return at(u.row, u.col / 2);
}

EfficiencyMap::EfficiencyMap(std::array<std::array<double, kGridCols>, kGridRows> eta,
                             double t_ref_us)
    : eta_(eta), t_ref_us_(t_ref_us) {
    for (const auto& row : eta_)
        for (double v : row)
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("EfficiencyMap: entry outside [0, 1]");
}

EfficiencyMap EfficiencyMap::gaussian(double eta_center, double eta_edge) {
    if (!(eta_edge > 0.0 && eta_edge <= eta_center && eta_center <= 1.0))
        throw std::invalid_argument("EfficiencyMap::gaussian: need 0 < eta_edge <= eta_center <= 1");

    const double rc = 0.5 * (kGridRows - 1);
    const double cc = 0.5 * (kGridCols - 1);
    const double r_corner = std::hypot(rc, cc);
    const double amplitude = eta_center - eta_edge;

    // exp(-1/(2 s^2)) = kCornerTol / amplitude at the normalized corner r = 1.
    double inv_two_sigma2 = 0.0;
    if (amplitude > kCornerTol)
        inv_two_sigma2 = std::log(amplitude / kCornerTol);

    std::array<std::array<double, kGridCols>, kGridRows> eta{};
    for (int i = 0; i < kGridRows; ++i) {
        for (int j = 0; j < kGridCols; ++j) {
            const double r = std::hypot(i - rc, j - cc) / r_corner;
            eta[i][j] = eta_edge + amplitude * std::exp(-r * r * inv_two_sigma2);
        }
    }
    return EfficiencyMap(eta, kDefaultTRefUs);
}

EfficiencyMap EfficiencyMap::uniform(double eta, double t_ref_us) {
    std::array<std::array<double, kGridCols>, kGridRows> grid{};
    for (auto& row : grid)
        row.fill(eta);
    return EfficiencyMap(grid, t_ref_us);
}

EfficiencyMap EfficiencyMap::load_csv(std::istream& in) {
    std::array<std::array<double, kGridCols>, kGridRows> eta{};
    double t_ref = kDefaultTRefUs;
    bool have_t_ref = false;

    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto pos = line.find("t_ref_us=");
            if (pos != std::string::npos && !have_t_ref) {
                t_ref = std::stod(line.substr(pos + 9));
                have_t_ref = true;
            }
            continue;
        }
        if (row >= kGridRows)
            throw std::runtime_error("EfficiencyMap::load_csv: more than 15 data rows");
        std::istringstream cells(line);
        std::string cell;
        int col = 0;
        while (std::getline(cells, cell, ',')) {
            if (col >= kGridCols)
                throw std::runtime_error("EfficiencyMap::load_csv: more than 14 columns");
            eta[row][col++] = std::stod(cell);
        }
        if (col != kGridCols)
            throw std::runtime_error("EfficiencyMap::load_csv: expected 14 columns");
        ++row;
    }
    if (row != kGridRows)
        throw std::runtime_error("EfficiencyMap::load_csv: expected 15 data rows");
    return EfficiencyMap(eta, t_ref);
}

EfficiencyMap EfficiencyMap::load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("EfficiencyMap: cannot open " + path);
    return load_csv(in);
}

void EfficiencyMap::save_csv(std::ostream& out) const {
    out << "# t_ref_us=" << format_double(t_ref_us_) << "\n";
    for (int i = 0; i < kGridRows; ++i) {
        for (int j = 0; j < kGridCols; ++j)
            out << (j ? "," : "") << format_double(eta_[i][j]);
        out << "\n";
    }
}

double EfficiencyMap::at(CellAddress cell) const {
    if (!cell.in_grid())
        throw std::out_of_range("EfficiencyMap::at: cell outside the grid");
    return eta_[cell.row][cell.col];
}

void MemoryParams::validate() const {
    if (tau_us <= 0.0)
        throw std::invalid_argument("MemoryParams: tau_us must be positive");
    if (larmor_period_us <= 0.0)
        throw std::invalid_argument("MemoryParams: larmor_period_us must be positive");
    if (p_dep < 0.0 || p_dep > 1.0)
        throw std::invalid_argument("MemoryParams: p_dep outside [0, 1]");
    if (crosstalk_eps < 0.0 || crosstalk_eps > 1.0)
        throw std::invalid_argument("MemoryParams: crosstalk_eps outside [0, 1]");
}

double larmor_envelope(double t_us, double larmor_period_us) {
    const double c = std::cos(std::numbers::pi * t_us / larmor_period_us);
    return c * c;
}

double retrieval_efficiency(const EfficiencyMap& map, CellAddress cell, double t_us,
                            const MemoryParams& params) {
    if (t_us < 0.0)
        throw std::invalid_argument("retrieval_efficiency: negative storage time");
    const double decay = std::exp(-(t_us - map.t_ref_us()) / params.tau_us);
    const double eta = map.at(cell) * decay * larmor_envelope(t_us, params.larmor_period_us);
    return std::clamp(eta, 0.0, 1.0);
}

ReadResult apply_storage_channel(const DensityMatrix& rho, double eta_u, double eta_d,
                                 double dphi_rad, double p_dep) {
    if (eta_u < 0.0 || eta_u > 1.0 || eta_d < 0.0 || eta_d > 1.0)
        throw std::invalid_argument("apply_storage_channel: rail efficiency outside [0, 1]");

    // A rho A^dag with A = diag(sqrt(eta_u), sqrt(eta_d) e^{i phi}).
    const double prob = eta_u * rho(0, 0).real() + eta_d * rho(1, 1).real();
    if (prob <= 0.0)
        return ReadResult{depolarize(DensityMatrix::maximally_mixed(), p_dep), 0.0};

    const cplx phase = std::exp(cplx(0.0, -dphi_rad));
    const double cross = std::sqrt(eta_u * eta_d);
    const DensityMatrix conditional(eta_u * rho(0, 0) / prob, cross * phase * rho(0, 1) / prob,
                                    cross * std::conj(phase) * rho(1, 0) / prob,
                                    eta_d * rho(1, 1) / prob);
    return ReadResult{depolarize(conditional, p_dep), prob};
}

double calibrate_depolarization(double target_avg_fidelity) {
    if (target_avg_fidelity <= 0.5 || target_avg_fidelity > 1.0)
        throw std::invalid_argument("calibrate_depolarization: target outside (0.5, 1]");
    return 2.0 * (1.0 - target_avg_fidelity);
}

CellArray::CellArray(EfficiencyMap map, MemoryParams params)
    : map_(std::move(map)), params_(params) {
    params_.validate();
}

bool CellArray::occupied(const QubitSlot& slot) const {
    require_slot(slot);
    return slots_[static_cast<std::size_t>(slot.index())].has_value();
}

const StoredExcitation& CellArray::write(const QubitSlot& slot,
                                         const photonics::CoherentPulse& input, double time_us) {
    require_slot(slot);
    if (time_us < 0.0)
        throw std::invalid_argument("CellArray::write: negative time");
    auto& entry = slots_[static_cast<std::size_t>(slot.index())];
    if (entry.has_value())
        throw std::logic_error("CellArray::write: slot already occupied");
    entry.emplace(StoredExcitation{slot, DensityMatrix::pure(input.state), time_us});
    return *entry;
}

ReadResult CellArray::read(const QubitSlot& slot, double time_us) {
    require_slot(slot);
    auto& entry = slots_[static_cast<std::size_t>(slot.index())];
    if (!entry.has_value())
        throw std::logic_error("CellArray::read: slot is empty");
    if (time_us < entry->write_time_us)
        throw std::invalid_argument("CellArray::read: read before write time");

    const double dt = time_us - entry->write_time_us;
    const double eta_u = retrieval_efficiency(map_, slot.u_cell, dt, params_);
    const double eta_d = retrieval_efficiency(map_, slot.d_cell, dt, params_);
    ReadResult result = apply_storage_channel(entry->state, eta_u, eta_d,
                                              params_.dphi_rad_per_us * dt, params_.p_dep);
    entry.reset();
    return result;
}

void CellArray::apply_crosstalk(const QubitSlot& addressed, double eps) {
    require_slot(addressed);
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("CellArray::apply_crosstalk: eps outside [0, 1]");
    if (eps == 0.0)
        return;

    const int row = addressed.row(), col = addressed.slot_col();
    const int neighbors[4][2] = {{row - 1, col}, {row + 1, col}, {row, col - 1}, {row, col + 1}};
    for (const auto& n : neighbors) {
        if (n[0] < 0 || n[0] >= kGridRows || n[1] < 0 || n[1] >= kSlotsPerRow)
            continue;
        auto& entry = slots_[static_cast<std::size_t>(n[0] * kSlotsPerRow + n[1])];
        if (entry.has_value())
            entry->state = depolarize(entry->state, eps);
    }
}

} // namespace raqm::memory
