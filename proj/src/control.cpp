#include "raqm/control.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace raqm::control {

namespace {

constexpr double kTimingToleranceUs = 1e-3;  // 1 ns
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string describe(const ProgramEvent& e) {
    std::ostringstream os;
    os << (e.kind == EventKind::Write ? "write" : "read") << ' ' << e.qubit_id << " ("
       << e.slot.u_cell.row << ',' << e.slot.u_cell.col << ") at " << e.time_us << " us";
    return os.str();
}

void check_channel_overlaps(const std::vector<const ProgramEvent*>& events,
                            std::string_view channel) {
    for (std::size_t i = 1; i < events.size(); ++i) {
        const auto* prev = events[i - 1];
        const auto* cur = events[i];
        if (cur->time_us < prev->time_us + prev->duration_us) {
            throw CompileError(CompileError::Code::Overlap,
                               "overlapping events on " + std::string(channel) + " channel: " +
                                   describe(*prev) + " and " + describe(*cur));
        }
    }
}

} // namespace

Frequencies address_to_frequencies(memory::CellAddress cell) {
    if (!cell.in_grid())
        throw std::out_of_range("address_to_frequencies: cell outside the grid");
    return Frequencies{kBaseFreqMHz + kStepMHz * cell.row, kBaseFreqMHz + kStepMHz * cell.col};
}

memory::CellAddress address_from_frequencies(Frequencies f) {
    const double row = (f.fx_mhz - kBaseFreqMHz) / kStepMHz;
    const double col = (f.fy_mhz - kBaseFreqMHz) / kStepMHz;
    memory::CellAddress cell{static_cast<int>(std::lround(row)), static_cast<int>(std::lround(col))};
    if (!cell.in_grid() || std::abs(row - cell.row) > 1e-6 || std::abs(col - cell.col) > 1e-6)
        throw std::out_of_range("address_from_frequencies: frequencies off the AOD grid");
    return cell;
}

RFTone single_tone(memory::CellAddress cell) {
    const auto f = address_to_frequencies(cell);
    return RFTone{{ToneComponent{f.fx_mhz, f.fy_mhz, cplx(1.0, 0.0)}}};
}

RFTone slot_tone(const memory::QubitSlot& slot, cplx w0, cplx w1) {
    const double norm2 = std::norm(w0) + std::norm(w1);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("slot_tone: weights not normalized");

    RFTone tone;
    const auto fu = address_to_frequencies(slot.u_cell);
    const auto fd = address_to_frequencies(slot.d_cell);
    if (w0 != cplx(0.0))
        tone.components.push_back(ToneComponent{fu.fx_mhz, fu.fy_mhz, w0});
    if (w1 != cplx(0.0))
        tone.components.push_back(ToneComponent{fd.fx_mhz, fd.fy_mhz, w1});
    return tone;
}

PulseProgram parse_program(std::istream& in) {
    PulseProgram program;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);

        std::istringstream fields(line);
        std::string kind, id, cell_field;
        double time_us;
        if (!(fields >> kind))
            continue;  // blank line
        if (!(fields >> id >> cell_field >> time_us))
            throw std::runtime_error("program line " + std::to_string(lineno) +
                                     ": expected `write|read <id> <row>,<col> <time_us>`");

        ProgramEvent event;
        if (kind == "write")
            event.kind = EventKind::Write;
        else if (kind == "read")
            event.kind = EventKind::Read;
        else
            throw std::runtime_error("program line " + std::to_string(lineno) +
                                     ": unknown event kind `" + kind + "`");

        const auto comma = cell_field.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("program line " + std::to_string(lineno) +
                                     ": cell must be <row>,<col>");
        memory::CellAddress u{std::stoi(cell_field.substr(0, comma)),
                              std::stoi(cell_field.substr(comma + 1))};
        event.slot = memory::QubitSlot::from_u_cell(u);
        event.qubit_id = id;
        event.time_us = time_us;
        if (double dur; fields >> dur)
            event.duration_us = dur;
        program.events.push_back(std::move(event));
    }
    return program;
}

PulseProgram parse_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("parse_program_file: cannot open " + path);
    return parse_program(in);
}

RFEventList compile(const PulseProgram& program, const memory::MemoryParams& params,
                    TimingMode mode) {
    for (const auto& e : program.events) {
        if (e.time_us < 0.0 || e.duration_us <= 0.0)
            throw CompileError(CompileError::Code::BadEvent,
                               "bad event (negative time or non-positive duration): " +
                                   describe(e));
        if (e.qubit_id.empty())
            throw CompileError(CompileError::Code::BadEvent, "event with empty qubit id");
    }

    // Chronological view; ties are resolved by input order and will fail the
    // overlap check anyway.
    std::vector<const ProgramEvent*> chrono;
    chrono.reserve(program.events.size());
    for (const auto& e : program.events)
        chrono.push_back(&e);
    std::stable_sort(chrono.begin(), chrono.end(),
                     [](const ProgramEvent* a, const ProgramEvent* b) {
                         return a->time_us < b->time_us;
                     });

    // The control channel sees every event; write/read channels their kind.
    std::array<std::vector<const ProgramEvent*>, 3> per_channel;
    for (const auto* e : chrono) {
        per_channel[static_cast<std::size_t>(Channel::Control)].push_back(e);
        const auto ch = e->kind == EventKind::Write ? Channel::Write : Channel::Read;
        per_channel[static_cast<std::size_t>(ch)].push_back(e);
    }
    for (std::size_t c = 0; c < per_channel.size(); ++c)
        check_channel_overlaps(per_channel[c], kChannelNames[c]);

    // Write/read matching per qubit id, with slot occupancy tracked so a
    // second write to a busy slot is caught even under a fresh id.
    RFEventList out;
    std::map<std::string, const ProgramEvent*> open_writes;
    std::map<int, std::string> busy_slots;
    for (const auto* e : chrono) {
        if (e->kind == EventKind::Write) {
            if (open_writes.count(e->qubit_id))
                throw CompileError(CompileError::Code::DoubleWrite,
                                   "double write without read: " + describe(*e));
            if (auto it = busy_slots.find(e->slot.index()); it != busy_slots.end())
                throw CompileError(CompileError::Code::DoubleWrite,
                                   "write to occupied slot (held by " + it->second +
                                       "): " + describe(*e));
            open_writes[e->qubit_id] = e;
            busy_slots[e->slot.index()] = e->qubit_id;
        } else {
            const auto it = open_writes.find(e->qubit_id);
            if (it == open_writes.end())
                throw CompileError(CompileError::Code::UnmatchedRead,
                                   "read without a prior write: " + describe(*e));
            const ProgramEvent* w = it->second;
            if (!(w->slot == e->slot))
                throw CompileError(CompileError::Code::UnmatchedRead,
                                   "read addresses a different slot than the write: " +
                                       describe(*e));

            const double interval = e->time_us - w->time_us;
            const double periods = interval / params.larmor_period_us;
            const double offset =
                std::abs(interval - std::round(periods) * params.larmor_period_us);
            if (offset > kTimingToleranceUs) {
                if (mode == TimingMode::Strict)
                    throw CompileError(CompileError::Code::OffLarmorTiming,
                                       "read-write interval " + std::to_string(interval) +
                                           " us is not an integer multiple of the Larmor "
                                           "period: " + describe(*e));
                const double penalty = memory::larmor_envelope(interval, params.larmor_period_us);
                out.warnings.push_back(TimingWarning{
                    e->qubit_id, interval, penalty,
                    "off-Larmor interval for " + e->qubit_id + ": retrieval scaled by envelope " +
                        std::to_string(penalty)});
            }
            open_writes.erase(it);
            busy_slots.erase(e->slot.index());
        }
    }
    if (!open_writes.empty())
        throw CompileError(CompileError::Code::UnmatchedWrite,
                           "write without a matching later read: " +
                               describe(*open_writes.begin()->second));

    // Emit tones. Both rails of the slot are always addressed; the equal
    // split is the addressing pattern, state weights live in the harness.
    const auto emit = [&](Channel ch, const ProgramEvent& e) {
        out.channels[static_cast<std::size_t>(ch)].push_back(
            RFEvent{e.time_us, e.duration_us, slot_tone(e.slot, kInvSqrt2, kInvSqrt2)});
    };
    for (const auto* e : chrono) {
        emit(Channel::Control, *e);
        emit(e->kind == EventKind::Write ? Channel::Write : Channel::Read, *e);
    }
    return out;
}

PulseProgram random_access_schedule(
    const std::vector<std::pair<memory::QubitSlot, PureQubit>>& qubits,
    const std::vector<int>& read_order, int spacing, const memory::MemoryParams& params) {
    const int n = static_cast<int>(qubits.size());
    if (n == 0)
        throw std::invalid_argument("random_access_schedule: no qubits");
    if (spacing < 1)
        throw std::invalid_argument("random_access_schedule: spacing must be >= 1");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (qubits[static_cast<std::size_t>(i)].first ==
                qubits[static_cast<std::size_t>(j)].first)
                throw std::invalid_argument("random_access_schedule: duplicate slots");

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    if (static_cast<int>(read_order.size()) != n)
        throw std::invalid_argument("random_access_schedule: read_order size mismatch");
    for (int label : read_order) {
        if (label < 1 || label > n || seen[static_cast<std::size_t>(label - 1)])
            throw std::invalid_argument("random_access_schedule: read_order is not a permutation");
        seen[static_cast<std::size_t>(label - 1)] = true;
    }

    const double step = spacing * params.larmor_period_us;
    PulseProgram program;
    for (int i = 0; i < n; ++i) {
        ProgramEvent e;
        e.kind = EventKind::Write;
        e.slot = qubits[static_cast<std::size_t>(i)].first;
        e.qubit_id = "q" + std::to_string(i + 1);
        e.time_us = i * step;
        program.events.push_back(std::move(e));
    }
    for (int j = 0; j < n; ++j) {
        const int label = read_order[static_cast<std::size_t>(j)];
        ProgramEvent e;
        e.kind = EventKind::Read;
        e.slot = qubits[static_cast<std::size_t>(label - 1)].first;
        e.qubit_id = "q" + std::to_string(label);
        e.time_us = (n + j) * step;
        program.events.push_back(std::move(e));
    }
    return program;
}

nlohmann::json to_json(const RFEventList& events) {
    nlohmann::json j;
    for (std::size_t c = 0; c < events.channels.size(); ++c) {
        nlohmann::json channel = nlohmann::json::array();
        for (const auto& e : events.channels[c]) {
            nlohmann::json weights = nlohmann::json::array();
            for (const auto& comp : e.tone.components) {
                weights.push_back({{"fx_mhz", comp.fx_mhz},
                                   {"fy_mhz", comp.fy_mhz},
                                   {"re", comp.weight.real()},
                                   {"im", comp.weight.imag()}});
            }
            channel.push_back({{"start_us", e.start_us},
                               {"duration_us", e.duration_us},
                               {"fx_mhz", e.tone.components.at(0).fx_mhz},
                               {"fy_mhz", e.tone.components.at(0).fy_mhz},
                               {"weights", std::move(weights)}});
        }
        j[std::string(kChannelNames[c])] = std::move(channel);
    }
    nlohmann::json warnings = nlohmann::json::array();
    for (const auto& w : events.warnings) {
        warnings.push_back({{"qubit_id", w.qubit_id},
                            {"interval_us", w.interval_us},
                            {"penalty", w.penalty},
                            {"message", w.message}});
    }
    j["warnings"] = std::move(warnings);
    return j;
}

} // namespace raqm::control
