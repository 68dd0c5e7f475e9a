#pragma once

#include "raqm/memory.hpp"
#include "raqm/qstate.hpp"

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace raqm::control {

// Crossed-AOD frequency grid: X (rows) spans 98.8..107.2 MHz, Y (cols)
// 98.8..106.6 MHz, both in 0.6 MHz steps. X addresses rows, Y columns.
constexpr double kBaseFreqMHz = 98.8;
constexpr double kStepMHz = 0.6;

struct Frequencies {
    double fx_mhz;
    double fy_mhz;
};

Frequencies address_to_frequencies(memory::CellAddress cell);
memory::CellAddress address_from_frequencies(Frequencies f);

// One frequency pair with a complex amplitude weight; a tone is a small
// superposition of these (one per addressed cell).
struct ToneComponent {
    double fx_mhz;
    double fy_mhz;
    cplx weight;
};

struct RFTone {
    std::vector<ToneComponent> components;
};

RFTone single_tone(memory::CellAddress cell);

// Superposition tone addressing both rails of a slot with normalized
// weights (w0 on rail U, w1 on rail D); this is how the write AODs prepare
// c0|U> + c1|D>.
RFTone slot_tone(const memory::QubitSlot& slot, cplx w0, cplx w1);

enum class EventKind { Write, Read };

struct ProgramEvent {
    EventKind kind;
    memory::QubitSlot slot;
    std::string qubit_id;
    double time_us = 0.0;
    double duration_us = kDefaultPulseUs;

    static constexpr double kDefaultPulseUs = 0.1;
};

struct PulseProgram {
    std::vector<ProgramEvent> events;
};

// Line format: `write|read <qubit_id> <row_u>,<col_u> <time_us>` with an
// optional trailing `<duration_us>`; `#` starts a comment. <col_u> is the
// U-rail column and must be even.
PulseProgram parse_program(std::istream& in);
PulseProgram parse_program_file(const std::string& path);

enum class Channel { Control = 0, Write = 1, Read = 2 };
constexpr std::array<std::string_view, 3> kChannelNames = {"control", "write", "read"};

struct RFEvent {
    double start_us;
    double duration_us;
    RFTone tone;
};

struct TimingWarning {
    std::string qubit_id;
    double interval_us;
    double penalty;  // Larmor envelope at the off-multiple interval
    std::string message;
};

struct RFEventList {
    std::array<std::vector<RFEvent>, 3> channels;  // indexed by Channel
    std::vector<TimingWarning> warnings;
};

enum class TimingMode { Strict, Warn };

class CompileError : public std::runtime_error {
public:
    enum class Code {
        Overlap,
        DoubleWrite,
        UnmatchedRead,
        UnmatchedWrite,
        OffLarmorTiming,
        BadEvent,
    };

    CompileError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

// Compiles a program into per-channel RF event lists. The control channel
// fires on every write and read; the write/read channels fire on their own
// kind. Validates per-channel non-overlap, write/read matching per qubit_id
// and per slot, and that every read-write interval is an integer multiple
// of the Larmor period within 1 ns (error in Strict mode, warning plus
// envelope penalty in Warn mode).
RFEventList compile(const PulseProgram& program, const memory::MemoryParams& params,
                    TimingMode mode);

// Writes in listing order, reads in `read_order` (1-based qubit positions),
// every event time an integer multiple of spacing * T_L, so that all
// read-write intervals land on Larmor revivals.
PulseProgram random_access_schedule(
    const std::vector<std::pair<memory::QubitSlot, PureQubit>>& qubits,
    const std::vector<int>& read_order, int spacing, const memory::MemoryParams& params);

nlohmann::json to_json(const RFEventList& events);

} // namespace raqm::control
