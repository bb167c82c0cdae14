#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tgi {

using VertexId = std::uint32_t;
/// Position of an edge in the globally sorted stream. Doubles as the edge's identity.
using EdgeId = std::uint32_t;
using Time = std::int64_t;

inline constexpr Time kInfinity = std::numeric_limits<Time>::max();
inline constexpr Time kMinusInfinity = std::numeric_limits<Time>::min();
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct TemporalEdge {
    VertexId tail = 0;
    VertexId head = 0;
    Time time = 0;        // availability time t
    Time transition = 1;  // traversal time, always >= 1
    EdgeId pos = 0;

    [[nodiscard]] Time arrival() const noexcept { return time + transition; }

    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Restrictive time window [begin, end]. An edge participates iff it departs
/// no earlier than begin and arrives no later than end.
struct Interval {
    Time begin = 0;
    Time end = kInfinity;

    [[nodiscard]] bool admits(const TemporalEdge& e) const noexcept {
        return begin <= e.time && e.arrival() <= end;
    }

    [[nodiscard]] static constexpr Interval unbounded() noexcept { return {0, kInfinity}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Base for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that parses but violates a precondition (bad parameter, unknown vertex, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Corrupt, truncated or unsupported index file.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace tgi
