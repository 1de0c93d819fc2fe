#pragma once

#include <stdexcept>
#include <string>

namespace dly {

// Base class for every error the library raises.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A function that is defined only on signals was asked to produce something
// that is not one (edge at negative time, indicator not right-continuous, ...).
class not_a_signal : public error {
public:
  using error::error;
};

// Window parameters outside 0 <= m <= d.
class bad_window : public error {
public:
  using error::error;
};

// The (input, output) pair violates the stability condition.
class not_stable : public error {
public:
  using error::error;
};

// apply() on a delay condition without the deterministic-transform capability.
class not_deterministic : public error {
public:
  using error::error;
};

// enumerate() on a delay condition without the enumerate capability.
class not_enumerable : public error {
public:
  using error::error;
};

// A meet was exercised on an input where the intersection is empty, i.e. the
// hypothesis of the combination theorem fails on that input.
class empty_delay_set : public error {
public:
  using error::error;
};

// Netlist validation errors.
class dangling_reference : public error {
public:
  using error::error;
};
class duplicate_name : public error {
public:
  using error::error;
};
class zero_delay_cycle : public error {
public:
  using error::error;
};

// Simulation ran out of horizon before stabilizing, or a stimulus carries
// edges beyond the horizon, or a feedback loop has no stable initial state.
class horizon_exceeded : public error {
public:
  using error::error;
};

// Text-format errors carry a 1-based line number (0 = unknown).
class parse_error : public error {
public:
  parse_error(std::string msg, int line = 0, int col = 0)
      : error(line > 0 ? "line " + std::to_string(line) +
                             (col > 0 ? ":" + std::to_string(col) : "") + ": " + msg
                       : msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

// Wavefile declares a signal whose edge list is not strictly increasing / has
// negative times.
class non_canonical_signal : public parse_error {
public:
  using parse_error::parse_error;
};

class io_error : public error {
public:
  using error::error;
};

} // namespace dly
