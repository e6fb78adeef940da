/**
 * Command-line front end: subcommand dispatch, exact argument parsing, and
 * machine-readable output.
 *
 * Every subcommand prints a single JSON document to standard out whose
 * "manifest" block records the command, tool version, configuration label,
 * seed (when randomness is involved), and an FNV-1a checksum of the result
 * payload, so a saved output is self-describing and tamper-evident. Bulk
 * data (samples, trajectories, plot grids) goes to CSV files named by the
 * caller, never to standard out.
 *
 * Key design decisions:
 *
 *  - The entry point takes an argument vector and explicit output streams
 *    and returns the exit code instead of calling exit(), so the whole
 *    surface is testable in-process.
 *
 *  - Exit codes mirror the error taxonomy: 0 success, 2 invalid input or
 *    configuration (including command-line parse errors), 3 budget
 *    exhausted before certification, 4 broken internal invariant. A failed
 *    stationarity identity exits 4: the closed form is a certified claim,
 *    not an observation.
 *
 *  - Exact numbers cross the CLI boundary as text in the same formats the
 *    library prints: "p/q" for rationals and "(a+b*sqrt(d))/c" (with the
 *    obvious abbreviations like "sqrt(2)" or "-sqrt(2)/2") for quadratic
 *    irrationals. Decimal renderings in the output are always labeled as
 *    such and carry a caller-chosen digit count; the exact fields are the
 *    authoritative ones.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "triwalk/surd.hpp"

namespace triwalk {

/// Parse an exact number: "p", "p/q", "sqrt(d)", "-sqrt(d)", "b*sqrt(d)",
/// any of the sqrt forms divided by an integer, or the full
/// "(a+b*sqrt(d))/c". Throws ValidationError on malformed text and
/// std::domain_error when the surd degenerates to a rational.
ExactNumber parse_exact(const std::string& text);

/// Exact decimal rendering of a rational, truncated toward zero after
/// `digits` fractional digits.
std::string decimal_string(const Rational& r, int digits);

/// Run the tool on the given arguments (without argv[0]); writes JSON to
/// `out`, diagnostics to `err`, and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace triwalk
