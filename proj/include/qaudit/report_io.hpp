#pragma once

#include <string>

#include "qaudit/audit.hpp"

namespace qaudit {

/// Doubles rendered with 17 significant digits, enough to round-trip
/// exactly. Shared by every writer so JSON and CSV carry identical text.
std::string format_double(double x);

/// Report JSON: {"metadata": {...}, "q_grid": [...], "checks": [{id,
/// description, measured, expected, tolerance, status}...]}.
std::string report_to_json(const AuditReport& report);

/// Parses JSON produced by report_to_json; throws Error on malformed input.
AuditReport report_from_json(const std::string& text);

/// CSV with a header row and one row per check.
std::string report_to_csv(const AuditReport& report);

}  // namespace qaudit
