#pragma once

#include <exception>
#include <map>
#include <string>
#include <vector>

#include "fimin/moments.hpp"
#include "fimin/schrodinger.hpp"
#include "fimin/solve.hpp"

namespace fimin {

/// Parsed JSON request:
///   {"moments": [{"k": int, "value": num}, ...],
///    "x_scale": num?, "constants": {"<k>": num}?}
/// Unknown fields anywhere raise schema_error.
struct SolveRequest {
    std::vector<MomentEntry> moments;
    double x_scale = 1.0;
    std::map<int, double> constants;
};

SolveRequest parse_request(const std::string& json_text);
SolveRequest parse_request_file(const std::string& path);

/// Deterministic report serialization: keys sorted, every float printed
/// with 12 significant digits, trailing newline.  `verify` may be null.
std::string report_json(const ClosedFormSolution& closed,
                        const ConsistencyReport* verify, double x_scale);

/// Exit-code contract: 1 usage/schema, 2 domain, 3 numeric.
int exit_code_for(const std::exception& error);

/// "%.12g" rendering shared by the report writer and the CLI tables.
std::string format_number(double v);

} // namespace fimin
