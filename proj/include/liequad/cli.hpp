#pragma once

#include "liequad/system_file.hpp"
#include "liequad/theorems.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace liequad {

/// Process exit codes.
enum ExitCode : int { kHolds = 0, kFails = 1, kUnknown = 2, kInputError = 3, kReductionError = 4 };

int exit_code(Verdict v);

/// Report document for `check` (schema 1).
nlohmann::ordered_json report_json(const SystemFile& file, const TheoremReport& report);

/// Runs the theorem checker on a loaded file.
TheoremReport check_file(const SystemFile& file);

/// Entry point shared by the executable and the tests; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liequad
