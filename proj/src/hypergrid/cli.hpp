#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypergrid {

// Dispatches one CLI invocation. Reports go to `out` (or the --output file);
// diagnostics go to `err`. Returns 0 on success, 1 when an asserted
// invariant failed, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypergrid
