#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perpx {

/* Command dispatcher behind the perpx binary.  Returns the process exit
 * code: 0 success, 1 input error, 2 internal inconsistency. */
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace perpx
