#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omegapow {

/// Exit codes: 0 ok / accepted, 1 rejected or check failed, 2 usage,
/// 3 malformed input, 4 unsupported construction.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omegapow
