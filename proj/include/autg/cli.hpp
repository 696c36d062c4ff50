#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace autg {

/// Exit codes: 0 yes/success, 1 no, 2 inconclusive or budget exceeded,
/// 3 and above usage or format errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace autg
