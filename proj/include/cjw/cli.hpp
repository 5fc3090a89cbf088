#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cjw {

// Exit codes: 0 success, 1 domain error (message on err), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cjw
