#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lvlab {

/// Version tag written into every JSON artifact.
inline constexpr int kSchemaVersion = 1;

/// Runs one `lvlab` command line. Exit code 0 on success, 1 on a
/// computation error, 2 on a usage error; errors go to `err` as JSON.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lvlab
