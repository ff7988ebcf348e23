#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocix::service {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// ocix <ingest|build|export|stats|query|serve> [options]
// `args` excludes the program name. Errors go to `err` as "<ErrorName>: detail".
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocix::service
