#pragma once

// Command-line front end.
//
//   acmslab <validate|lemma|curvature|identities> [--chart PATH | --gallery NAME]
//           [--seed N] [--probes N] [--points N] [--tol key=val]... [--json]
//
// Exit codes: 0 pass, 1 check failure, 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace acmslab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args excludes the program name. When --seed is absent
/// the seed comes from ACMSLAB_SEED, else 0.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acmslab::cli
