#pragma once

// occamlab command line: vcdim, verify <target>, occamize.
//
// Exit codes: 0 all checks pass, 1 a check failed or a cap/runtime error,
// 2 usage error. Reports go to --out (JSON plus a sibling .csv) or, without
// --out, to <command>-<content hash>.json in --out-dir.
//
// Environment: OCCAMLAB_ENUMERATION_CAP and OCCAMLAB_WORK_CAP override the
// enumeration and shattering-work caps.

#include <ostream>
#include <span>
#include <string>

namespace occam::cli {

/// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace occam::cli
