#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "innerlip/cli.hpp"

namespace innerlip::cli {

int cmd_selftest(const RunConfig& cfg, std::ostream& out);
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_report(const std::vector<std::string>& dirs, const RunConfig& cfg, std::ostream& out);
int cmd_gallery_list(std::ostream& out);
int cmd_gallery_dump(const std::string& name, const RunConfig& cfg, std::ostream& out);

}  // namespace innerlip::cli
