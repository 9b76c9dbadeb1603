#pragma once

#include "config.hpp"

#include <filesystem>
#include <string>

namespace kerrlab::cli {

struct Context {
  RunConfig cfg;
  std::filesystem::path out_dir;
  double corrupt_blend = 0.0;
  double corrupt_h = 1.0;
};

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kConfigError = 2 };

int cmd_geom_check(const Context& ctx);
int cmd_potential_scan(const Context& ctx);
int cmd_regimes_cover(const Context& ctx);
int cmd_symbols_verify(const Context& ctx);
int cmd_certify(const Context& ctx);
int cmd_wave_evolve(const Context& ctx);
int cmd_wave_scatter(const Context& ctx);
int cmd_wave_morawetz(const Context& ctx);

}  // namespace kerrlab::cli
