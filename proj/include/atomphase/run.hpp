#ifndef ATOMPHASE_RUN_HPP
#define ATOMPHASE_RUN_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atomphase/config.hpp"

namespace atomphase {

// Exit codes shared by the command implementations and the CLI wrapper.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumeric = 2;

// Full double precision with a fixed format so that reruns are byte-identical.
std::string format_g17(double v);

int cmd_validate(const std::string& config_path, std::ostream& out, bool echo = false);

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<PhaseMethod> dp_method_override, std::ostream& out);

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir,
              std::optional<PhaseMethod> dp_method_override, std::ostream& out);

}  // namespace atomphase

#endif
