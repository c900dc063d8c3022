#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace favard::cli {

// Overrides given on the command line take precedence over config fields.
struct CommonOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> output_path;
  std::optional<std::string> arithmetic;
  std::optional<double> tolerance;
  std::optional<std::filesystem::path> matrix_path;  // -R
};

// Exit codes: 0 success, 1 unusable input or precondition violation,
// 2 moment/positivity validation failure, 3 internal invariant breach.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInternal = 3;

int cmd_compute(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const CommonOptions& opt, const std::string& checks, std::ostream& out,
               std::ostream& err);
int cmd_reconstruct(const CommonOptions& opt, int degree, std::ostream& out,
                    std::ostream& err);
int cmd_basis_change(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int cmd_dims(const CommonOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace favard::cli
