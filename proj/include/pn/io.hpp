#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pn/grid.hpp"
#include "pn/profile.hpp"

namespace pn {

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Decimal text with 17 significant digits.
std::string format_number(double x);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Columns x,<value_name>.
void write_samples_csv(const std::filesystem::path& path, const Grid1D& grid, const std::vector<double>& values,
                       const std::string& value_name = "value");
std::vector<double> read_samples_csv(const std::filesystem::path& path, const Grid1D& grid);

/// Columns x,u1,v,rho,residual. The first line is a comment holding the
/// grid and background metadata needed by read_profile_csv.
void write_profile_csv(const std::filesystem::path& path, const Profile& p, const std::vector<double>& rho,
                       const std::vector<double>& residual);
Profile read_profile_csv(const std::filesystem::path& path, const PhysParams& params);

/// Create `dir`, or refuse if it exists with content unless `overwrite`.
void prepare_output_dir(const std::filesystem::path& dir, bool overwrite);

}  // namespace pn
