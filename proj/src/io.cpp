#include "pn/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace pn {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << content;
  if (!out) throw IoError(path, "write failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_samples_csv(const std::filesystem::path& path, const Grid1D& grid, const std::vector<double>& values,
                       const std::string& value_name) {
  if (values.size() != grid.size()) throw IoError(path, "sample count does not match grid");
  std::string s = "x," + value_name + "\n";
  for (std::size_t j = 0; j < values.size(); ++j) s += format_number(grid.node(j)) + "," + format_number(values[j]) + "\n";
  write_text(path, s);
}

namespace {

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, std::string* comment) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (comment && comment->empty()) *comment = line;
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError(path, "malformed number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<double> read_samples_csv(const std::filesystem::path& path, const Grid1D& grid) {
  const auto rows = read_rows(path, nullptr);
  if (rows.size() != grid.size()) throw IoError(path, "row count does not match grid");
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.size() < 2) throw IoError(path, "expected two columns");
    v.push_back(r[1]);
  }
  return v;
}

void write_profile_csv(const std::filesystem::path& path, const Profile& p, const std::vector<double>& rho,
                       const std::vector<double>& residual) {
  const auto& g = p.grid();
  std::string s = "# L=" + format_number(g.half_length()) + " N=" + std::to_string(g.size()) +
                  " zeta_bg=" + format_number(p.zeta_bg()) + " x0=" + format_number(p.x0()) +
                  " background=" + (p.has_background() ? "1" : "0") +
                  " units: x,u1,v [length]; rho [1]; residual [G b/d]\n";
  s += "x,u1,v,rho,residual\n";
  const auto u = p.u1();
  for (std::size_t j = 0; j < g.size(); ++j)
    s += format_number(g.node(j)) + "," + format_number(u[j]) + "," + format_number(p.v()[j]) + "," +
         format_number(rho[j]) + "," + format_number(residual[j]) + "\n";
  write_text(path, s);
}

Profile read_profile_csv(const std::filesystem::path& path, const PhysParams& params) {
  std::string comment;
  const auto rows = read_rows(path, &comment);
  std::map<std::string, std::string> meta;
  std::stringstream ss(comment.size() > 1 ? comment.substr(1) : "");
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) meta[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"L", "N", "zeta_bg", "x0", "background"})
    if (!meta.count(key)) throw IoError(path, std::string("missing metadata '") + key + "'");
  const Grid1D grid(std::stod(meta["L"]), std::stoul(meta["N"]));
  if (rows.size() != grid.size()) throw IoError(path, "row count does not match metadata");
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.size() != 5) throw IoError(path, "expected columns x,u1,v,rho,residual");
    v.push_back(r[2]);
  }
  if (meta["background"] == "0") return Profile::correction_only(grid, params, std::move(v));
  return {grid, params, std::stod(meta["zeta_bg"]), std::stod(meta["x0"]), std::move(v)};
}

void prepare_output_dir(const std::filesystem::path& dir, bool overwrite) {
  std::error_code ec;
  if (std::filesystem::exists(dir, ec)) {
    if (!std::filesystem::is_directory(dir, ec)) throw IoError(dir, "exists and is not a directory");
    if (!std::filesystem::is_empty(dir, ec) && !overwrite)
      throw IoError(dir, "output directory is not empty; pass --overwrite to replace its contents");
    return;
  }
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create directory: " + ec.message());
}

}  // namespace pn
