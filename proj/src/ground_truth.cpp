#include "strata/ground_truth.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "strata/errors.hpp"

namespace strata {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  return fields;
}

double parse_number(const std::string& field, std::size_t row,
                    const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("ground truth row " + std::to_string(row) +
                          ": cannot parse " + what + " value '" + field + "'");
  }
}

}  // namespace

std::vector<GroundTruthSurface> read_ground_truth(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open ground-truth file: " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("ground-truth file is empty", 0);
  }
  const auto header = split_csv(lower(line));
  const std::vector<std::string> expected{"id", "strike", "dip",
                                          "dipdir", "nx", "ny", "nz"};
  if (header != expected) {
    throw SchemaError(
        "ground-truth header must be 'id,strike,dip,dipdir,nx,ny,nz', got '" +
        trim(line) + "'");
  }

  std::vector<GroundTruthSurface> surfaces;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 7) {
      throw ValidationError("ground truth row " + std::to_string(row) +
                            ": expected 7 fields, got " +
                            std::to_string(fields.size()));
    }

    GroundTruthSurface s;
    s.id = static_cast<int>(parse_number(fields[0], row, "id"));
    s.strike_deg = parse_number(fields[1], row, "strike");
    s.dip_deg = parse_number(fields[2], row, "dip");
    s.dipdir_deg = parse_number(fields[3], row, "dipdir");
    s.normal = Vec3d(parse_number(fields[4], row, "nx"),
                     parse_number(fields[5], row, "ny"),
                     parse_number(fields[6], row, "nz"));

    if (s.strike_deg < 0 || s.strike_deg >= 360) {
      throw ValidationError("ground truth row " + std::to_string(row) +
                            ": strike must be in [0, 360)");
    }
    if (s.dip_deg < 0 || s.dip_deg > 90) {
      throw ValidationError("ground truth row " + std::to_string(row) +
                            ": dip must be in [0, 90]");
    }
    if (s.dipdir_deg < 0 || s.dipdir_deg >= 360) {
      throw ValidationError("ground truth row " + std::to_string(row) +
                            ": dipdir must be in [0, 360)");
    }
    const double norm = s.normal.norm();
    if (std::abs(norm - 1.0) > 1e-3) {
      throw ValidationError("ground truth row " + std::to_string(row) +
                            ": normal is not unit length");
    }
    s.normal /= norm;
    surfaces.push_back(s);
  }
  return surfaces;
}

void write_ground_truth(const std::vector<GroundTruthSurface>& surfaces,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open ground-truth file for writing: " +
                  path.string());
  }
  out << "id,strike,dip,dipdir,nx,ny,nz\n";
  char buf[160];
  for (const auto& s : surfaces) {
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  s.id, s.strike_deg, s.dip_deg, s.dipdir_deg, s.normal.x(),
                  s.normal.y(), s.normal.z());
    out << buf;
  }
  if (!out) {
    throw IoError("failed while writing ground-truth file: " + path.string());
  }
}

}  // namespace strata
