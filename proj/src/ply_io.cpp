#include "strata/ply_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace strata {
namespace {

enum class PlyType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<PlyType> parse_type(const std::string& token) {
  if (token == "char" || token == "int8") return PlyType::Int8;
  if (token == "uchar" || token == "uint8") return PlyType::UInt8;
  if (token == "short" || token == "int16") return PlyType::Int16;
  if (token == "ushort" || token == "uint16") return PlyType::UInt16;
  if (token == "int" || token == "int32") return PlyType::Int32;
  if (token == "uint" || token == "uint32") return PlyType::UInt32;
  if (token == "float" || token == "float32") return PlyType::Float32;
  if (token == "double" || token == "float64") return PlyType::Float64;
  return std::nullopt;
}

std::size_t type_size(PlyType t) {
  switch (t) {
    case PlyType::Int8:
    case PlyType::UInt8: return 1;
    case PlyType::Int16:
    case PlyType::UInt16: return 2;
    case PlyType::Int32:
    case PlyType::UInt32:
    case PlyType::Float32: return 4;
    case PlyType::Float64: return 8;
  }
  return 0;
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::Float32;
  bool is_list = false;
  PlyType count_type = PlyType::UInt8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

struct PlyHeader {
  bool binary = false;
  std::vector<PlyElement> elements;
  std::size_t body_offset = 0;
};

PlyHeader read_header(std::istream& in) {
  PlyHeader header;
  std::size_t offset = 0;
  std::string line;

  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) {
      throw ParseError("unexpected end of file in PLY header", offset);
    }
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "ply") {
    throw ParseError("missing 'ply' magic line", 0);
  }

  bool have_format = false;
  while (true) {
    const std::string raw = next_line();
    std::istringstream ls(raw);
    std::string keyword;
    ls >> keyword;
    if (keyword.empty() || keyword == "comment" || keyword == "obj_info") {
      continue;
    }
    if (keyword == "format") {
      std::string fmt, version;
      ls >> fmt >> version;
      if (version != "1.0") {
        throw ParseError("unsupported PLY version '" + version + "'", offset);
      }
      if (fmt == "ascii") {
        header.binary = false;
      } else if (fmt == "binary_little_endian") {
        header.binary = true;
      } else {
        throw ParseError("unsupported PLY format '" + fmt + "'", offset);
      }
      have_format = true;
    } else if (keyword == "element") {
      PlyElement element;
      if (!(ls >> element.name >> element.count)) {
        throw ParseError("malformed element declaration", offset);
      }
      header.elements.push_back(std::move(element));
    } else if (keyword == "property") {
      if (header.elements.empty()) {
        throw ParseError("property declared before any element", offset);
      }
      PlyProperty prop;
      std::string type_token;
      ls >> type_token;
      if (type_token == "list") {
        prop.is_list = true;
        std::string count_token, item_token;
        ls >> count_token >> item_token >> prop.name;
        const auto ct = parse_type(count_token);
        const auto it = parse_type(item_token);
        if (!ct || !it || prop.name.empty()) {
          throw ParseError("malformed list property declaration", offset);
        }
        prop.count_type = *ct;
        prop.type = *it;
      } else {
        const auto t = parse_type(type_token);
        ls >> prop.name;
        if (!t || prop.name.empty()) {
          throw ParseError("malformed property declaration", offset);
        }
        prop.type = *t;
      }
      header.elements.back().properties.push_back(std::move(prop));
    } else if (keyword == "end_header") {
      break;
    } else {
      throw ParseError("unknown header keyword '" + keyword + "'", offset);
    }
  }
  if (!have_format) {
    throw ParseError("PLY header has no format line", offset);
  }
  header.body_offset = offset;
  return header;
}

double read_binary_scalar(std::istream& in, PlyType type, std::size_t& offset) {
  unsigned char buf[8];
  const std::size_t n = type_size(type);
  if (!in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n))) {
    throw ParseError("unexpected end of file in PLY body", offset);
  }
  offset += n;
  switch (type) {
    case PlyType::Int8: return static_cast<double>(static_cast<signed char>(buf[0]));
    case PlyType::UInt8: return static_cast<double>(buf[0]);
    case PlyType::Int16: {
      std::int16_t v;
      std::memcpy(&v, buf, 2);
      return v;
    }
    case PlyType::UInt16: {
      std::uint16_t v;
      std::memcpy(&v, buf, 2);
      return v;
    }
    case PlyType::Int32: {
      std::int32_t v;
      std::memcpy(&v, buf, 4);
      return v;
    }
    case PlyType::UInt32: {
      std::uint32_t v;
      std::memcpy(&v, buf, 4);
      return v;
    }
    case PlyType::Float32: {
      float v;
      std::memcpy(&v, buf, 4);
      return v;
    }
    case PlyType::Float64: {
      double v;
      std::memcpy(&v, buf, 8);
      return v;
    }
  }
  return 0;
}

double read_ascii_scalar(std::istream& in, std::size_t body_offset) {
  double v;
  if (!(in >> v)) {
    const auto pos = in.tellg();
    throw ParseError("unexpected end of data in ASCII PLY body",
                     pos >= 0 ? static_cast<std::size_t>(pos) : body_offset);
  }
  return v;
}

}  // namespace

PointCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open PLY file: " + path.string());
  }

  const PlyHeader header = read_header(in);

  const PlyElement* vertex = nullptr;
  for (const auto& element : header.elements) {
    if (element.name == "vertex") {
      vertex = &element;
      break;
    }
  }
  if (vertex == nullptr) {
    throw SchemaError("PLY file has no vertex element: " + path.string());
  }

  int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
  for (std::size_t p = 0; p < vertex->properties.size(); ++p) {
    const PlyProperty& prop = vertex->properties[p];
    if (prop.is_list) continue;
    const int idx = static_cast<int>(p);
    if (prop.name == "x") ix = idx;
    if (prop.name == "y") iy = idx;
    if (prop.name == "z") iz = idx;
    if (prop.type == PlyType::UInt8) {
      if (prop.name == "red") ir = idx;
      if (prop.name == "green") ig = idx;
      if (prop.name == "blue") ib = idx;
    }
  }
  if (ix < 0 || iy < 0 || iz < 0) {
    throw SchemaError("PLY vertex element lacks x/y/z properties: " +
                      path.string());
  }
  const bool with_colors = ir >= 0 && ig >= 0 && ib >= 0;

  PointCloud cloud;
  cloud.points.reserve(vertex->count);
  if (with_colors) cloud.colors.reserve(vertex->count);

  std::size_t offset = header.body_offset;
  std::vector<double> row(vertex->properties.size(), 0.0);

  for (const auto& element : header.elements) {
    const bool is_vertex = &element == vertex;
    for (std::size_t e = 0; e < element.count; ++e) {
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const PlyProperty& prop = element.properties[p];
        if (prop.is_list) {
          const double count = header.binary
                                   ? read_binary_scalar(in, prop.count_type, offset)
                                   : read_ascii_scalar(in, offset);
          const auto n = static_cast<std::size_t>(count);
          for (std::size_t i = 0; i < n; ++i) {
            if (header.binary) {
              read_binary_scalar(in, prop.type, offset);
            } else {
              read_ascii_scalar(in, offset);
            }
          }
        } else {
          const double v = header.binary
                               ? read_binary_scalar(in, prop.type, offset)
                               : read_ascii_scalar(in, offset);
          if (is_vertex) row[p] = v;
        }
      }
      if (is_vertex) {
        cloud.points.emplace_back(row[ix], row[iy], row[iz]);
        if (with_colors) {
          cloud.colors.push_back(Rgb{static_cast<std::uint8_t>(row[ir]),
                                     static_cast<std::uint8_t>(row[ig]),
                                     static_cast<std::uint8_t>(row[ib])});
        }
      }
    }
    if (is_vertex) break;  // nothing after the vertices is needed
  }
  return cloud;
}

void write_ply(const PointCloud& cloud, const std::filesystem::path& path,
               bool binary) {
  if (cloud.empty()) {
    throw InvalidArgument("write_ply: point cloud is empty");
  }
  if (cloud.has_colors() && cloud.colors.size() != cloud.points.size()) {
    throw InvalidArgument("write_ply: color count does not match point count");
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open PLY file for writing: " + path.string());
  }

  out << "ply\n";
  out << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n");
  out << "element vertex " << cloud.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (cloud.has_colors()) {
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  }
  out << "end_header\n";

  if (binary) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Vec3d& p = cloud.points[i];
      double xyz[3] = {p.x(), p.y(), p.z()};
      out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
      if (cloud.has_colors()) {
        out.write(reinterpret_cast<const char*>(cloud.colors[i].data()), 3);
      }
    }
  } else {
    char buf[96];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Vec3d& p = cloud.points[i];
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", p.x(), p.y(), p.z());
      out << buf;
      if (cloud.has_colors()) {
        const Rgb& c = cloud.colors[i];
        out << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]);
      }
      out << '\n';
    }
  }
  if (!out) {
    throw IoError("failed while writing PLY file: " + path.string());
  }
}

}  // namespace strata
