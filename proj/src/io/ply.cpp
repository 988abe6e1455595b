#include <cstring>
#include <fstream>
#include <sstream>

#include "ovigo/io.hpp"

namespace ovigo {

namespace {

struct PlyProperty {
  std::string type;
  std::string name;
};

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::size_t scalar_size(const std::string& type) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" ||
      type == "float" || type == "float32") {
    return 4;
  }
  if (type == "double" || type == "float64") return 8;
  return 0;
}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw Error(Errc::ParseError, path.string() + ": " + what);
}

}  // namespace

PointCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != "ply") fail(path, "missing ply magic");

  bool binary = false;
  std::size_t vertex_count = 0;
  std::vector<PlyProperty> props;
  bool in_vertex_element = false;
  while (std::getline(in, line)) {
    line = trim_cr(line);
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "end_header") break;
    if (word == "comment") continue;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii") {
        binary = false;
      } else if (fmt == "binary_little_endian") {
        binary = true;
      } else {
        fail(path, "unsupported format " + fmt);
      }
    } else if (word == "element") {
      std::string name;
      std::size_t count = 0;
      ls >> name >> count;
      in_vertex_element = (name == "vertex");
      if (in_vertex_element) vertex_count = count;
      else if (count != 0) fail(path, "unsupported element " + name);
    } else if (word == "property") {
      if (!in_vertex_element) continue;
      PlyProperty p;
      ls >> p.type >> p.name;
      if (p.type == "list") fail(path, "list properties unsupported");
      if (scalar_size(p.type) == 0) fail(path, "unknown property type " + p.type);
      props.push_back(p);
    }
  }

  int ix = -1, iy = -1, iz = -1, iid = -1;
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (props[i].name == "x") ix = static_cast<int>(i);
    if (props[i].name == "y") iy = static_cast<int>(i);
    if (props[i].name == "z") iz = static_cast<int>(i);
    if (props[i].name == "object_id") iid = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0 || iz < 0) fail(path, "vertex element lacks x/y/z");
  if (iid >= 0 && props[static_cast<std::size_t>(iid)].type != "uint" &&
      props[static_cast<std::size_t>(iid)].type != "uint32") {
    fail(path, "object_id must be uint32");
  }

  PointCloud cloud;
  cloud.points.reserve(vertex_count);
  if (iid >= 0) cloud.object_ids.reserve(vertex_count);

  if (!binary) {
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (!std::getline(in, line)) fail(path, "truncated vertex data");
      std::istringstream ls(line);
      Vec3 p;
      uint32_t oid = 0;
      for (std::size_t c = 0; c < props.size(); ++c) {
        double value = 0.0;
        if (!(ls >> value)) fail(path, "bad vertex line " + std::to_string(v));
        if (static_cast<int>(c) == ix) p.x = value;
        else if (static_cast<int>(c) == iy) p.y = value;
        else if (static_cast<int>(c) == iz) p.z = value;
        else if (static_cast<int>(c) == iid) oid = static_cast<uint32_t>(value);
      }
      if (iid >= 0) cloud.append(p, oid);
      else cloud.append(p);
    }
  } else {
    std::vector<std::size_t> sizes(props.size());
    std::size_t stride = 0;
    for (std::size_t c = 0; c < props.size(); ++c) {
      sizes[c] = scalar_size(props[c].type);
      stride += sizes[c];
    }
    std::vector<char> row(stride);
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (!in.read(row.data(), static_cast<std::streamsize>(stride))) {
        fail(path, "truncated binary vertex data at vertex " + std::to_string(v));
      }
      std::size_t off = 0;
      Vec3 p;
      uint32_t oid = 0;
      for (std::size_t c = 0; c < props.size(); ++c) {
        const std::string& t = props[c].type;
        double value = 0.0;
        if (t == "double" || t == "float64") {
          double d;
          std::memcpy(&d, row.data() + off, 8);
          value = d;
        } else if (t == "float" || t == "float32") {
          float f;
          std::memcpy(&f, row.data() + off, 4);
          value = f;
        } else if (t == "uint" || t == "uint32") {
          uint32_t u;
          std::memcpy(&u, row.data() + off, 4);
          value = u;
        }
        if (static_cast<int>(c) == ix) p.x = value;
        else if (static_cast<int>(c) == iy) p.y = value;
        else if (static_cast<int>(c) == iz) p.z = value;
        else if (static_cast<int>(c) == iid) oid = static_cast<uint32_t>(value);
        off += sizes[c];
      }
      if (iid >= 0) cloud.append(p, oid);
      else cloud.append(p);
    }
  }
  return cloud;
}

void write_ply(const PointCloud& cloud, const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  const bool with_ids = cloud.has_object_ids();
  out << "ply\n";
  out << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n");
  out << "element vertex " << cloud.points.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (with_ids) out << "property uint object_id\n";
  out << "end_header\n";
  if (binary) {
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      const Vec3& p = cloud.points[i];
      out.write(reinterpret_cast<const char*>(&p.x), 8);
      out.write(reinterpret_cast<const char*>(&p.y), 8);
      out.write(reinterpret_cast<const char*>(&p.z), 8);
      if (with_ids) {
        out.write(reinterpret_cast<const char*>(&cloud.object_ids[i]), 4);
      }
    }
  } else {
    out.precision(17);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      const Vec3& p = cloud.points[i];
      out << p.x << ' ' << p.y << ' ' << p.z;
      if (with_ids) out << ' ' << cloud.object_ids[i];
      out << '\n';
    }
  }
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

PointCloud read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  PointCloud cloud;
  std::string line;
  std::size_t lineno = 0;
  bool ids_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Vec3 p;
    if (!(ls >> p.x >> p.y >> p.z)) {
      fail(path, "bad point on line " + std::to_string(lineno));
    }
    uint32_t oid = 0;
    if (ls >> oid) {
      if (!ids_seen && !cloud.points.empty()) {
        fail(path, "object_id column starts mid-file at line " + std::to_string(lineno));
      }
      ids_seen = true;
      cloud.append(p, oid);
    } else {
      if (ids_seen) fail(path, "missing object_id on line " + std::to_string(lineno));
      cloud.append(p);
    }
  }
  return cloud;
}

void write_xyz(const PointCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out.precision(17);
  const bool with_ids = cloud.has_object_ids();
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    out << p.x << ' ' << p.y << ' ' << p.z;
    if (with_ids) out << ' ' << cloud.object_ids[i];
    out << '\n';
  }
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
  if (path.extension() == ".ply") return read_ply(path);
  return read_xyz(path);
}

}  // namespace ovigo
