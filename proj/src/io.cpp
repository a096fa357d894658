#include "dirac1c/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "the grid dump format is little-endian");

namespace dirac1c {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix4c& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      rows.push_back({m(r, c).real(), m(r, c).imag()});
  return rows;
}

Matrix4c matrix_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 16)
    throw ConfigError("representation JSON: '" + key + "' must be 16 [re,im] pairs");
  Matrix4c m;
  for (int i = 0; i < 16; ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      throw ConfigError("representation JSON: entries must be [re, im]");
    m(i / 4, i % 4) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return m;
}

std::string boundary_name(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "trim";
}

Boundary boundary_from_name(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "trim") return Boundary::trim;
  throw ConfigError("unknown boundary '" + name + "' (periodic|trim)");
}

json header_json(const SpacetimeGrid& g, const Margin& m, const std::string& kind) {
  json h;
  h["kind"] = kind;
  h["extents"] = g.extents;
  h["spacings"] = g.spacing;
  h["origin"] = g.origin;
  json b = json::array();
  for (auto bd : g.boundary) b.push_back(boundary_name(bd));
  h["boundary"] = b;
  h["margin_lo"] = m.lo;
  h["margin_hi"] = m.hi;
  return h;
}

void parse_header(const json& h, SpacetimeGrid& g, Margin& m, std::string& kind) {
  kind = h.at("kind").get<std::string>();
  for (int ax = 0; ax < 4; ++ax) {
    g.extents[ax] = h.at("extents")[ax].get<int>();
    g.spacing[ax] = h.at("spacings")[ax].get<double>();
    g.origin[ax] = h.at("origin")[ax].get<double>();
    g.boundary[ax] = boundary_from_name(h.at("boundary")[ax].get<std::string>());
    m.lo[ax] = h.at("margin_lo")[ax].get<int>();
    m.hi[ax] = h.at("margin_hi")[ax].get<int>();
  }
  g.validate();
}

void write_header(std::ostream& out, const json& header) {
  const std::string text = header.dump();
  const std::uint64_t len = text.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(text.data(), std::streamsize(text.size()));
}

json read_header(std::istream& in) {
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  if (!in || len > (1u << 20)) throw ConfigError("corrupt grid dump header");
  std::string text(len, '\0');
  in.read(text.data(), std::streamsize(len));
  if (!in) throw ConfigError("truncated grid dump header");
  return json::parse(text);
}

void write_payload(std::ostream& out, const Complex* data, long count) {
  out.write(reinterpret_cast<const char*>(data),
            std::streamsize(count * long(sizeof(Complex))));
}

void read_payload(std::istream& in, Complex* data, long count) {
  in.read(reinterpret_cast<char*>(data),
          std::streamsize(count * long(sizeof(Complex))));
  if (!in) throw ConfigError("truncated grid dump payload");
}

}  // namespace

std::string rep_to_json(const GammaRepresentation& rep) {
  json j;
  j["name"] = rep.name;
  for (int mu = 0; mu < 4; ++mu)
    j["gamma" + std::to_string(mu)] = matrix_to_json(rep.gamma[mu]);
  j["gamma5"] = matrix_to_json(rep.gamma5);
  j["C"] = matrix_to_json(rep.c_matrix);
  return j.dump(2) + "\n";
}

GammaRepresentation rep_from_json(const std::string& text) {
  json j = json::parse(text);
  GammaRepresentation rep;
  rep.name = j.at("name").get<std::string>();
  for (int mu = 0; mu < 4; ++mu) {
    const std::string key = "gamma" + std::to_string(mu);
    rep.gamma[mu] = matrix_from_json(j.at(key), key);
  }
  rep.gamma5 = matrix_from_json(j.at("gamma5"), "gamma5");
  rep.c_matrix = matrix_from_json(j.at("C"), "C");
  return rep;
}

void save_representation(const std::string& path, const GammaRepresentation& rep) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << rep_to_json(rep);
}

GammaRepresentation load_representation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return rep_from_json(ss.str());
}

void write_field(std::ostream& out, const ScalarGridField& field) {
  write_header(out, header_json(field.grid, field.margin, "scalar"));
  write_payload(out, field.values.data(), field.grid.num_points());
}

void write_field(std::ostream& out, const SpinorGridField& field) {
  write_header(out, header_json(field.grid, field.margin, "spinor"));
  write_payload(out, field.values.data(), 4 * field.grid.num_points());
}

AnyGridField read_field(std::istream& in) {
  SpacetimeGrid grid;
  Margin margin;
  std::string kind;
  parse_header(read_header(in), grid, margin, kind);
  if (kind == "scalar") {
    ScalarGridField f = ScalarGridField::zeros(grid);
    f.margin = margin;
    read_payload(in, f.values.data(), grid.num_points());
    return f;
  }
  if (kind == "spinor") {
    SpinorGridField f = SpinorGridField::zeros(grid);
    f.margin = margin;
    read_payload(in, f.values.data(), 4 * grid.num_points());
    return f;
  }
  throw ConfigError("unknown field kind '" + kind + "'");
}

void save_field(const std::string& path, const ScalarGridField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  write_field(out, field);
}

void save_field(const std::string& path, const SpinorGridField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  write_field(out, field);
}

AnyGridField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  return read_field(in);
}

namespace {

template <typename FieldT, typename Row>
void csv_slice(std::ostream& out, const FieldT& field, int axis_a, int axis_b,
               std::array<int, 4> fixed, const char* header, Row&& row) {
  if (axis_a == axis_b || axis_a < 0 || axis_b < 0 || axis_a > 3 || axis_b > 3)
    throw std::invalid_argument("csv slice needs two distinct axes");
  out << header << "\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::array<int, 4> idx = fixed;
  for (int ia = 0; ia < field.grid.extents[axis_a]; ++ia)
    for (int ib = 0; ib < field.grid.extents[axis_b]; ++ib) {
      idx[axis_a] = ia;
      idx[axis_b] = ib;
      const long p = field.grid.index(idx[0], idx[1], idx[2], idx[3]);
      const Vector4r x = field.grid.point(idx);
      out << fmt(x(axis_a)) << "," << fmt(x(axis_b));
      row(out, p, fmt);
      out << "\n";
    }
}

}  // namespace

void export_csv_slice(std::ostream& out, const ScalarGridField& field, int axis_a,
                      int axis_b, std::array<int, 4> fixed) {
  csv_slice(out, field, axis_a, axis_b, fixed, "xa,xb,re,im",
            [&field](std::ostream& o, long p, auto& fmt) {
              o << "," << fmt(field.values(p).real()) << ","
                << fmt(field.values(p).imag());
            });
}

void export_csv_slice(std::ostream& out, const SpinorGridField& field, int axis_a,
                      int axis_b, std::array<int, 4> fixed) {
  csv_slice(out, field, axis_a, axis_b, fixed,
            "xa,xb,re0,im0,re1,im1,re2,im2,re3,im3",
            [&field](std::ostream& o, long p, auto& fmt) {
              for (int comp = 0; comp < 4; ++comp)
                o << "," << fmt(field.values(comp, p).real()) << ","
                  << fmt(field.values(comp, p).imag());
            });
}

}  // namespace dirac1c
