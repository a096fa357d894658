#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "dirac1c/clifford.hpp"
#include "dirac1c/grid.hpp"

namespace dirac1c {

/// JSON schema: matrices as row-major arrays of [re, im] pairs under the
/// keys "gamma0".."gamma3", "gamma5", "C", plus "name".
std::string rep_to_json(const GammaRepresentation& rep);
GammaRepresentation rep_from_json(const std::string& text);
void save_representation(const std::string& path, const GammaRepresentation& rep);
GammaRepresentation load_representation(const std::string& path);

/// Grid dump: 8-byte little-endian header length, JSON header (extents,
/// spacings, origin, boundary, margins, field kind), then row-major
/// little-endian float64 (re, im) pairs, 4 components per point for spinors.
void write_field(std::ostream& out, const ScalarGridField& field);
void write_field(std::ostream& out, const SpinorGridField& field);
void save_field(const std::string& path, const ScalarGridField& field);
void save_field(const std::string& path, const SpinorGridField& field);

using AnyGridField = std::variant<ScalarGridField, SpinorGridField>;
AnyGridField read_field(std::istream& in);
AnyGridField load_field(const std::string& path);

/// CSV of a 2d slice: the two running coordinates followed by re/im columns.
void export_csv_slice(std::ostream& out, const ScalarGridField& field, int axis_a,
                      int axis_b, std::array<int, 4> fixed = {0, 0, 0, 0});
void export_csv_slice(std::ostream& out, const SpinorGridField& field, int axis_a,
                      int axis_b, std::array<int, 4> fixed = {0, 0, 0, 0});

}  // namespace dirac1c
