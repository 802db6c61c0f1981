#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "curved_nbody/integrator.hpp"

namespace curved_nbody::cli {

/// A numeric CSV document: '#' header lines, one column-name row, then data.
/// Numbers use the shortest round-trip form, so read then write reproduces
/// the input byte for byte.
struct CsvTable {
  std::vector<std::string> header;  ///< header lines without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const CsvTable& t);
std::string to_csv(const CsvTable& t);
/// Throws InvalidArgument on ragged rows or malformed numbers.
CsvTable read_csv(std::istream& in);
CsvTable parse_csv(const std::string& text);

/// Column names t, then w1,x1,y1,z1,dw1,... per body (w omitted in 3D).
std::vector<std::string> trajectory_columns(const SpaceSpec& space, int bodies);
CsvTable trajectory_table(const std::vector<Sample>& samples, std::vector<std::string> header);

}  // namespace curved_nbody::cli
