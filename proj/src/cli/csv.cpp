#include "cli/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "curved_nbody/format.hpp"

namespace curved_nbody::cli {

void write_csv(std::ostream& out, const CsvTable& t) {
  for (const std::string& h : t.header) out << "# " << h << '\n';
  for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
}

std::string to_csv(const CsvTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

namespace {
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}
}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_columns = false;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') throw InvalidArgument("CRLF line endings are not accepted");
    if (!have_columns && line.rfind("#", 0) == 0) {
      t.header.push_back(line.rfind("# ", 0) == 0 ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!have_columns) {
      t.columns = split(line);
      have_columns = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != t.columns.size())
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected " +
                            std::to_string(t.columns.size()) + " cells");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  if (!have_columns) throw InvalidArgument("CSV has no column row");
  return t;
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::vector<std::string> trajectory_columns(const SpaceSpec& space, int bodies) {
  std::vector<std::string> cols{"t"};
  const std::string names = space.coordinate_names();
  for (int b = 1; b <= bodies; ++b) {
    for (char c : names) cols.push_back(std::string(1, c) + std::to_string(b));
    for (char c : names) cols.push_back("d" + std::string(1, c) + std::to_string(b));
  }
  return cols;
}

CsvTable trajectory_table(const std::vector<Sample>& samples, std::vector<std::string> header) {
  CsvTable t;
  t.header = std::move(header);
  if (samples.empty()) return t;
  const SystemState& first = samples.front().state;
  t.columns = trajectory_columns(first.space, first.size());
  for (const Sample& s : samples) {
    std::vector<double> row{s.time};
    for (const Body& b : s.state.bodies) {
      for (double c : b.position.coords()) row.push_back(c);
      for (double c : b.velocity.coords()) row.push_back(c);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace curved_nbody::cli
