#include "cvc/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cvc/errors.hpp"

namespace cvc::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_cell(const std::string& cell, const std::string& path, int line) {
  const std::string t = trim(cell);
  if (t.empty())
    throw ParseError(path + ":" + std::to_string(line) + ": empty cell");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw ParseError(path + ":" + std::to_string(line) +
                     ": non-numeric cell '" + t + "'");
  if (!std::isfinite(v))
    throw ParseError(path + ":" + std::to_string(line) +
                     ": non-finite cell '" + t + "'");
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": input not found");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // Trailing blank lines are tolerated; interior ones are ragged input.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path, bool skip_header) {
  std::vector<std::string> lines = read_lines(path);
  std::size_t start = 0;
  if (skip_header) {
    if (lines.empty()) throw ParseError(path + ":1: missing header line");
    start = 1;
  }
  if (start >= lines.size()) throw ParseError(path + ": no data rows");

  std::vector<std::vector<double>> rows;
  for (std::size_t i = start; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (trim(lines[i]).empty())
      throw ParseError(path + ":" + std::to_string(line_no) + ": blank row");
    std::vector<double> row;
    std::stringstream ss(lines[i]);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(parse_cell(cell, path, line_no));
    if (lines[i].back() == ',')
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": trailing comma");
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": ragged row, expected " +
                       std::to_string(rows.front().size()) + " cells, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

void save_matrix_csv(const std::string& path,
                     const Eigen::Ref<const Eigen::MatrixXd>& m) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

std::vector<int> load_labels(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  std::vector<int> labels;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string t = trim(lines[i]);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size())
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected an integer label, got '" + t + "'");
    if (v < 1)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": labels must be positive");
    labels.push_back(static_cast<int>(v));
  }
  if (labels.empty()) throw ParseError(path + ": no labels");
  return labels;
}

void save_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  for (int v : labels) out << v << '\n';
}

int validate_contiguous_labels(const std::vector<int>& labels) {
  int n_c = 0;
  for (int v : labels) n_c = std::max(n_c, v);
  std::vector<bool> seen(static_cast<std::size_t>(n_c), false);
  for (int v : labels) seen[static_cast<std::size_t>(v - 1)] = true;
  for (int c = 0; c < n_c; ++c)
    if (!seen[static_cast<std::size_t>(c)])
      throw ParseError("non-contiguous labels: class " + std::to_string(c + 1) +
                       " is missing");
  return n_c;
}

LabeledDataset load_dataset(const std::string& data_path,
                            const std::string& labels_path,
                            bool skip_header) {
  const Eigen::MatrixXd samples = load_matrix_csv(data_path, skip_header);
  const std::vector<int> labels = load_labels(labels_path);
  if (static_cast<Eigen::Index>(labels.size()) != samples.rows())
    throw ParseError(labels_path + ": " + std::to_string(labels.size()) +
                     " labels for " + std::to_string(samples.rows()) +
                     " data rows");
  LabeledDataset ds;
  ds.data = samples.transpose();
  ds.labels = labels;
  ds.n_classes = validate_contiguous_labels(labels);
  return ds;
}

std::uint64_t content_hash(const void* data, std::size_t bytes,
                           std::uint64_t state) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    state ^= p[i];
    state *= 1099511628211ULL;
  }
  return state;
}

std::uint64_t content_hash(const Eigen::Ref<const Eigen::MatrixXd>& m,
                           std::uint64_t state) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  state = content_hash(&rows, sizeof(rows), state);
  state = content_hash(&cols, sizeof(cols), state);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double v = m(i, j);
      state = content_hash(&v, sizeof(v), state);
    }
  return state;
}

void ReportBuilder::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(std::make_pair(key, value));
}
void ReportBuilder::add(const std::string& key, double value) {
  add(key, format_number(value));
}
void ReportBuilder::add(const std::string& key, long value) {
  add(key, std::to_string(value));
}
void ReportBuilder::add(const std::string& key, bool value) {
  add(key, std::string(value ? "true" : "false"));
}

void ReportBuilder::begin_table(const std::string& name,
                                std::vector<std::string> columns) {
  Table t;
  t.name = name;
  t.columns = std::move(columns);
  entries_.emplace_back(std::move(t));
}

void ReportBuilder::add_row(std::vector<std::string> cells) {
  if (entries_.empty() || !std::holds_alternative<Table>(entries_.back()))
    throw ParameterError("ReportBuilder: add_row without a table");
  std::get<Table>(entries_.back()).rows.push_back(std::move(cells));
}

void ReportBuilder::write_text(std::ostream& os) const {
  for (const auto& entry : entries_) {
    if (const auto* kv = std::get_if<std::pair<std::string, std::string>>(&entry)) {
      os << kv->first << " = " << kv->second << '\n';
      continue;
    }
    const Table& t = std::get<Table>(entry);
    os << "[" << t.name << "]\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        os << (c ? "," : "") << row[c];
      os << '\n';
    }
  }
}

void ReportBuilder::write_json(std::ostream& os) const {
  nlohmann::ordered_json j;
  for (const auto& entry : entries_) {
    if (const auto* kv = std::get_if<std::pair<std::string, std::string>>(&entry)) {
      j[kv->first] = kv->second;
      continue;
    }
    const Table& t = std::get<Table>(entry);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json r;
      for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c)
        r[t.columns[c]] = row[c];
      rows.push_back(std::move(r));
    }
    j[t.name] = std::move(rows);
  }
  os << j.dump(2) << '\n';
}

void ReportBuilder::write(std::ostream& os, const std::string& format) const {
  if (format == "json")
    write_json(os);
  else if (format == "text")
    write_text(os);
  else
    throw ParameterError("unknown report format: " + format);
}

}  // namespace cvc::io
