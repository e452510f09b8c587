#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cvc/dataset.hpp"

namespace cvc::io {

/// Formats with 12 significant digits, the precision every file and report
/// is written at.
std::string format_number(double v);

/// CSV matrix: one sample per row, comma separators, period decimals,
/// optionally skipping one header line. Ragged rows, non-numeric or
/// non-finite cells raise ParseError with the line number.
Eigen::MatrixXd load_matrix_csv(const std::string& path,
                                bool skip_header = false);
void save_matrix_csv(const std::string& path,
                     const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Labels: one positive integer per line.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::string& path, const std::vector<int>& labels);

/// Checks labels cover 1..n_c with no gaps and returns n_c.
int validate_contiguous_labels(const std::vector<int>& labels);

/// Rows of the file are samples; the returned dataset stores points as
/// columns. Gallery labels must be contiguous 1..n_c.
LabeledDataset load_dataset(const std::string& data_path,
                            const std::string& labels_path,
                            bool skip_header = false);

/// FNV-1a over raw bytes; used to key the basis cache.
std::uint64_t content_hash(const void* data, std::size_t bytes,
                           std::uint64_t state = 14695981039346656037ULL);
std::uint64_t content_hash(const Eigen::Ref<const Eigen::MatrixXd>& m,
                           std::uint64_t state = 14695981039346656037ULL);

/// Ordered key-value report with optional tabular sections, writable as
/// structured text or JSON. Values keep insertion order in both formats.
class ReportBuilder {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long value);
  void add(const std::string& key, int value) { add(key, static_cast<long>(value)); }
  void add(const std::string& key, bool value);

  void begin_table(const std::string& name, std::vector<std::string> columns);
  void add_row(std::vector<std::string> cells);

  void write_text(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  void write(std::ostream& os, const std::string& format) const;

 private:
  struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
  };
  // Scalars and tables interleave in insertion order.
  using Entry = std::variant<std::pair<std::string, std::string>, Table>;
  std::vector<Entry> entries_;
};

}  // namespace cvc::io
