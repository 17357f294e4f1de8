// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONVEV_IO_HPP
#define CONVEV_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace convev
{

// Shortest decimal string that reads back to the same double; '.' separator, no locale.
std::string format_double(double x);

//
// Minimal CSV writer: '#' comment lines, one header row, numeric rows. Rows are
// buffered and written on save() so that a failed run leaves no partial file.
//
class CsvWriter
{
public:
  explicit CsvWriter(std::vector<std::string> columns);

  void comment(const std::string &line);
  void row(const std::vector<double> &values);
  // Row with a trailing free-text column (quoted when needed).
  void row(const std::vector<double> &values, const std::string &text);

  std::string str() const;
  void save(const std::filesystem::path &path) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::string> rows_;
};

void write_text_file(const std::filesystem::path &path, const std::string &content);

}  // namespace convev

#endif  // CONVEV_IO_HPP
