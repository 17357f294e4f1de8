// Copyright The convev Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "convev/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "convev/errors.hpp"

namespace convev
{

std::string format_double(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  if (std::isinf(x))
  {
    return x > 0 ? "inf" : "-inf";
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc())
  {
    throw Error("format_double: conversion failed");
  }
  return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::comment(const std::string &line)
{
  comments_.push_back("# " + line);
}

void CsvWriter::row(const std::vector<double> &values)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); i++)
  {
    if (i > 0)
    {
      out += ',';
    }
    out += format_double(values[i]);
  }
  rows_.push_back(std::move(out));
}

void CsvWriter::row(const std::vector<double> &values, const std::string &text)
{
  row(values);
  std::string field = text;
  if (field.find_first_of(",\"\n") != std::string::npos)
  {
    std::string quoted = "\"";
    for (char c : field)
    {
      if (c == '"')
      {
        quoted += '"';
      }
      quoted += (c == '\n') ? ' ' : c;
    }
    field = quoted + "\"";
  }
  rows_.back() += ',' + field;
}

std::string CsvWriter::str() const
{
  std::ostringstream os;
  for (const auto &c : comments_)
  {
    os << c << '\n';
  }
  for (std::size_t i = 0; i < columns_.size(); i++)
  {
    os << (i > 0 ? "," : "") << columns_[i];
  }
  os << '\n';
  for (const auto &r : rows_)
  {
    os << r << '\n';
  }
  return os.str();
}

void CsvWriter::save(const std::filesystem::path &path) const
{
  write_text_file(path, str());
}

void write_text_file(const std::filesystem::path &path, const std::string &content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw InvalidParameter("cannot write " + path.string());
  }
  out << content;
  if (!out)
  {
    throw Error("write failed for " + path.string());
  }
}

}  // namespace convev
