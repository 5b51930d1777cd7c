#include "ilt/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace ilt::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("Csv: header row is mandatory");
}

void Csv::comment(const std::string& line) { comments_.push_back(line); }

void Csv::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("Csv: row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string Csv::str() const {
  std::string out;
  for (const auto& c : comments_) {
    out += "# ";
    out += c;
    out += '\n';
  }
  auto append_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_line(header_);
  for (const auto& r : rows_) append_line(r);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_file: cannot open " + path.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write_file: short write to " + path.string());
}

}  // namespace ilt::io
