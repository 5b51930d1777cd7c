#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ilt::io {

/// Shortest round-trip decimal form of a double (std::to_chars): locale
/// independent, '.' decimal point, bit-stable across runs.
std::string format_double(double v);

/// In-memory CSV builder. LF line endings, mandatory header row, leading
/// '#' comment lines for provenance.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);

  void comment(const std::string& line);
  void row(std::vector<std::string> cells);
  std::string cell(double v) const { return format_double(v); }

  std::string str() const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes content to path (binary mode, so LF stays LF), creating parent
/// directories as needed.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ilt::io
