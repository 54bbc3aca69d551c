#ifndef KGB_CSV_HPP
#define KGB_CSV_HPP

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

namespace kgb {

// Row-at-a-time CSV writer. Numbers use 12 significant digits so outputs are
// byte-stable for identical inputs.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(std::string_view text);
  CsvWriter& operator<<(unsigned long long value);
  void end_row();

  void write_row(std::span<const double> values);

 private:
  void separator();

  std::ofstream out_;
  std::filesystem::path path_;
  bool row_started_ = false;
};

std::string format_number(double value);

}  // namespace kgb

#endif  // KGB_CSV_HPP
