#ifndef UDV_CSV_HPP_
#define UDV_CSV_HPP_

#include <fstream>
#include <string>
#include <vector>

namespace udv {

// RFC-4180-style quoting: fields containing commas, quotes, or newlines
// are wrapped in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
};

}  // namespace udv

#endif  // UDV_CSV_HPP_
