#ifndef BLOWUP_CSV_HPP
#define BLOWUP_CSV_HPP

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace blowup {

// Fixed "%.12g" rendering so repeated runs emit byte-identical files.
std::string format_real(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::initializer_list<const char*> header);
  void row(std::initializer_list<double> values);
  void row_strings(const std::vector<std::string>& values);

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
};

}  // namespace blowup

#endif
