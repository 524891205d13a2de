#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collapse {

// Comma-separated output with 17 significant digits.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os);
    void header(const std::vector<std::string>& cols);
    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(int v);
    CsvWriter& operator<<(const std::string& s);
    void end_row();

private:
    void sep();
    std::ostream& os_;
    bool first_ = true;
};

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace collapse
