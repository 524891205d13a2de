#include "collapse/csv.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace collapse {

CsvWriter::CsvWriter(std::ostream& os) : os_(os) { os_ << std::setprecision(17); }

void CsvWriter::sep() {
    if (!first_) os_ << ',';
    first_ = false;
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    for (const auto& c : cols) *this << c;
    end_row();
}

CsvWriter& CsvWriter::operator<<(double v) {
    sep();
    os_ << v;
    return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
    sep();
    os_ << v;
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& s) {
    sep();
    for (char c : s) os_ << (c == ',' || c == '\n' ? ';' : c);
    return *this;
}

void CsvWriter::end_row() {
    os_ << '\n';
    first_ = true;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace collapse
