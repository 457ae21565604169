#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lvlab/linalg.hpp"

namespace lvlab {

/// A matrix together with the family label stored in the CSV header.
struct LabeledMatrix {
  ComplexMatrix matrix;
  std::string kind;
};

/// Header `T,N,kind`, then T lines of N comma-separated `re+imi` values.
/// Values are printed in shortest round-trip form, so reading back is exact.
void write_matrix_csv(std::ostream& os, const ComplexMatrix& m, const std::string& kind);
LabeledMatrix read_matrix_csv(std::istream& is);

void save_matrix_csv(const std::string& path, const ComplexMatrix& m, const std::string& kind);
LabeledMatrix load_matrix_csv(const std::string& path);

std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);

/// Newline-delimited integers; blank lines and lines starting with '#' are skipped.
std::vector<long long> read_integer_set(std::istream& is);
std::vector<long long> load_integer_set(const std::string& path);

}  // namespace lvlab
