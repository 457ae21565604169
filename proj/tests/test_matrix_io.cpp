#include <doctest.h>

#include <sstream>

#include "lvlab/matrix_io.hpp"
#include "lvlab/zoo.hpp"

using namespace lvlab;

TEST_CASE("complex formatting round-trips") {
  for (Complex z : {Complex(0.0, 0.0), Complex(-1.5, 2.25), Complex(1e-300, -3e300), Complex(0.1, -0.2),
                    Complex(-0.0, -0.0), Complex(6.02214076e23, 1e-5)}) {
    const Complex back = parse_complex(format_complex(z));
    CHECK(back.real() == z.real());
    CHECK(back.imag() == z.imag());
  }
  CHECK(parse_complex("3-4i") == Complex(3.0, -4.0));
  CHECK(parse_complex("1e-05+2e+03i") == Complex(1e-5, 2e3));
  CHECK_THROWS_AS(parse_complex("3+4"), Error);
  CHECK_THROWS_AS(parse_complex("abc+1i"), Error);
}

TEST_CASE("matrix CSV is bit-exact") {
  for (auto dist : {EntryDist::UnitComplex, EntryDist::Gaussian, EntryDist::PlusMinusOne}) {
    const ComplexMatrix m = gen_random(9, 5, dist, 21);
    std::stringstream ss;
    write_matrix_csv(ss, m, "random");
    const LabeledMatrix back = read_matrix_csv(ss);
    CHECK(back.kind == "random");
    CHECK(back.matrix == m);
  }
  std::stringstream ss;
  write_matrix_csv(ss, gen_dirichlet(4, 3), "dirichlet");
  std::string header;
  std::getline(ss, header);
  CHECK(header == "3,4,dirichlet");
}

TEST_CASE("malformed matrix files") {
  std::stringstream short_rows("2,2,x\n1+0i,2+0i\n");
  CHECK_THROWS_AS(read_matrix_csv(short_rows), Error);
  std::stringstream wide("1,2,x\n1+0i,2+0i,3+0i\n");
  CHECK_THROWS_AS(read_matrix_csv(wide), Error);
  std::stringstream bad_header("a,b,c\n");
  CHECK_THROWS_AS(read_matrix_csv(bad_header), Error);
  std::stringstream nonfinite("1,1,x\ninf+0i\n");
  CHECK_THROWS_AS(read_matrix_csv(nonfinite), Error);
  CHECK_THROWS_AS(load_matrix_csv("/nonexistent/file.csv"), Error);
}

TEST_CASE("integer sets") {
  std::stringstream ss("# a comment\n0\n\n5\n12\n");
  CHECK(read_integer_set(ss) == std::vector<long long>{0, 5, 12});
  std::stringstream bad("1\nx\n");
  CHECK_THROWS_AS(read_integer_set(bad), Error);
}
