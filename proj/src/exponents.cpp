#include "lvlab/exponents.hpp"

#include <cmath>
#include <cstdio>

#include "lvlab/error.hpp"

namespace lvlab {

ExponentTable exponent_table(double alpha, double sigma) {
  require(alpha > 1.0 && alpha < 2.0, ErrorKind::InvalidArgument, "alpha must lie in (1, 2)");
  require(sigma > 0.5 && sigma < 1.0, ErrorKind::InvalidArgument, "sigma must lie in (1/2, 1)");
  ExponentTable t;
  t.alpha = alpha;
  t.sigma = sigma;
  // Grouped so that the rational anchors come out exact in binary.
  t.basic = alpha + (1.0 - 2.0 * sigma);
  if (std::abs(alpha - 1.2) <= 1e-12) t.gm = (18.0 - 20.0 * sigma) / 5.0;
  t.dhpt = (3.0 - 4.0 * sigma) + alpha / 2.0;
  t.montgomery = 2.0 - 2.0 * sigma;
  t.montgomery_lq = alpha * (2.0 - 2.0 * sigma);
  t.mmstar_threshold = 0.75;
  t.lowdeg_threshold = 1.0 - alpha / 4.0;
  return t;
}

nlohmann::json to_json(const ExponentTable& t) {
  nlohmann::json j = {{"alpha", t.alpha},
                      {"sigma", t.sigma},
                      {"basic", t.basic},
                      {"dhpt", t.dhpt},
                      {"montgomery", t.montgomery},
                      {"montgomery_lq", t.montgomery_lq},
                      {"mmstar_threshold", t.mmstar_threshold},
                      {"lowdeg_threshold", t.lowdeg_threshold}};
  if (t.gm) j["gm"] = *t.gm;
  return j;
}

std::string format_text(const ExponentTable& t) {
  std::string out;
  char line[96];
  auto row = [&](const char* name, double v) {
    std::snprintf(line, sizeof(line), "%-18s %.12g\n", name, v);
    out += line;
  };
  row("alpha", t.alpha);
  row("sigma", t.sigma);
  row("basic", t.basic);
  if (t.gm) {
    row("gm", *t.gm);
  } else {
    std::snprintf(line, sizeof(line), "%-18s %s\n", "gm", "-");
    out += line;
  }
  row("dhpt", t.dhpt);
  row("montgomery", t.montgomery);
  row("montgomery_lq", t.montgomery_lq);
  row("mmstar_threshold", t.mmstar_threshold);
  row("lowdeg_threshold", t.lowdeg_threshold);
  return out;
}

}  // namespace lvlab
