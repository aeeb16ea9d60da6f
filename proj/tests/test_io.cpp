#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fucik/io.hpp"

#include <cmath>
#include <limits>

using namespace fucik;

namespace {

std::vector<CurveRow> sample_rows() {
  std::vector<CurveRow> rows;
  for (int i = 0; i < 21; ++i) {
    CurveRow r;
    r.p = 0.5 * i;
    r.beta = 0.5 + 0.5 / (1.0 + i / 3.0);
    r.alpha = r.p + r.beta;
    r.grad_norm = 1e-4 / (i + 1);
    r.residual = 1e-13 * (i + 1);
    r.iterations = 100 + i;
    r.refined = true;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("csv round trip is bit exact") {
  std::vector<CurveRow> rows = sample_rows();
  rows[3].p = 1.0 / 3.0;
  rows[3].alpha = std::nextafter(2.0, 3.0);
  rows[3].residual = 4.9406564584124654e-324;  // smallest subnormal
  rows[4].beta = -0.1;
  rows[5].refined = false;
  rows[5].residual = std::numeric_limits<double>::quiet_NaN();
  const std::string text = to_csv(rows);
  const std::vector<CurveRow> back = parse_csv(text);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::isnan(rows[i].residual))
      CHECK(std::isnan(back[i].residual));
    else
      CHECK(back[i].residual == rows[i].residual);
    CHECK(back[i].p == rows[i].p);
    CHECK(back[i].alpha == rows[i].alpha);
    CHECK(back[i].beta == rows[i].beta);
    CHECK(back[i].grad_norm == rows[i].grad_norm);
    CHECK(back[i].iterations == rows[i].iterations);
    CHECK(back[i].refined == rows[i].refined);
  }
  // serializing the parse reproduces the text itself
  CHECK(to_csv(back) == text);
}

TEST_CASE("malformed csv input throws") {
  CHECK_THROWS_AS(parse_csv("alpha,beta\n1,2\n"), std::invalid_argument);
  const std::string good = to_csv(sample_rows());
  CHECK_NOTHROW(parse_csv(good));
  CHECK_THROWS_AS(parse_csv("p,alpha,beta,grad_norm,residual,iterations,refined\n1,2,3\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("p,alpha,beta,grad_norm,residual,iterations,refined\n"
                            "1,2,x,0,0,5,1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("p,alpha,beta,grad_norm,residual,iterations,refined\n"
                            "1,2,3,0,0,5,2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
}

TEST_CASE("svg rendering is deterministic") {
  const std::vector<CurveRow> rows = sample_rows();
  const std::string a = render_svg(rows, 0.5, 1.0);
  const std::string b = render_svg(rows, 0.5, 1.0);
  CHECK(a == b);
  std::vector<CurveRow> moved = rows;
  moved[7].beta += 0.01;
  moved[7].alpha += 0.01;
  CHECK(render_svg(moved, 0.5, 1.0) != a);
}

TEST_CASE("svg polyline carries one vertex per finite row") {
  std::vector<CurveRow> rows = sample_rows();
  const std::string s = render_svg(rows, 0.5, 1.0);
  const std::size_t at = s.find("<polyline points=\"");
  REQUIRE(at != std::string::npos);
  const std::size_t end = s.find('"', at + 18);
  const std::string pts = s.substr(at + 18, end - at - 18);
  std::size_t commas = 0;
  for (const char c : pts) commas += c == ',' ? 1 : 0;
  CHECK(commas == rows.size());

  // non-finite rows are dropped from the polyline
  rows[2].beta = std::numeric_limits<double>::quiet_NaN();
  const std::string s2 = render_svg(rows, 0.5, 1.0);
  const std::size_t at2 = s2.find("<polyline points=\"");
  const std::size_t end2 = s2.find('"', at2 + 18);
  std::size_t commas2 = 0;
  for (std::size_t i = at2 + 18; i < end2; ++i) commas2 += s2[i] == ',' ? 1 : 0;
  CHECK(commas2 == rows.size() - 1);
}

TEST_CASE("empty input renders the frame without a polyline") {
  const std::string s = render_svg({}, 0.5, 1.0);
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("<polyline") == std::string::npos);
  CHECK(s.find("alpha") != std::string::npos);
  CHECK(s.find("beta") != std::string::npos);
  // the level guides survive on their own
  CHECK(s.find("stroke-dasharray") != std::string::npos);
  CHECK(s.find("<circle") != std::string::npos);
}

TEST_CASE("rows are lifted from a trace with alpha = p + c") {
  CurveTrace<double> tr;
  CurvePoint<double> cp;
  cp.p = 2.0;
  cp.c = 0.75;
  cp.grad_norm = 1e-5;
  cp.residual = 1e-12;
  cp.iterations = 42;
  cp.refined = true;
  tr.points.push_back(cp);
  const std::vector<CurveRow> rows = rows_from_trace(tr);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].alpha == doctest::Approx(2.75));
  CHECK(rows[0].beta == doctest::Approx(0.75));
  CHECK(rows[0].iterations == 42);
  CHECK(rows[0].refined);
}
