#include "fucik/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace fucik {

namespace {

const char* kHeader = "p,alpha,beta,grad_norm,residual,iterations,refined";

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string num6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_real(const std::string& s) {
  const char* c = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(c, &end);
  if (end == c || *end != '\0') throw std::invalid_argument("malformed csv number: " + s);
  return v;
}

}  // namespace

std::vector<CurveRow> rows_from_trace(const CurveTrace<double>& tr) {
  std::vector<CurveRow> rows;
  rows.reserve(tr.points.size());
  for (const auto& cp : tr.points) {
    CurveRow r;
    r.p = cp.p;
    r.alpha = cp.p + cp.c;
    r.beta = cp.c;
    r.grad_norm = cp.grad_norm;
    r.residual = cp.residual;
    r.iterations = cp.iterations;
    r.refined = cp.refined;
    rows.push_back(r);
  }
  return rows;
}

std::string to_csv(const std::vector<CurveRow>& rows) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += num17(r.p);
    out += ',';
    out += num17(r.alpha);
    out += ',';
    out += num17(r.beta);
    out += ',';
    out += num17(r.grad_norm);
    out += ',';
    out += num17(r.residual);
    out += ',';
    out += std::to_string(r.iterations);
    out += ',';
    out += r.refined ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::vector<CurveRow> parse_csv(const std::string& text) {
  std::vector<std::string> lines;
  for (const std::string& l : split(text, '\n'))
    if (!l.empty()) lines.push_back(l);
  if (lines.empty() || lines[0] != kHeader)
    throw std::invalid_argument("malformed csv header");
  std::vector<CurveRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> f = split(lines[i], ',');
    if (f.size() != 7) throw std::invalid_argument("malformed csv row: " + lines[i]);
    CurveRow r;
    r.p = parse_real(f[0]);
    r.alpha = parse_real(f[1]);
    r.beta = parse_real(f[2]);
    r.grad_norm = parse_real(f[3]);
    r.residual = parse_real(f[4]);
    r.iterations = static_cast<long long>(parse_real(f[5]));
    if (f[6] != "0" && f[6] != "1") throw std::invalid_argument("malformed csv flag: " + f[6]);
    r.refined = f[6] == "1";
    rows.push_back(r);
  }
  return rows;
}

std::string render_svg(const std::vector<CurveRow>& rows, double lam1, double lam2) {
  const double W = 640, H = 480;
  const double ml = 64, mr = 24, mt = 24, mb = 48;

  double xmin = lam1, xmax = lam2, ymin = lam1, ymax = lam2;
  for (const auto& r : rows) {
    if (!std::isfinite(r.alpha) || !std::isfinite(r.beta)) continue;
    xmin = std::min(xmin, r.alpha);
    xmax = std::max(xmax, r.alpha);
    ymin = std::min(ymin, r.beta);
    ymax = std::max(ymax, r.beta);
  }
  if (!(xmax - xmin > 1e-9)) xmax = xmin + 1;
  if (!(ymax - ymin > 1e-9)) ymax = ymin + 1;
  const double xpad = 0.08 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  auto X = [&](double a) { return ml + (a - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto Y = [&](double b) { return H - mb - (b - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";

  // frame
  s += "<line x1=\"" + num2(ml) + "\" y1=\"" + num2(H - mb) + "\" x2=\"" + num2(W - mr) +
       "\" y2=\"" + num2(H - mb) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + num2(ml) + "\" y1=\"" + num2(mt) + "\" x2=\"" + num2(ml) + "\" y2=\"" +
       num2(H - mb) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  s += "<text x=\"" + num2((ml + W - mr) / 2) + "\" y=\"" + num2(H - 12) +
       "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">alpha</text>\n";
  s += "<text x=\"18\" y=\"" + num2((mt + H - mb) / 2) +
       "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num2((mt + H - mb) / 2) + ")\">beta</text>\n";
  s += "<text x=\"" + num2(ml) + "\" y=\"" + num2(H - mb + 18) +
       "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" + num6(xmin) + "</text>\n";
  s += "<text x=\"" + num2(W - mr) + "\" y=\"" + num2(H - mb + 18) +
       "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" + num6(xmax) + "</text>\n";
  s += "<text x=\"" + num2(ml - 6) + "\" y=\"" + num2(H - mb + 4) +
       "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" + num6(ymin) + "</text>\n";
  s += "<text x=\"" + num2(ml - 6) + "\" y=\"" + num2(mt + 4) +
       "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" + num6(ymax) + "</text>\n";

  // cross lines of the trivial spectrum at the ground level
  if (lam1 >= xmin && lam1 <= xmax)
    s += "<line x1=\"" + num2(X(lam1)) + "\" y1=\"" + num2(mt) + "\" x2=\"" + num2(X(lam1)) +
         "\" y2=\"" + num2(H - mb) + "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  if (lam1 >= ymin && lam1 <= ymax)
    s += "<line x1=\"" + num2(ml) + "\" y1=\"" + num2(Y(lam1)) + "\" x2=\"" + num2(W - mr) +
         "\" y2=\"" + num2(Y(lam1)) + "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";

  // diagonal marker at the second level
  if (lam2 >= xmin && lam2 <= xmax && lam2 >= ymin && lam2 <= ymax)
    s += "<circle cx=\"" + num2(X(lam2)) + "\" cy=\"" + num2(Y(lam2)) +
         "\" r=\"4\" fill=\"none\" stroke=\"#cc3333\" stroke-width=\"1.5\"/>\n";

  bool have_points = false;
  std::string pts;
  for (const auto& r : rows) {
    if (!std::isfinite(r.alpha) || !std::isfinite(r.beta)) continue;
    if (have_points) pts += ' ';
    pts += num2(X(r.alpha));
    pts += ',';
    pts += num2(Y(r.beta));
    have_points = true;
  }
  if (have_points)
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"1.5\"/>\n";

  s += "</svg>\n";
  return s;
}

}  // namespace fucik
