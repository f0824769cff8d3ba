#include "berezin/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace berezin {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// the comment body must not contain "--"
std::string comment_safe(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '-' && !out.empty() && out.back() == '-') out += ' ';
    out += c;
  }
  return out;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_figure_svg(const FigureData& fig) {
  const DphiBounds& b = fig.bounds;
  const double c = fig.shift;
  // world window: everything of interest fits in [c - R, c + R] x [-R, R]
  double extent = std::max({b.r3, b.berezin_radius, std::abs(c) + b.r3}) * 1.15;
  for (Complex z : fig.nrange) extent = std::max(extent, std::abs(z) * 1.1);
  const double lo_x = std::min(-0.25 * extent, c - b.r3 * 1.15);
  const double hi_x = std::max(extent, c + b.r3 * 1.15);
  const double half_y = b.r3 * 1.15;
  const double size = 640.0, pad = 40.0;
  const double scale = (size - 2 * pad) / std::max(hi_x - lo_x, 2 * half_y);
  auto sx = [&](double x) { return pad + (x - lo_x) * scale; };
  auto sy = [&](double y) { return size / 2 - y * scale; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<!-- " << comment_safe(fig.command) << " | berezin-lab " << fig.version << " -->\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
    << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<title>Figure " << fig.number << ": D_phi + " << num(c) << " I, rho = " << num(b.rho) << "</title>\n";

  // axes
  o << "<line x1=\"" << num(sx(lo_x)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(hi_x))
    << "\" y2=\"" << num(sy(0)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  o << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(half_y)) << "\" x2=\"" << num(sx(0))
    << "\" y2=\"" << num(sy(-half_y)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  auto circle = [&](double r, const char* stroke, const char* fill, const char* extra) {
    o << "<circle cx=\"" << num(sx(c)) << "\" cy=\"" << num(sy(0)) << "\" r=\"" << num(r * scale)
      << "\" stroke=\"" << stroke << "\" fill=\"" << fill << "\" stroke-width=\"2\"" << extra << "/>\n";
  };
  circle(b.r3, "red", "none", "");
  circle(b.r2, "green", "none", "");
  circle(b.r1, "blue", "blue", " fill-opacity=\"0.45\"");

  if (!fig.nrange.empty()) {
    o << "<polygon fill=\"none\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"4 3\" points=\"";
    for (std::size_t k = 0; k < fig.nrange.size(); ++k)
      o << (k ? " " : "") << num(sx(fig.nrange[k].real())) << ',' << num(sy(fig.nrange[k].imag()));
    o << "\"/>\n";
  }

  if (c != 0.0 && fig.classes.berezin_index.success) {
    const double th = fig.classes.berezin_index.index;
    const double len = hi_x - lo_x;
    for (double s : {1.0, -1.0})
      o << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\""
        << num(sx(len * std::cos(th))) << "\" y2=\"" << num(sy(s * len * std::sin(th)))
        << "\" stroke=\"purple\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  }

  // legend
  struct Entry {
    const char* color;
    std::string text;
  };
  std::vector<Entry> legend = {
      {"blue", "Berezin range, radius r1 = " + num(b.r1)},
      {"green", "disk inside W, radius r2 = " + num(b.r2)},
      {"red", "disk containing W, radius r3 = " + num(b.r3)},
  };
  if (!fig.nrange.empty()) legend.push_back({"gray", "boundary of W(truncation)"});
  if (c != 0.0) {
    const auto& bi = fig.classes.berezin_index;
    const auto& ci = fig.classes.classical_index;
    legend.push_back({"purple", bi.success ? "Berezin sector index pi/" + num(std::numbers::pi / bi.index) : "not Berezin sectorial"});
    legend.push_back({"black", ci.success ? "classical sector index pi/" + num(std::numbers::pi / ci.index) : "not sectorial"});
  }
  double y = 18;
  for (const auto& e : legend) {
    o << "<rect x=\"8\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\"" << e.color << "\"/>\n";
    o << "<text x=\"24\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(e.text)
      << "</text>\n";
    y += 16;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace berezin
