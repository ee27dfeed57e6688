#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "configdensity/sweep.hpp"

namespace configdensity {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string sweep_svg(const std::vector<SweepRow>& rows, const std::string& title) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (const auto& r : rows) {
    if (r.t > 0) {
      tmin = std::min(tmin, r.t);
      tmax = std::max(tmax, r.t);
    }
    vmin = std::min(vmin, r.value);
    vmax = std::max(vmax, r.value);
  }
  if (!(tmax > tmin)) {
    tmin = tmin > 0 && std::isfinite(tmin) ? tmin / 2 : 0.5;
    tmax = tmin * 4;
  }
  if (!(vmax > vmin)) {
    vmin = std::isfinite(vmin) ? vmin - 1 : 0.0;
    vmax = vmin + 2;
  }
  vmin = std::min(vmin, 0.0);
  auto px = [&](double t) {
    return L + (W - L - R) * (std::log(t) - std::log(tmin)) / (std::log(tmax) - std::log(tmin));
  };
  auto py = [&](double v) { return H - B - (H - T - B) * (v - vmin) / (vmax - vmin); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(W / 2) + "\" y=\"20\" text-anchor=\"middle\">" + escape(title) + "</text>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) + "\" y2=\"" +
       num(H - B) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" + num(H - B) +
       "\" stroke=\"black\"/>\n";
  for (double e = std::floor(std::log10(tmin)); e <= std::ceil(std::log10(tmax)); e += 1.0) {
    for (double m : {1.0, 2.0, 5.0}) {
      const double t = m * std::pow(10.0, e);
      if (t < tmin * (1 - 1e-9) || t > tmax * (1 + 1e-9)) continue;
      s += "<text x=\"" + num(px(t)) + "\" y=\"" + num(H - B + 16) + "\" text-anchor=\"middle\">" +
           label(t) + "</text>\n";
    }
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = vmin + (vmax - vmin) * i / 4.0;
    s += "<text x=\"" + num(L - 6) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" +
         label(v) + "</text>\n";
  }
  s += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\">t (log scale)</text>\n";

  std::map<std::optional<double>, std::vector<const SweepRow*>> series;
  for (const auto& r : rows) series[r.alpha].push_back(&r);
  std::size_t colour = 0;
  for (auto& [alpha, pts] : series) {
    std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->t < b->t; });
    std::string path;
    for (const auto* p : pts) {
      if (p->t <= 0) continue;
      path += num(px(p->t)) + "," + num(py(p->value)) + " ";
    }
    const char* c = kColours[colour++ % std::size(kColours)];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"" +
         path + "\"/>\n";
    if (alpha) {
      s += "<text x=\"" + num(W - R - 4) + "\" y=\"" + num(T + 14.0 * static_cast<double>(colour)) +
           "\" text-anchor=\"end\" fill=\"" + c + "\">alpha=" + label(*alpha) + "</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace configdensity
