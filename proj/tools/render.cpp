#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace hypolog::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Axes {
  double x0, x1, y0, y1;
  bool log_y;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    const double u = log_y ? (std::log10(y) - std::log10(y0)) / (std::log10(y1) - std::log10(y0))
                           : (y - y0) / (y1 - y0);
    return kHeight - kBottom - u * (kHeight - kTop - kBottom);
  }
};

void open_svg(std::ostream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
     << title << "</text>\n";
}

void draw_axes(std::ostream& os, const Axes& a, const std::string& xlabel, const std::string& ylabel) {
  const double bx = kHeight - kBottom;
  os << "<g stroke=\"black\" fill=\"none\">\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(bx) << "\" x2=\"" << num(kWidth - kRight)
     << "\" y2=\"" << num(bx) << "\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
     << "\" y2=\"" << num(bx) << "\"/>\n";
  os << "</g>\n<g font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = a.x0 + (a.x1 - a.x0) * i / 5.0;
    os << "<text x=\"" << num(a.px(x)) << "\" y=\"" << num(bx + 15) << "\" text-anchor=\"middle\">"
       << label(x) << "</text>\n";
  }
  if (a.log_y) {
    for (int e = static_cast<int>(std::ceil(std::log10(a.y0) - 1e-9));
         e <= static_cast<int>(std::floor(std::log10(a.y1) + 1e-9)); ++e) {
      const double y = std::pow(10.0, e);
      os << "<text x=\"" << num(kLeft - 5) << "\" y=\"" << num(a.py(y) + 4)
         << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double y = a.y0 + (a.y1 - a.y0) * i / 5.0;
      os << "<text x=\"" << num(kLeft - 5) << "\" y=\"" << num(a.py(y) + 4)
         << "\" text-anchor=\"end\">" << label(y) << "</text>\n";
    }
  }
  os << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 12)
     << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"15\" y=\"" << num((kTop + bx) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << num((kTop + bx) / 2) << ")\">" << ylabel << "</text>\n";
  os << "</g>\n";
}

void polyline(std::ostream& os, const Axes& a, const std::vector<double>& x,
              const std::vector<double>& y, const std::string& style) {
  os << "<polyline fill=\"none\" " << style << " points=\"";
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (a.log_y && !(y[i] > 0.0)) {
      continue;
    }
    os << (first ? "" : " ") << num(a.px(x[i])) << ',' << num(a.py(y[i]));
    first = false;
  }
  os << "\"/>\n";
}

void require_columns(const CsvTable& t, const std::vector<std::string>& cols, const std::string& kind) {
  std::string missing;
  for (const std::string& c : cols) {
    if (t.column(c) < 0) {
      missing += (missing.empty() ? "" : ", ") + c;
    }
  }
  if (!missing.empty()) {
    throw UsageError(kind + " CSV is missing column(s): " + missing);
  }
}

std::vector<double> col(const CsvTable& t, const std::string& name) {
  const int k = t.column(name);
  std::vector<double> out;
  for (const auto& r : t.rows) {
    out.push_back(r[k]);
  }
  return out;
}

Axes log_axes(const std::vector<double>& x, const std::vector<double>& ys) {
  double lo = INFINITY, hi = 0.0;
  for (double v : ys) {
    if (v > 0.0 && std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(hi > 0.0)) {
    throw UsageError("no positive values to plot on a log axis");
  }
  lo = std::pow(10.0, std::floor(std::log10(lo)));
  hi = std::pow(10.0, std::ceil(std::log10(hi)));
  if (hi <= lo) {
    hi = lo * 10.0;
  }
  const double x0 = *std::min_element(x.begin(), x.end());
  double x1 = *std::max_element(x.begin(), x.end());
  if (x1 <= x0) {
    x1 = x0 + 1.0;
  }
  return {x0, x1, lo, hi, true};
}

void render_curve(const CsvTable& t, std::ostream& os) {
  require_columns(t, {"t", "C_hat", "stderr"}, "gradient-curve");
  const auto x = col(t, "t");
  const auto c = col(t, "C_hat");
  const auto se = col(t, "stderr");
  std::vector<double> hi(c.size()), lo(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    hi[i] = c[i] + se[i];
    lo[i] = c[i] - se[i];
  }
  std::vector<double> all = c;
  all.insert(all.end(), hi.begin(), hi.end());
  const Axes a = log_axes(x, all);
  for (double& v : lo) {
    v = std::max(v, a.y0);
  }
  open_svg(os, "gradient estimate C(t)");
  draw_axes(os, a, "t", "C_hat (log scale)");
  os << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << (i ? " " : "") << num(a.px(x[i])) << ',' << num(a.py(hi[i]));
  }
  for (std::size_t i = x.size(); i-- > 0;) {
    os << ' ' << num(a.px(x[i])) << ',' << num(a.py(lo[i]));
  }
  os << "\"/>\n";
  polyline(os, a, x, c, "stroke=\"#08519c\" stroke-width=\"1.5\"");
  os << "</svg>\n";
}

void render_decay(const CsvTable& t, std::ostream& os) {
  require_columns(t, {"t", "entropy", "fisher"}, "decay");
  const auto x = col(t, "t");
  const auto d = col(t, "entropy");
  const auto f = col(t, "fisher");
  std::vector<double> env;
  const std::string lam = t.meta_value("lambda_hat");
  if (!lam.empty()) {
    const double l = std::stod(lam);
    for (double s : x) {
      env.push_back(d.front() * std::exp(-2.0 * l * (s - x.front())));
    }
  }
  std::vector<double> all = d;
  all.insert(all.end(), f.begin(), f.end());
  Axes a = log_axes(x, all);
  a.y0 = std::max(a.y0, a.y1 * 1e-16);
  open_svg(os, "entropy decay");
  draw_axes(os, a, "t", "D(t), I(t) (log scale)");
  polyline(os, a, x, d, "stroke=\"#08519c\" stroke-width=\"1.5\"");
  polyline(os, a, x, f, "stroke=\"#a63603\" stroke-width=\"1.5\"");
  if (!env.empty()) {
    std::vector<double> ex, ey;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (env[i] >= a.y0) {
        ex.push_back(x[i]);
        ey.push_back(env[i]);
      }
    }
    polyline(os, a, ex, ey, "stroke=\"black\" stroke-dasharray=\"6 4\"");
    os << "<text x=\"" << num(kWidth - kRight - 5) << "\" y=\"" << num(kTop + 12)
       << "\" text-anchor=\"end\" font-size=\"11\">dashed: D(0) exp(-2 lambda t), lambda = " << lam
       << "</text>\n";
  }
  os << "</svg>\n";
}

void render_bars(const CsvTable& t, std::ostream& os) {
  require_columns(t, {"m", "n", "lambda_hat", "gap"}, "cmlsi-table");
  const auto m = col(t, "m");
  const auto n = col(t, "n");
  const auto l = col(t, "lambda_hat");
  const auto g = col(t, "gap");
  double top = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    top = std::max({top, l[i], g[i]});
  }
  top = top > 0.0 ? top * 1.15 : 1.0;
  const Axes a{0.0, static_cast<double>(l.size()), 0.0, top, false};
  open_svg(os, "lambda_hat by (m, n)");
  const double bx = kHeight - kBottom;
  os << "<g stroke=\"black\" fill=\"none\">\n<line x1=\"" << num(kLeft) << "\" y1=\"" << num(bx)
     << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\"" << num(bx) << "\"/>\n<line x1=\""
     << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(bx)
     << "\"/>\n</g>\n<g font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = top * i / 5.0;
    os << "<text x=\"" << num(kLeft - 5) << "\" y=\"" << num(a.py(y) + 4)
       << "\" text-anchor=\"end\">" << label(y) << "</text>\n";
  }
  const double w = (a.px(1.0) - a.px(0.0)) * 0.7;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const double cx = a.px(i + 0.5);
    os << "<rect x=\"" << num(cx - w / 2) << "\" y=\"" << num(a.py(l[i])) << "\" width=\""
       << num(w) << "\" height=\"" << num(bx - a.py(l[i])) << "\" fill=\"#6baed6\"/>\n";
    os << "<line x1=\"" << num(cx - w / 2) << "\" y1=\"" << num(a.py(g[i])) << "\" x2=\""
       << num(cx + w / 2) << "\" y2=\"" << num(a.py(g[i]))
       << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << num(cx) << "\" y=\"" << num(bx + 15) << "\" text-anchor=\"middle\">m="
       << label(m[i]) << " n=" << label(n[i]) << "</text>\n";
  }
  os << "<text x=\"" << num(kWidth - kRight - 5) << "\" y=\"" << num(kTop + 12)
     << "\" text-anchor=\"end\">dashed: spectral gap</text>\n</g>\n</svg>\n";
}

} // namespace

void render_svg(const CsvTable& table, std::ostream& os) {
  if (table.columns.empty() || table.rows.empty()) {
    throw UsageError("CSV has no data rows");
  }
  std::string kind = table.meta_value("command");
  if (kind.empty()) {
    if (table.column("C_hat") >= 0) kind = "gradient-curve";
    else if (table.column("entropy") >= 0) kind = "decay-trajectory";
    else if (table.column("lambda_hat") >= 0) kind = "cmlsi-table";
  }
  if (kind == "gradient-curve" || kind == "kappa-lambda") {
    render_curve(table, os);
  } else if (kind == "decay-trajectory") {
    render_decay(table, os);
  } else if (kind == "cmlsi-table") {
    render_bars(table, os);
  } else {
    throw UsageError("cannot tell the plot kind; expected a gradient-curve (t, C_hat, stderr), "
                     "decay (t, entropy, fisher) or cmlsi-table (m, n, lambda_hat, gap) CSV");
  }
}

} // namespace hypolog::cli
