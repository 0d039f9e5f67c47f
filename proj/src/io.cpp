#include "irsnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "version.hpp"

namespace irsnet {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string param_hash(const system_params& p, const bound_params& bp) {
  std::string canon = params_to_json(p) + "|" + bound_params_to_json(bp);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

std::string build_id() { return IRSNET_BUILD_ID; }

std::string metadata_comment(const system_params& p, const bound_params& bp) {
  return "param_hash=" + param_hash(p, bp) + " build=" + build_id() +
         " kl_exponent=squared";
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_field(const std::string& field) {
  if (!needs_quoting(field)) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string render_csv(const csv_table& t) {
  std::string out;
  for (const auto& c : t.comments) out += "# " + c + "\r\n";
  auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += "\r\n";
  };
  if (!t.header.empty()) emit_row(t.header);
  for (const auto& row : t.rows) emit_row(row);
  return out;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw domain_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw domain_error("write failed: " + path);
}

namespace {

// Pixel coordinates with two decimals keep the output byte-stable and small.
std::string px(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct axis_scale {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // data range (log10 applied when log)
  double p0 = 0.0, p1 = 1.0;  // pixel range

  double place(double v) const {
    double t = log ? std::log10(v) : v;
    return p0 + (t - lo) / (hi - lo) * (p1 - p0);
  }
  bool valid(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

// Round a step to 1/2/5 times a power of ten.
double nice_step(double span) {
  double raw = span / 4.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double frac = raw / mag;
  double step = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

std::string tick_label(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string render_svg(const svg_plot& plot) {
  const double width = 760, height = 520;
  const double ml = 86, mr = 24, mt = 44, mb = 64;

  axis_scale xs, ys;
  xs.log = plot.logx;
  ys.log = plot.logy;
  xs.p0 = ml;
  xs.p1 = width - mr;
  ys.p0 = height - mb;  // y axis grows upward
  ys.p1 = mt;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series)
    for (const auto& pt : s.pts) {
      if (!xs.valid(pt.x) || !ys.valid(pt.y)) continue;
      xmin = std::min(xmin, pt.x);
      xmax = std::max(xmax, pt.x);
      double lo = pt.y - pt.yerr, hi = pt.y + pt.yerr;
      ymin = std::min(ymin, ys.valid(lo) ? lo : pt.y);
      ymax = std::max(ymax, hi);
    }
  bool have_data = std::isfinite(xmin) && std::isfinite(ymin);
  if (!have_data) {
    xmin = plot.logx ? 1.0 : 0.0;
    xmax = plot.logx ? 10.0 : 1.0;
    ymin = plot.logy ? 1.0 : 0.0;
    ymax = plot.logy ? 10.0 : 1.0;
  }
  if (xmin == xmax) {
    xmin = plot.logx ? xmin / 2.0 : xmin - 0.5;
    xmax = plot.logx ? xmax * 2.0 : xmax + 0.5;
  }
  if (ymin == ymax) {
    ymin = plot.logy ? ymin / 2.0 : ymin - 0.5;
    ymax = plot.logy ? ymax * 2.0 : ymax + 0.5;
  }
  xs.lo = plot.logx ? std::log10(xmin) : xmin;
  xs.hi = plot.logx ? std::log10(xmax) : xmax;
  ys.lo = plot.logy ? std::log10(ymin) : ymin;
  ys.hi = plot.logy ? std::log10(ymax) : ymax;
  // A little headroom so markers at the extremes stay inside the frame.
  double xpad = 0.04 * (xs.hi - xs.lo), ypad = 0.06 * (ys.hi - ys.lo);
  xs.lo -= xpad;
  xs.hi += xpad;
  ys.lo -= ypad;
  ys.hi += ypad;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         px(width) + "\" height=\"" + px(height) + "\" viewBox=\"0 0 " +
         px(width) + " " + px(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" +
         px(height) + "\" fill=\"#ffffff\"/>\n";
  out += "<rect x=\"" + px(ml) + "\" y=\"" + px(mt) + "\" width=\"" +
         px(width - ml - mr) + "\" height=\"" + px(height - mt - mb) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  if (!plot.title.empty())
    out += "<text x=\"" + px(width / 2) + "\" y=\"" + px(mt - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" +
           xml_escape(plot.title) + "</text>\n";
  if (!plot.xlabel.empty())
    out += "<text x=\"" + px((ml + width - mr) / 2) + "\" y=\"" +
           px(height - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" +
           xml_escape(plot.xlabel) + "</text>\n";
  if (!plot.ylabel.empty())
    out += "<text x=\"20\" y=\"" + px((mt + height - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 20 " +
           px((mt + height - mb) / 2) + ")\">" + xml_escape(plot.ylabel) +
           "</text>\n";

  auto emit_xtick = [&](double v, const std::string& label) {
    double x = xs.place(v);
    if (x < ml - 0.5 || x > width - mr + 0.5) return;
    out += "<line x1=\"" + px(x) + "\" y1=\"" + px(height - mb) + "\" x2=\"" +
           px(x) + "\" y2=\"" + px(height - mb + 6) +
           "\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + px(x) + "\" y=\"" + px(height - mb + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           xml_escape(label) + "</text>\n";
  };
  auto emit_ytick = [&](double v, const std::string& label) {
    double y = ys.place(v);
    if (y < mt - 0.5 || y > height - mb + 0.5) return;
    out += "<line x1=\"" + px(ml - 6) + "\" y1=\"" + px(y) + "\" x2=\"" +
           px(ml) + "\" y2=\"" + px(y) + "\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + px(ml - 10) + "\" y=\"" + px(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           xml_escape(label) + "</text>\n";
  };
  auto emit_axis = [&](const axis_scale& sc, bool is_x) {
    if (sc.log) {
      int d0 = static_cast<int>(std::floor(sc.lo));
      int d1 = static_cast<int>(std::ceil(sc.hi));
      for (int d = d0; d <= d1; ++d) {
        double v = std::pow(10.0, d);
        char lbl[24];
        std::snprintf(lbl, sizeof(lbl), "1e%d", d);
        if (is_x)
          emit_xtick(v, lbl);
        else
          emit_ytick(v, lbl);
      }
    } else {
      double step = nice_step(sc.hi - sc.lo);
      double first = std::ceil(sc.lo / step) * step;
      for (double v = first; v <= sc.hi + 0.5 * step; v += step) {
        double vv = std::abs(v) < 1e-12 * step ? 0.0 : v;
        if (is_x)
          emit_xtick(vv, tick_label(vv));
        else
          emit_ytick(vv, tick_label(vv));
      }
    }
  };
  emit_axis(xs, true);
  emit_axis(ys, false);

  if (!have_data)
    out += "<text x=\"" + px(width / 2) + "\" y=\"" + px(height / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\" fill=\"#888888\">no plottable data</text>\n";

  for (const auto& s : plot.series) {
    std::string dash = s.dashed ? " stroke-dasharray=\"6 4\"" : "";
    std::string poly;
    int placed = 0;
    for (const auto& pt : s.pts) {
      if (!xs.valid(pt.x) || !ys.valid(pt.y)) continue;
      double x = xs.place(pt.x), y = ys.place(pt.y);
      poly += (poly.empty() ? "" : " ") + px(x) + "," + px(y);
      ++placed;
      if (pt.yerr > 0.0 && ys.valid(pt.y - pt.yerr)) {
        double y0 = ys.place(pt.y - pt.yerr), y1 = ys.place(pt.y + pt.yerr);
        out += "<line x1=\"" + px(x) + "\" y1=\"" + px(y0) + "\" x2=\"" +
               px(x) + "\" y2=\"" + px(y1) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + px(x - 3) + "\" y1=\"" + px(y0) + "\" x2=\"" +
               px(x + 3) + "\" y2=\"" + px(y0) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + px(x - 3) + "\" y1=\"" + px(y1) + "\" x2=\"" +
               px(x + 3) + "\" y2=\"" + px(y1) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"1\"/>\n";
      }
      out += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) +
             "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
    }
    if (placed >= 2)
      out += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" +
             s.color + "\" stroke-width=\"1.5\"" + dash + "/>\n";
  }

  double ly = mt + 14;
  for (const auto& s : plot.series) {
    if (s.label.empty()) continue;
    double lx = width - mr - 180;
    out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
           px(lx + 26) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
           "/>\n";
    out += "<text x=\"" + px(lx + 32) + "\" y=\"" + px(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(s.label) + "</text>\n";
    ly += 18;
  }

  out += "</svg>\n";
  return out;
}

}  // namespace irsnet
